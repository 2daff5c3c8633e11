#pragma once

#include <stdexcept>
#include <string>

namespace crossworld {

// Bad caller-supplied values: unknown nodes, malformed files, empty grids,
// out-of-range parameters of an operation.
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid model objects: cyclic graphs, non-positive scales,
// correlations outside [-1, 1].
class ModelError : public std::runtime_error {
  public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crossworld
