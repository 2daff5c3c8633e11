#pragma once

#include <set>
#include <string>

#include "crossworld/admg.hpp"

namespace crossworld::testing {

/// Exhaustive path-blocking enumeration: lists every simple trail between
/// src and dst over the latent-augmented graph and checks the blocking rule
/// vertex by vertex. Exponential but trivially correct; kept strictly
/// independent of the production reachability algorithm.
bool dsep_bruteforce(const Admg& g, const std::string& src, const std::string& dst,
                     const std::set<std::string>& conditioning);

}  // namespace crossworld::testing
