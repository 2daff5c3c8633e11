#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crossworld {

/// Acyclic directed mixed graph: directed edges plus bidirected edges, the
/// latter read as latent confounding (A <-> U behaves as A <- L -> U for a
/// fresh latent L). Immutable after construction.
class Admg {
  public:
    Admg(std::vector<std::string> nodes,
         std::vector<std::pair<std::string, std::string>> directed_edges,
         std::vector<std::pair<std::string, std::string>> bidirected_edges);

    /// Edge-list text, one edge per line: `A -> X` or `A <-> U`. The node set
    /// is inferred from edge endpoints; a line holding a single bare name
    /// declares an isolated node. Blank lines and `#` comments are skipped.
    static Admg parse(std::string_view text);
    static Admg load(const std::filesystem::path& path);

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<std::pair<std::string, std::string>>& directed_edges() const {
        return directed_;
    }
    const std::vector<std::pair<std::string, std::string>>& bidirected_edges() const {
        return bidirected_;
    }
    bool has_node(const std::string& name) const;
    std::size_t node_index(const std::string& name) const;  // throws InputError if unknown

  private:
    friend bool d_separated(const Admg&, const std::string&, const std::string&,
                            const std::set<std::string>&);

    std::vector<std::string> nodes_;
    std::vector<std::pair<std::string, std::string>> directed_;
    std::vector<std::pair<std::string, std::string>> bidirected_;

    // Adjacency over the latent-augmented DAG: indices >= nodes_.size() are
    // the fresh latents introduced per bidirected edge.
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
    std::size_t augmented_size_ = 0;
};

/// Standard d-separation of src and dst given the conditioning set, with
/// bidirected edges handled by latent projection. Linear-time reachability
/// over (node, travel-direction) states.
bool d_separated(const Admg& g, const std::string& src, const std::string& dst,
                 const std::set<std::string>& conditioning);

/// A graph structurally entails demographic parity for a predictor node iff
/// the predictor is d-separated from the protected node marginally.
bool implies_dp(const Admg& g, const std::string& protected_node,
                const std::string& predictor_node);

}  // namespace crossworld
