#include "crossworld/admg.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "crossworld/errors.hpp"

namespace crossworld {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

Admg::Admg(std::vector<std::string> nodes,
           std::vector<std::pair<std::string, std::string>> directed_edges,
           std::vector<std::pair<std::string, std::string>> bidirected_edges)
    : nodes_(std::move(nodes)),
      directed_(std::move(directed_edges)),
      bidirected_(std::move(bidirected_edges)) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].empty()) throw InputError("Admg: empty node name");
        if (!index.emplace(nodes_[i], i).second) {
            throw InputError("Admg: duplicate node '" + nodes_[i] + "'");
        }
    }
    auto lookup = [&](const std::string& name) {
        const auto it = index.find(name);
        if (it == index.end()) throw InputError("Admg: edge endpoint '" + name + "' not declared");
        return it->second;
    };

    augmented_size_ = nodes_.size() + bidirected_.size();
    parents_.assign(augmented_size_, {});
    children_.assign(augmented_size_, {});

    for (const auto& [tail, head] : directed_) {
        if (tail == head) throw InputError("Admg: self-loop on '" + tail + "'");
        const std::size_t t = lookup(tail), h = lookup(head);
        children_[t].push_back(h);
        parents_[h].push_back(t);
    }
    for (std::size_t k = 0; k < bidirected_.size(); ++k) {
        const auto& [a, b] = bidirected_[k];
        if (a == b) throw InputError("Admg: bidirected self-loop on '" + a + "'");
        const std::size_t i = lookup(a), j = lookup(b);
        const std::size_t latent = nodes_.size() + k;
        children_[latent] = {i, j};
        parents_[i].push_back(latent);
        parents_[j].push_back(latent);
    }

    // Kahn's algorithm over the directed part only; bidirected edges cannot
    // create directed cycles.
    std::vector<std::size_t> indegree(nodes_.size(), 0);
    for (const auto& [tail, head] : directed_) {
        (void)tail;
        ++indegree[lookup(head)];
    }
    std::queue<std::size_t> ready;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    std::size_t emitted = 0;
    while (!ready.empty()) {
        const std::size_t v = ready.front();
        ready.pop();
        ++emitted;
        for (const std::size_t c : children_[v]) {
            if (c < nodes_.size() && --indegree[c] == 0) ready.push(c);
        }
    }
    if (emitted != nodes_.size()) throw ModelError("Admg: directed part has a cycle");
}

Admg Admg::parse(std::string_view text) {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> directed;
    std::vector<std::pair<std::string, std::string>> bidirected;
    std::unordered_map<std::string, bool> seen;

    auto declare = [&](const std::string& name) {
        if (!seen.count(name)) {
            seen[name] = true;
            nodes.push_back(name);
        }
    };

    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const std::string_view raw =
            text.substr(start, (nl == std::string_view::npos ? text.size() : nl) - start);
        start = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++lineno;

        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        std::istringstream in(line);
        std::string lhs, arrow, rhs, extra;
        in >> lhs >> arrow >> rhs;
        if (arrow.empty()) {  // bare token: isolated node declaration
            declare(lhs);
            continue;
        }
        if (rhs.empty() || (in >> extra)) {
            throw InputError("graph line " + std::to_string(lineno) + ": expected 'A -> B' or 'A <-> B'");
        }
        declare(lhs);
        declare(rhs);
        if (arrow == "->") {
            directed.emplace_back(lhs, rhs);
        } else if (arrow == "<->") {
            bidirected.emplace_back(lhs, rhs);
        } else {
            throw InputError("graph line " + std::to_string(lineno) + ": unknown edge '" + arrow + "'");
        }
    }
    return Admg(std::move(nodes), std::move(directed), std::move(bidirected));
}

Admg Admg::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

bool Admg::has_node(const std::string& name) const {
    return std::find(nodes_.begin(), nodes_.end(), name) != nodes_.end();
}

std::size_t Admg::node_index(const std::string& name) const {
    const auto it = std::find(nodes_.begin(), nodes_.end(), name);
    if (it == nodes_.end()) throw InputError("Admg: unknown node '" + name + "'");
    return static_cast<std::size_t>(it - nodes_.begin());
}

bool d_separated(const Admg& g, const std::string& src, const std::string& dst,
                 const std::set<std::string>& conditioning) {
    if (src == dst) throw InputError("d_separated: src and dst must differ");
    const std::size_t s = g.node_index(src);
    const std::size_t t = g.node_index(dst);

    std::vector<bool> in_z(g.augmented_size_, false);
    for (const auto& name : conditioning) {
        const std::size_t z = g.node_index(name);
        if (z == s || z == t) {
            throw InputError("d_separated: endpoint '" + name + "' inside conditioning set");
        }
        in_z[z] = true;
    }

    // Nodes that are in Z or have a descendant in Z: exactly the activated
    // colliders. BFS upward from Z along parent links.
    std::vector<bool> anc_z = in_z;
    {
        std::queue<std::size_t> frontier;
        for (std::size_t v = 0; v < g.augmented_size_; ++v) {
            if (in_z[v]) frontier.push(v);
        }
        while (!frontier.empty()) {
            const std::size_t v = frontier.front();
            frontier.pop();
            for (const std::size_t p : g.parents_[v]) {
                if (!anc_z[p]) {
                    anc_z[p] = true;
                    frontier.push(p);
                }
            }
        }
    }

    // Reachability over (node, direction) states. Direction "up" means the
    // trail arrived from a child, "down" means from a parent.
    enum : std::size_t { kUp = 0, kDown = 1 };
    std::vector<std::array<bool, 2>> visited(g.augmented_size_, {false, false});
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    stack.emplace_back(s, kUp);

    while (!stack.empty()) {
        const auto [v, dir] = stack.back();
        stack.pop_back();
        if (visited[v][dir]) continue;
        visited[v][dir] = true;
        if (v == t) return false;

        if (dir == kUp) {
            if (!in_z[v]) {
                for (const std::size_t p : g.parents_[v]) stack.emplace_back(p, kUp);
                for (const std::size_t c : g.children_[v]) stack.emplace_back(c, kDown);
            }
        } else {
            if (!in_z[v]) {
                for (const std::size_t c : g.children_[v]) stack.emplace_back(c, kDown);
            }
            if (anc_z[v]) {  // collider with an observed descendant opens the trail
                for (const std::size_t p : g.parents_[v]) stack.emplace_back(p, kUp);
            }
        }
    }
    return true;
}

bool implies_dp(const Admg& g, const std::string& protected_node,
                const std::string& predictor_node) {
    return d_separated(g, protected_node, predictor_node, {});
}

}  // namespace crossworld
