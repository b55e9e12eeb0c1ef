#include "qospath/chromosome.hpp"

#include <algorithm>
#include <limits>

#include "qospath/errors.hpp"

namespace qospath {

std::string Chromosome::text() const {
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0) {
            out += '-';
        }
        out += std::to_string(nodes[i]);
    }
    return out;
}

bool text_less(const Chromosome& a, const Chromosome& b) {
    return a.text() < b.text();
}

Chromosome random_path(const Topology& t, Rng& rng) {
    // Randomized depth-first walk. A node enters blocked[] when stepped on
    // and stays blocked after a backtrack, so exhausted branches are never
    // re-entered and termination is guaranteed on any reachable destination.
    std::vector<char> blocked(static_cast<std::size_t>(t.node_count()), 0);
    std::vector<NodeId> path{t.source()};
    blocked[static_cast<std::size_t>(t.source())] = 1;
    std::vector<NodeId> candidates;

    while (path.back() != t.destination()) {
        candidates.clear();
        for (const auto& [w, metrics] : t.neighbors(path.back())) {
            if (!blocked[static_cast<std::size_t>(w)]) {
                candidates.push_back(w);
            }
        }
        if (candidates.empty()) {
            path.pop_back();
            if (path.empty()) {
                throw InfeasibleError("random_path: destination unreachable from source");
            }
            continue;
        }
        NodeId next = candidates[rng.below(candidates.size())];
        blocked[static_cast<std::size_t>(next)] = 1;
        path.push_back(next);
    }
    return Chromosome{std::move(path)};
}

bool is_valid(const Topology& t, const Chromosome& c) {
    if (c.nodes.size() < 2) {
        return false;
    }
    if (c.nodes.front() != t.source() || c.nodes.back() != t.destination()) {
        return false;
    }
    std::vector<char> seen(static_cast<std::size_t>(t.node_count()), 0);
    for (NodeId v : c.nodes) {
        if (v < 0 || v >= t.node_count() || seen[static_cast<std::size_t>(v)]) {
            return false;
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 1; i < c.nodes.size(); ++i) {
        if (t.find_link(c.nodes[i - 1], c.nodes[i]) == nullptr) {
            return false;
        }
    }
    return true;
}

double bottleneck_ab(const Topology& t, const Chromosome& c, const QosRequirement& req) {
    double bottleneck = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < c.nodes.size(); ++i) {
        const LinkMetrics* m = t.find_link(c.nodes[i - 1], c.nodes[i]);
        bottleneck = std::min(bottleneck, available_bandwidth(*m, req));
    }
    return bottleneck;
}

}  // namespace qospath
