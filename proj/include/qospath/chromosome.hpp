#pragma once

#include <string>
#include <vector>

#include "qospath/qos.hpp"
#include "qospath/rng.hpp"
#include "qospath/topology.hpp"

namespace qospath {

// A candidate solution: a loop-free node sequence from source to destination.
// Shared by the GA and SA engines.
struct Chromosome {
    std::vector<NodeId> nodes;

    std::size_t size() const { return nodes.size(); }

    // Report form, node ids joined by '-' (e.g. "0-3-7-9").
    std::string text() const;

    bool operator==(const Chromosome&) const = default;
};

// Total order used wherever ties need a deterministic winner.
bool text_less(const Chromosome& a, const Chromosome& b);

// Loop-avoiding random walk from source to destination: step to a uniformly
// random unvisited neighbor, backtrack off dead ends and exclude the dead
// branch. Requires source-destination connectivity in t.
Chromosome random_path(const Topology& t, Rng& rng);

// All chromosome invariants against t: endpoints match, length >= 2,
// no repeated node, every consecutive pair is a link of t.
bool is_valid(const Topology& t, const Chromosome& c);

// Minimum available bandwidth over the path's links (the path's Ab).
// c must be valid on t.
double bottleneck_ab(const Topology& t, const Chromosome& c, const QosRequirement& req);

// Number of nodes in the sequence. A source-X-Y-destination path counts 4.
inline std::size_t hop_count(const Chromosome& c) {
    return c.nodes.size();
}

}  // namespace qospath
