#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qospath {

using NodeId = int;

// Per-link QoS metrics. utility is the bandwidth capacity the link offers.
struct LinkMetrics {
    double utility = 0.0;
    double delay = 0.0;
    double jitter = 0.0;
    double loss = 0.0;

    bool operator==(const LinkMetrics&) const = default;
};

// Undirected link with normalized endpoints (u < v).
struct Link {
    NodeId u = 0;
    NodeId v = 0;
    LinkMetrics metrics;

    bool operator==(const Link&) const = default;
};

// Immutable undirected network graph with a distinguished source and
// destination. Construction validates everything except connectivity;
// load_topology() additionally requires the whole graph to be connected.
// Neighbor lists are kept sorted by node id so iteration order is fixed
// and all randomness comes from the caller's seeded Rng.
class Topology {
public:
    Topology(int node_count, NodeId source, NodeId destination,
             std::vector<Link> links);

    int node_count() const { return node_count_; }
    NodeId source() const { return source_; }
    NodeId destination() const { return destination_; }

    // Sorted by (u, v).
    const std::vector<Link>& links() const { return links_; }

    // Adjacent nodes of v, ascending by node id.
    const std::vector<std::pair<NodeId, LinkMetrics>>& neighbors(NodeId v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }

    // nullptr when the endpoints are not linked.
    const LinkMetrics* find_link(NodeId a, NodeId b) const;

    bool is_connected() const;
    bool source_reaches_destination() const;

    bool operator==(const Topology& other) const {
        return node_count_ == other.node_count_ && source_ == other.source_ &&
               destination_ == other.destination_ && links_ == other.links_;
    }

private:
    int node_count_;
    NodeId source_;
    NodeId destination_;
    std::vector<Link> links_;
    std::vector<std::vector<std::pair<NodeId, LinkMetrics>>> adjacency_;
};

// Line-oriented text format:
//   nodes N source S dest D
//   edge U V utility=<f> delay=<f> jitter=<f> loss=<f>
// '#' starts a comment line. Parse errors carry the line number; the loaded
// graph must pass every invariant including connectedness.
Topology load_topology(const std::string& text);

std::string serialize(const Topology& t);

struct MetricRange {
    double min = 0.0;
    double max = 0.0;
};

struct MetricRanges {
    MetricRange utility{1.0, 10.0};
    MetricRange delay{0.0, 1.0};
    MetricRange jitter{0.0, 1.0};
    MetricRange loss{0.0, 0.0};
};

// Connected random graph: a random spanning tree first, then each remaining
// node pair becomes a link with edge_probability. Same seed, same topology.
Topology random_topology(int node_count, double edge_probability,
                         const MetricRanges& ranges, std::uint64_t seed);

}  // namespace qospath
