#pragma once

#include "qospath/topology.hpp"

namespace qospath {

// Flow demand plus the per-link bounds a usable link has to satisfy.
// Defaults constrain nothing but bandwidth.
struct QosRequirement {
    double required_bandwidth = 0.0;
    double max_delay = 1e9;
    double max_jitter = 1e9;
    double max_loss = 1.0;
};

// Bandwidth left on the link after the flow's demand. May be <= 0,
// in which case the link cannot participate in a path.
inline double available_bandwidth(const LinkMetrics& link, const QosRequirement& req) {
    return link.utility - req.required_bandwidth;
}

// The three bounds that do not depend on bandwidth.
inline bool qos_bounds_ok(const LinkMetrics& link, const QosRequirement& req) {
    return link.delay <= req.max_delay && link.jitter <= req.max_jitter &&
           link.loss <= req.max_loss;
}

inline bool link_admissible(const LinkMetrics& link, const QosRequirement& req) {
    return available_bandwidth(link, req) > 0.0 && qos_bounds_ok(link, req);
}

// Restriction of t to admissible links. Node set, source and destination are
// unchanged. Throws InfeasibleError when source and destination end up in
// different components.
Topology admissible_subgraph(const Topology& t, const QosRequirement& req);

}  // namespace qospath
