#include "qospath/qos.hpp"

#include <vector>

#include "qospath/errors.hpp"

namespace qospath {

Topology admissible_subgraph(const Topology& t, const QosRequirement& req) {
    std::vector<Link> kept;
    for (const auto& link : t.links()) {
        if (link_admissible(link.metrics, req)) {
            kept.push_back(link);
        }
    }
    Topology filtered(t.node_count(), t.source(), t.destination(), std::move(kept));
    if (!filtered.source_reaches_destination()) {
        throw InfeasibleError(
            "no admissible route: source and destination are disconnected once links "
            "failing the QoS bounds or the available-bandwidth rule (Ab > 0) are removed");
    }
    return filtered;
}

}  // namespace qospath
