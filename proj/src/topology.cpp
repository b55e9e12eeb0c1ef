#include "qospath/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <vector>

#include "parse_util.hpp"
#include "qospath/errors.hpp"
#include "qospath/format.hpp"
#include "qospath/rng.hpp"

namespace qospath {

namespace {

void check_metrics(const LinkMetrics& m, const std::string& where) {
    const double values[] = {m.utility, m.delay, m.jitter, m.loss};
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError(where + ": metrics must be finite and non-negative");
        }
    }
    if (m.loss > 1.0) {
        throw ValidationError(where + ": loss must be <= 1");
    }
}

}  // namespace

Topology::Topology(int node_count, NodeId source, NodeId destination,
                   std::vector<Link> links)
    : node_count_(node_count),
      source_(source),
      destination_(destination),
      links_(std::move(links)) {
    if (node_count_ < 2) {
        throw ValidationError("topology needs at least 2 nodes");
    }
    auto check_node = [&](NodeId v, const char* what) {
        if (v < 0 || v >= node_count_) {
            throw ValidationError(std::string(what) + " node " + std::to_string(v) +
                                  " out of range [0," + std::to_string(node_count_) + ")");
        }
    };
    check_node(source_, "source");
    check_node(destination_, "destination");
    if (source_ == destination_) {
        throw ValidationError("source and destination must differ");
    }

    for (auto& link : links_) {
        check_node(link.u, "link");
        check_node(link.v, "link");
        if (link.u == link.v) {
            throw ValidationError("self-loop at node " + std::to_string(link.u));
        }
        if (link.u > link.v) {
            std::swap(link.u, link.v);
        }
        check_metrics(link.metrics,
                      "link " + std::to_string(link.u) + "-" + std::to_string(link.v));
    }
    std::sort(links_.begin(), links_.end(), [](const Link& a, const Link& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    for (std::size_t i = 1; i < links_.size(); ++i) {
        if (links_[i - 1].u == links_[i].u && links_[i - 1].v == links_[i].v) {
            throw ValidationError("duplicate edge " + std::to_string(links_[i].u) + "-" +
                                  std::to_string(links_[i].v));
        }
    }

    adjacency_.assign(static_cast<std::size_t>(node_count_), {});
    for (const auto& link : links_) {
        adjacency_[static_cast<std::size_t>(link.u)].emplace_back(link.v, link.metrics);
        adjacency_[static_cast<std::size_t>(link.v)].emplace_back(link.u, link.metrics);
    }
    for (auto& row : adjacency_) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
}

const LinkMetrics* Topology::find_link(NodeId a, NodeId b) const {
    if (a > b) {
        std::swap(a, b);
    }
    auto it = std::lower_bound(links_.begin(), links_.end(), std::pair{a, b},
                               [](const Link& l, const std::pair<NodeId, NodeId>& key) {
                                   return std::pair{l.u, l.v} < key;
                               });
    if (it != links_.end() && it->u == a && it->v == b) {
        return &it->metrics;
    }
    return nullptr;
}

namespace {

// Nodes reachable from start by BFS.
std::vector<bool> reachable(const Topology& t, NodeId start) {
    std::vector<bool> seen(static_cast<std::size_t>(t.node_count()), false);
    std::vector<NodeId> frontier{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!frontier.empty()) {
        NodeId v = frontier.back();
        frontier.pop_back();
        for (const auto& [w, metrics] : t.neighbors(v)) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                frontier.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

bool Topology::is_connected() const {
    auto seen = reachable(*this, 0);
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool Topology::source_reaches_destination() const {
    return reachable(*this, source_)[static_cast<std::size_t>(destination_)];
}

Topology load_topology(const std::string& text) {
    using detail::expect_kv;
    using detail::parse_integer;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    int node_count = 0;
    NodeId source = 0;
    NodeId destination = 0;
    std::vector<Link> links;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string word;
        if (!(tokens >> word) || word[0] == '#') {
            continue;
        }
        if (!have_header) {
            if (word != "nodes") {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'nodes N source S dest D' header");
            }
            std::string n, kw_source, s, kw_dest, d;
            if (!(tokens >> n >> kw_source >> s >> kw_dest >> d) ||
                kw_source != "source" || kw_dest != "dest") {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": malformed header, want 'nodes N source S dest D'");
            }
            node_count = static_cast<int>(parse_integer(n, line_no, "nodes"));
            source = static_cast<NodeId>(parse_integer(s, line_no, "source"));
            destination = static_cast<NodeId>(parse_integer(d, line_no, "dest"));
            have_header = true;
            continue;
        }
        if (word != "edge") {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 'edge U V utility=... delay=... jitter=... loss=...'");
        }
        std::string u, v, utility, delay, jitter, loss;
        if (!(tokens >> u >> v >> utility >> delay >> jitter >> loss)) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed edge line");
        }
        std::string extra;
        if (tokens >> extra) {
            throw ParseError("line " + std::to_string(line_no) + ": trailing token: " + extra);
        }
        Link link;
        link.u = static_cast<NodeId>(parse_integer(u, line_no, "edge endpoint"));
        link.v = static_cast<NodeId>(parse_integer(v, line_no, "edge endpoint"));
        link.metrics.utility = expect_kv(utility, "utility", line_no);
        link.metrics.delay = expect_kv(delay, "delay", line_no);
        link.metrics.jitter = expect_kv(jitter, "jitter", line_no);
        link.metrics.loss = expect_kv(loss, "loss", line_no);
        links.push_back(link);
    }
    if (!have_header) {
        throw ParseError("missing 'nodes' header line");
    }

    Topology t(node_count, source, destination, std::move(links));
    if (!t.is_connected()) {
        throw ValidationError("graph is disconnected");
    }
    return t;
}

std::string serialize(const Topology& t) {
    std::string out;
    out += "nodes " + std::to_string(t.node_count()) + " source " +
           std::to_string(t.source()) + " dest " + std::to_string(t.destination()) + "\n";
    for (const auto& link : t.links()) {
        out += "edge " + std::to_string(link.u) + " " + std::to_string(link.v) +
               " utility=" + format_double(link.metrics.utility) +
               " delay=" + format_double(link.metrics.delay) +
               " jitter=" + format_double(link.metrics.jitter) +
               " loss=" + format_double(link.metrics.loss) + "\n";
    }
    return out;
}

Topology random_topology(int node_count, double edge_probability,
                         const MetricRanges& ranges, std::uint64_t seed) {
    if (node_count < 2) {
        throw ValidationError("random_topology needs node_count >= 2");
    }
    if (!(edge_probability > 0.0) || edge_probability > 1.0) {
        throw ValidationError("edge_probability must be in (0, 1]");
    }

    Rng rng(seed);
    auto draw = [&](const MetricRange& r) {
        return r.min + (r.max - r.min) * rng.uniform01();
    };
    auto draw_metrics = [&] {
        LinkMetrics m;
        m.utility = draw(ranges.utility);
        m.delay = draw(ranges.delay);
        m.jitter = draw(ranges.jitter);
        m.loss = draw(ranges.loss);
        return m;
    };

    // Random spanning tree: attach each node (in shuffled order) to a
    // uniformly chosen node already in the tree.
    std::vector<NodeId> order(static_cast<std::size_t>(node_count));
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        std::swap(order[i], order[rng.below(i + 1)]);
    }
    std::vector<std::vector<bool>> present(
        static_cast<std::size_t>(node_count),
        std::vector<bool>(static_cast<std::size_t>(node_count), false));
    std::vector<Link> links;
    for (std::size_t i = 1; i < order.size(); ++i) {
        NodeId fresh = order[i];
        NodeId anchor = order[rng.below(i)];
        links.push_back({std::min(fresh, anchor), std::max(fresh, anchor), draw_metrics()});
        present[static_cast<std::size_t>(links.back().u)]
               [static_cast<std::size_t>(links.back().v)] = true;
    }
    for (NodeId u = 0; u < node_count; ++u) {
        for (NodeId v = u + 1; v < node_count; ++v) {
            if (present[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) {
                continue;
            }
            if (rng.chance(edge_probability)) {
                links.push_back({u, v, draw_metrics()});
            }
        }
    }
    return Topology(node_count, 0, node_count - 1, std::move(links));
}

}  // namespace qospath
