#include "qospath/oracle.hpp"

#include <algorithm>

#include "qospath/errors.hpp"
#include "qospath/format.hpp"

namespace qospath {

bool PathCatalog::contains(const Chromosome& c) const {
    return std::any_of(rows.begin(), rows.end(),
                       [&](const CatalogRow& row) { return row.path == c; });
}

namespace {

void extend(const Topology& t, std::vector<NodeId>& prefix, std::vector<char>& on_path,
            std::vector<Chromosome>& out) {
    NodeId tip = prefix.back();
    if (tip == t.destination()) {
        out.push_back(Chromosome{prefix});
        return;
    }
    for (const auto& [w, metrics] : t.neighbors(tip)) {
        if (on_path[static_cast<std::size_t>(w)]) {
            continue;
        }
        on_path[static_cast<std::size_t>(w)] = 1;
        prefix.push_back(w);
        extend(t, prefix, on_path, out);
        prefix.pop_back();
        on_path[static_cast<std::size_t>(w)] = 0;
    }
}

}  // namespace

PathCatalog enumerate_paths(const Topology& t, const QosRequirement& req) {
    if (t.node_count() > kMaxOracleNodes) {
        throw ValidationError("oracle refuses topologies with more than " +
                              std::to_string(kMaxOracleNodes) + " nodes (got " +
                              std::to_string(t.node_count()) + ")");
    }
    // Links breaking a delay/jitter/loss bound can never carry the flow, so
    // paths through them are not enumerated. Bandwidth stays per-row data:
    // Ab <= 0 rows belong in the catalog as infeasible entries.
    std::vector<Link> usable;
    for (const auto& link : t.links()) {
        if (qos_bounds_ok(link.metrics, req)) {
            usable.push_back(link);
        }
    }
    Topology bounded(t.node_count(), t.source(), t.destination(), std::move(usable));

    std::vector<Chromosome> paths;
    std::vector<NodeId> prefix{bounded.source()};
    std::vector<char> on_path(static_cast<std::size_t>(bounded.node_count()), 0);
    on_path[static_cast<std::size_t>(bounded.source())] = 1;
    extend(bounded, prefix, on_path, paths);

    PathCatalog catalog;
    catalog.rows.reserve(paths.size());
    double total = 0.0;
    for (auto& path : paths) {
        CatalogRow row;
        row.ab = bottleneck_ab(t, path, req);
        row.nodes_visited = hop_count(path);
        row.path = std::move(path);
        total += std::max(row.ab, 0.0);
        catalog.rows.push_back(std::move(row));
    }
    for (auto& row : catalog.rows) {
        row.fitness = total > 0.0 ? std::max(row.ab, 0.0) / total : 0.0;
    }
    std::sort(catalog.rows.begin(), catalog.rows.end(),
              [](const CatalogRow& a, const CatalogRow& b) {
                  if (a.nodes_visited != b.nodes_visited) {
                      return a.nodes_visited < b.nodes_visited;
                  }
                  if (a.fitness != b.fitness) {
                      return a.fitness > b.fitness;
                  }
                  return text_less(a.path, b.path);
              });
    return catalog;
}

const CatalogRow& exact_optimum(const PathCatalog& catalog) {
    for (const auto& row : catalog.rows) {
        if (row.ab > 0.0) {
            return row;
        }
    }
    throw InfeasibleError("no feasible path: no enumerated path has Ab > 0");
}

std::string catalog_csv(const PathCatalog& catalog) {
    std::string out = "chromosome,ab,fitness,nodes_visited\n";
    for (const auto& row : catalog.rows) {
        out += row.path.text() + "," + format_double(row.ab) + "," +
               format_double(row.fitness) + "," + std::to_string(row.nodes_visited) + "\n";
    }
    return out;
}

}  // namespace qospath
