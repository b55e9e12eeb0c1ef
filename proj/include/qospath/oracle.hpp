#pragma once

#include <string>
#include <vector>

#include "qospath/chromosome.hpp"
#include "qospath/qos.hpp"
#include "qospath/topology.hpp"

namespace qospath {

// Exhaustive enumeration is the ground truth the optimizers are judged
// against. Worth nothing on big graphs, everything on small ones.
inline constexpr int kMaxOracleNodes = 14;

struct CatalogRow {
    Chromosome path;
    double ab = 0.0;        // bottleneck available bandwidth
    double fitness = 0.0;   // max(ab,0) normalized over the whole catalog
    std::size_t nodes_visited = 0;
};

// Every simple source-destination path of a topology, sorted by
// (nodes_visited ascending, fitness descending, text ascending).
struct PathCatalog {
    std::vector<CatalogRow> rows;

    bool contains(const Chromosome& c) const;
};

// Depth-first enumeration of all simple paths. Refuses topologies with more
// than kMaxOracleNodes nodes. Fitness is computed with the whole catalog as
// the population, so it is exact for the given demand.
PathCatalog enumerate_paths(const Topology& t, const QosRequirement& req);

// The reference answer: first feasible row (ab > 0) in catalog order, i.e.
// the lexicographic winner by (fewest nodes, highest fitness, text).
// Throws InfeasibleError when no row is feasible.
const CatalogRow& exact_optimum(const PathCatalog& catalog);

std::string catalog_csv(const PathCatalog& catalog);

}  // namespace qospath
