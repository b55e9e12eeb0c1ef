#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qospath/chromosome.hpp"
#include "qospath/qos.hpp"
#include "qospath/rng.hpp"
#include "qospath/topology.hpp"

namespace qospath {

struct GaConfig {
    // Survivors per generation; the initial pool is cut down to this size.
    std::size_t population_size = 5;
    // Total generations reported. The selected initial population is
    // generation 1, so max_generations - 1 evolution steps run after it.
    std::size_t max_generations = 5;
    double crossover_probability = 0.8;
    // 0.01 percent of the time.
    double mutation_probability = 0.0001;
    std::size_t initial_pool_size = 10;
    std::uint64_t seed = 0;

    void validate() const;  // throws ValidationError
};

// One population member with its scores, mirroring the generation CSV columns.
struct FitnessRow {
    Chromosome chromosome;
    double ab = 0.0;                     // bottleneck available bandwidth
    double fitness = 0.0;                // max(ab,0) / population total
    std::size_t nodes_visited = 0;
    double selection_probability = 0.0;  // fitness / fitness total
};

// What one reproduction attempt did. produced/kept/mutated run in parallel;
// a fell_back record passed the first parent through because crossover
// yielded nothing usable.
struct OperatorRecord {
    std::string op;  // "elitism" | "single-point" | "pmx" | "selection"
    std::vector<std::string> parents;
    std::vector<std::string> produced;
    std::vector<bool> kept;
    std::vector<bool> mutated;
    bool fell_back = false;
};

struct GenerationReport {
    std::size_t generation_index = 0;  // 1-based
    std::vector<FitnessRow> rows;
    std::vector<OperatorRecord> operator_log;
};

// Scores for a whole population. fitness is max(ab,0) normalized by the
// population total (zero when no member is feasible); selection_probability
// renormalizes the fitness column the same way, so both sum to 1 whenever a
// feasible member exists.
std::vector<FitnessRow> fitness_table(const std::vector<Chromosome>& population,
                                      const Topology& t, const QosRequirement& req);

// Roulette wheel draw over selection_probability. Throws InfeasibleError
// when every probability is zero.
const FitnessRow& roulette_select(const std::vector<FitnessRow>& rows, Rng& rng);

// Splice both parents at the given common intermediate node. Returns the
// offspring that pass is_valid; invalid splices go to *discarded when given.
std::vector<Chromosome> single_point_at(const Chromosome& a, const Chromosome& b,
                                        NodeId site, const Topology& t,
                                        std::vector<Chromosome>* discarded = nullptr);

// Single-point crossover at a uniformly chosen common intermediate node.
// Empty result when the parents share no intermediate node or no offspring
// survives validation.
std::vector<Chromosome> single_point_crossover(const Chromosome& a, const Chromosome& b,
                                               Rng& rng, const Topology& t,
                                               std::vector<Chromosome>* discarded = nullptr);

// Exchange the segments delimited by two common nodes (given in both
// parents' order), delete outside nodes duplicated by the incoming segment,
// keep offspring passing is_valid.
std::vector<Chromosome> pmx_at(const Chromosome& a, const Chromosome& b,
                               NodeId first_site, NodeId second_site, const Topology& t,
                               std::vector<Chromosome>* discarded = nullptr);

// Partially mapped crossover with the site pair drawn uniformly from all
// common node pairs appearing in the same relative order in both parents.
// Endpoints count as sites, so two parents sharing only source and
// destination swap whole bodies and come back unchanged.
std::vector<Chromosome> pmx_crossover(const Chromosome& a, const Chromosome& b,
                                      Rng& rng, const Topology& t,
                                      std::vector<Chromosome>* discarded = nullptr);

// Insert a new node between one uniformly chosen consecutive pair, when some
// unused node links to both. No candidate, no change.
Chromosome insertion_mutation(const Chromosome& c, Rng& rng, const Topology& t);

// One generation step: elitism first, then roulette-drawn parents produce
// offspring (PMX when both parents have at least two intermediate nodes,
// single-point otherwise) until the population is full again.
GenerationReport evolve_generation(const GenerationReport& current, const GaConfig& cfg,
                                   const Topology& t, const QosRequirement& req, Rng& rng);

// The minimum path rule: among feasible rows, fewest nodes visited first,
// then highest selection probability, then lowest text order.
const FitnessRow& final_path_selection(const std::vector<FitnessRow>& rows);

struct GaResult {
    Chromosome best;
    std::vector<GenerationReport> generations;
    double winner_probability = 0.0;
    // The winner's selection probability ended below 0.5; reported as a
    // warning, never used to reject the answer.
    bool low_confidence = false;
};

// Full run on the admissible subgraph of t: random initial pool, best
// population_size kept, max_generations - 1 evolution steps, minimum path
// rule over the last generation.
GaResult run_ga(const Topology& t, const QosRequirement& req, const GaConfig& cfg);

}  // namespace qospath
