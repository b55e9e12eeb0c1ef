#pragma once

#include <cstdint>
#include <vector>

#include "qospath/chromosome.hpp"
#include "qospath/qos.hpp"
#include "qospath/rng.hpp"
#include "qospath/topology.hpp"

namespace qospath {

struct SaConfig {
    double initial_temperature = 1000.0;
    double stop_temperature = 50.0;
    std::size_t inner_iterations = 2;  // candidate draws per temperature epoch
    double cooling_factor = 0.2;       // T <- T * cooling_factor after each epoch
    std::size_t stall_limit = 5;       // consecutive rejections before giving up
    std::uint64_t seed = 0;

    void validate() const;  // throws ValidationError
};

// One candidate evaluation. current is the state the candidate was proposed
// against; stall_remaining is the counter after the accept/reject update.
struct SaTraceRow {
    Chromosome current;
    Chromosome candidate;
    double delta = 0.0;
    std::size_t stall_remaining = 0;
    double temperature = 0.0;
    bool accepted = false;
};

// The GA fitness with the population frozen at run start: f(c) is the
// path's clamped bottleneck over the pool's total. The constant denominator
// never reorders solutions, it only sets the scale of delta values.
class SaObjective {
public:
    SaObjective(std::vector<Chromosome> pool, const Topology& t,
                const QosRequirement& req);

    double operator()(const Chromosome& c) const;

    const std::vector<Chromosome>& pool() const { return pool_; }
    double denominator() const { return denominator_; }

private:
    std::vector<Chromosome> pool_;
    const Topology* topology_;
    const QosRequirement* requirement_;
    double denominator_;
};

// Spec-shaped one-shot form of the same objective.
double sa_objective(const Chromosome& c, const std::vector<Chromosome>& pool,
                    const Topology& t, const QosRequirement& req);

inline double delta(const Chromosome& current, const Chromosome& candidate,
                    const SaObjective& objective) {
    return objective(candidate) - objective(current);
}

// Metropolis rule for a maximized objective: improvements always pass,
// worsening moves pass with probability exp(delta_f / temperature).
bool accept(double delta_f, double temperature, Rng& rng);

// The neighborhood is the whole solution space: a fresh random path.
inline Chromosome neighbor(const Topology& t, Rng& rng) {
    return random_path(t, rng);
}

struct SaResult {
    Chromosome best;              // highest objective state ever held
    double best_objective = 0.0;
    Chromosome final_state;       // last accepted state when the run stopped
    double final_objective = 0.0;
    std::vector<SaTraceRow> trace;
    // Every value the temperature variable took, including the one that
    // failed the continuation test.
    std::vector<double> visited_temperatures;
};

// Anneal on the admissible subgraph of t. max_evaluations caps the number of
// candidate draws when positive (used for budget-matched comparisons);
// 0 means the schedule alone decides.
SaResult run_sa(const Topology& t, const QosRequirement& req, const SaConfig& cfg,
                std::size_t max_evaluations = 0);

}  // namespace qospath
