#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qospath/ga.hpp"
#include "qospath/oracle.hpp"
#include "qospath/qos.hpp"
#include "qospath/sa.hpp"
#include "qospath/topology.hpp"

namespace qospath {

struct GeneratorSpec {
    int node_count = 10;
    double edge_probability = 0.35;
    std::uint64_t seed = 1;
    MetricRanges ranges;
};

// Either a topology file on disk or a generator recipe; never both.
struct TopologySource {
    enum class Kind { None, File, Generate };
    Kind kind = Kind::None;
    std::string path;
    GeneratorSpec generate;
};

struct ExperimentConfig {
    TopologySource topology;
    QosRequirement qos;
    GaConfig ga;
    SaConfig sa;
    int trial_count = 100;
    std::uint64_t seed_base = 1;

    void validate() const;  // throws ValidationError
};

// Line-oriented config text. Stanzas: `topology file <path>`,
// `topology generate nodes=10 edge_prob=0.35 seed=1 utility=1:10 delay=0:1
// jitter=0:1 loss=0:0`, `qos demand=0 max_delay=1e9 max_jitter=1e9
// max_loss=1`, `ga population=5 generations=5 crossover=0.8 mutation=0.0001
// pool=10 seed=1`, `sa temperature=1000 stop=50 inner=2 alpha=0.2 stall=5
// seed=1`, `trials 100`, `seed 1`. Keys are optional and override defaults;
// later lines override earlier ones; `#` starts a comment.
ExperimentConfig parse_config(const std::string& text);

// Loads the file or runs the generator. Throws ValidationError when the
// source is unset.
Topology resolve_topology(const TopologySource& source);

// Generation budgets swept by the comparison. SA gets a matched budget of
// population_size * generations candidate evaluations per point.
const std::vector<int>& comparison_budgets();

struct TrialOutcome {
    int trial = 0;
    std::uint64_t seed = 0;
    Chromosome ga_path;
    bool ga_matched = false;
    Chromosome sa_path;
    bool sa_matched = false;
    // Candidate evaluations the SA run actually spent before its own
    // stopping rules or the cap ended it.
    int sa_steps = 0;
};

struct BudgetPoint {
    int generations = 0;
    int evaluations = 0;
    double ga_match_rate = 0.0;
    double sa_match_rate = 0.0;
    std::vector<TrialOutcome> trials;
};

struct ComparisonReport {
    Chromosome exact_best;
    double exact_ab = 0.0;
    int trial_count = 0;
    std::vector<BudgetPoint> points;
};

// Runs trial_count independent GA-vs-SA trials at every budget, each judged
// against the exhaustive oracle. Trial seeds are seed_base + trial index, so
// the report is identical no matter how the trials are scheduled.
// threads: 1 = serial reference loop, 0 = all available cores, n = n cores.
ComparisonReport run_comparison(const Topology& topology,
                                const ExperimentConfig& config,
                                int threads = 1);

std::string comparison_csv(const ComparisonReport& report,
                           const ExperimentConfig& config);

nlohmann::json comparison_json(const ComparisonReport& report,
                               const ExperimentConfig& config);

}  // namespace qospath
