#include "qospath/experiment.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qospath/errors.hpp"
#include "qospath/format.hpp"
#include "parse_util.hpp"

namespace qospath {

namespace {

using detail::expect_kv;
using detail::parse_integer;
using detail::parse_number;
using detail::parse_u64;
using detail::split_kv;

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

std::size_t parse_count(const std::string& value, int line_no, const std::string& field) {
    long n = parse_integer(value, line_no, field);
    if (n < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + field +
                         "' must be non-negative, got: " + value);
    }
    return static_cast<std::size_t>(n);
}

MetricRange parse_range(const std::string& value, int line_no, const std::string& field) {
    auto colon = value.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= value.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + field +
                         "' expects min:max, got: " + value);
    }
    MetricRange range;
    range.min = parse_number(value.substr(0, colon), line_no, field);
    range.max = parse_number(value.substr(colon + 1), line_no, field);
    if (!(range.min <= range.max)) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + field +
                         "' needs min <= max, got: " + value);
    }
    return range;
}

void apply_topology(ExperimentConfig& cfg, const std::vector<std::string>& tokens,
                    int line_no) {
    if (tokens.size() < 2) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": topology needs 'file <path>' or 'generate key=value...'");
    }
    if (tokens[1] == "file") {
        if (tokens.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": topology file expects exactly one path");
        }
        cfg.topology.kind = TopologySource::Kind::File;
        cfg.topology.path = tokens[2];
        return;
    }
    if (tokens[1] != "generate") {
        throw ParseError("line " + std::to_string(line_no) +
                         ": unknown topology source: " + tokens[1]);
    }
    cfg.topology.kind = TopologySource::Kind::Generate;
    GeneratorSpec& spec = cfg.topology.generate;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
        auto [key, value] = split_kv(tokens[i], line_no);
        if (key == "nodes") {
            spec.node_count = static_cast<int>(parse_integer(value, line_no, key));
        } else if (key == "edge_prob") {
            spec.edge_probability = parse_number(value, line_no, key);
        } else if (key == "seed") {
            spec.seed = parse_u64(value, line_no, key);
        } else if (key == "utility") {
            spec.ranges.utility = parse_range(value, line_no, key);
        } else if (key == "delay") {
            spec.ranges.delay = parse_range(value, line_no, key);
        } else if (key == "jitter") {
            spec.ranges.jitter = parse_range(value, line_no, key);
        } else if (key == "loss") {
            spec.ranges.loss = parse_range(value, line_no, key);
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown generate key: " + key);
        }
    }
}

void apply_qos(QosRequirement& qos, const std::vector<std::string>& tokens, int line_no) {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto [key, value] = split_kv(tokens[i], line_no);
        if (key == "demand") {
            qos.required_bandwidth = parse_number(value, line_no, key);
        } else if (key == "max_delay") {
            qos.max_delay = parse_number(value, line_no, key);
        } else if (key == "max_jitter") {
            qos.max_jitter = parse_number(value, line_no, key);
        } else if (key == "max_loss") {
            qos.max_loss = parse_number(value, line_no, key);
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown qos key: " + key);
        }
    }
}

void apply_ga(GaConfig& ga, const std::vector<std::string>& tokens, int line_no) {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto [key, value] = split_kv(tokens[i], line_no);
        if (key == "population") {
            ga.population_size = parse_count(value, line_no, key);
        } else if (key == "generations") {
            ga.max_generations = parse_count(value, line_no, key);
        } else if (key == "crossover") {
            ga.crossover_probability = parse_number(value, line_no, key);
        } else if (key == "mutation") {
            ga.mutation_probability = parse_number(value, line_no, key);
        } else if (key == "pool") {
            ga.initial_pool_size = parse_count(value, line_no, key);
        } else if (key == "seed") {
            ga.seed = parse_u64(value, line_no, key);
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown ga key: " + key);
        }
    }
}

void apply_sa(SaConfig& sa, const std::vector<std::string>& tokens, int line_no) {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto [key, value] = split_kv(tokens[i], line_no);
        if (key == "temperature") {
            sa.initial_temperature = parse_number(value, line_no, key);
        } else if (key == "stop") {
            sa.stop_temperature = parse_number(value, line_no, key);
        } else if (key == "inner") {
            sa.inner_iterations = parse_count(value, line_no, key);
        } else if (key == "alpha") {
            sa.cooling_factor = parse_number(value, line_no, key);
        } else if (key == "stall") {
            sa.stall_limit = parse_count(value, line_no, key);
        } else if (key == "seed") {
            sa.seed = parse_u64(value, line_no, key);
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown sa key: " + key);
        }
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (trial_count < 1) {
        throw ValidationError("trial_count must be >= 1");
    }
    ga.validate();
    sa.validate();
    if (topology.kind == TopologySource::Kind::Generate) {
        const GeneratorSpec& spec = topology.generate;
        if (spec.node_count < 2) {
            throw ValidationError("generator needs nodes >= 2");
        }
        if (!(spec.edge_probability > 0.0) || spec.edge_probability > 1.0) {
            throw ValidationError("generator edge_prob must be in (0, 1]");
        }
        auto check = [](const MetricRange& r, const char* name, double lo, double hi) {
            if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max ||
                r.min < lo || r.max > hi) {
                throw ValidationError(std::string("generator range '") + name +
                                      "' out of bounds");
            }
        };
        check(spec.ranges.utility, "utility", 0.0, std::numeric_limits<double>::max());
        check(spec.ranges.delay, "delay", 0.0, std::numeric_limits<double>::max());
        check(spec.ranges.jitter, "jitter", 0.0, std::numeric_limits<double>::max());
        check(spec.ranges.loss, "loss", 0.0, 1.0);
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& stanza = tokens[0];
        if (stanza == "topology") {
            apply_topology(cfg, tokens, line_no);
        } else if (stanza == "qos") {
            apply_qos(cfg.qos, tokens, line_no);
        } else if (stanza == "ga") {
            apply_ga(cfg.ga, tokens, line_no);
        } else if (stanza == "sa") {
            apply_sa(cfg.sa, tokens, line_no);
        } else if (stanza == "trials") {
            if (tokens.size() != 2) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": trials expects one count");
            }
            cfg.trial_count = static_cast<int>(parse_count(tokens[1], line_no, "trials"));
        } else if (stanza == "seed") {
            if (tokens.size() != 2) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": seed expects one value");
            }
            cfg.seed_base = parse_u64(tokens[1], line_no, "seed");
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown stanza: " + stanza);
        }
    }
    return cfg;
}

Topology resolve_topology(const TopologySource& source) {
    switch (source.kind) {
        case TopologySource::Kind::File: {
            std::ifstream in(source.path);
            if (!in) {
                throw ParseError("cannot open topology file: " + source.path);
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            return load_topology(buffer.str());
        }
        case TopologySource::Kind::Generate: {
            const GeneratorSpec& spec = source.generate;
            return random_topology(spec.node_count, spec.edge_probability,
                                   spec.ranges, spec.seed);
        }
        case TopologySource::Kind::None:
            break;
    }
    throw ValidationError("no topology source configured");
}

const std::vector<int>& comparison_budgets() {
    static const std::vector<int> budgets{1, 2, 3, 5, 8, 13};
    return budgets;
}

namespace {

TrialOutcome run_trial(const Topology& topology, const ExperimentConfig& config,
                       const Chromosome& exact_best, int budget, int trial) {
    TrialOutcome outcome;
    outcome.trial = trial;
    outcome.seed = config.seed_base + static_cast<std::uint64_t>(trial);

    GaConfig ga = config.ga;
    ga.seed = outcome.seed;
    ga.max_generations = static_cast<std::size_t>(budget);
    GaResult ga_result = run_ga(topology, config.qos, ga);
    outcome.ga_path = ga_result.best;
    outcome.ga_matched = ga_result.best == exact_best;

    std::size_t cap = config.ga.population_size * static_cast<std::size_t>(budget);
    // The SA schedule is untouched; the shared axis only caps how many
    // candidate evaluations it may spend.
    SaConfig sa = config.sa;
    sa.seed = outcome.seed;
    SaResult sa_result = run_sa(topology, config.qos, sa, cap);
    outcome.sa_path = sa_result.best;
    outcome.sa_matched = sa_result.best == exact_best;
    outcome.sa_steps = static_cast<int>(sa_result.trace.size());
    return outcome;
}

}  // namespace

ComparisonReport run_comparison(const Topology& topology,
                                const ExperimentConfig& config, int threads) {
    config.validate();
    if (threads < 0) {
        throw ValidationError("threads must be >= 0");
    }

    PathCatalog catalog = enumerate_paths(topology, config.qos);
    const CatalogRow& best = exact_optimum(catalog);

    ComparisonReport report;
    report.exact_best = best.path;
    report.exact_ab = best.ab;
    report.trial_count = config.trial_count;

    const std::vector<int>& budgets = comparison_budgets();
    const int budget_count = static_cast<int>(budgets.size());
    const int total = budget_count * config.trial_count;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(total));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(total));

    auto task = [&](int index) {
        try {
            int budget = budgets[static_cast<std::size_t>(index / config.trial_count)];
            int trial = index % config.trial_count;
            outcomes[static_cast<std::size_t>(index)] =
                run_trial(topology, config, report.exact_best, budget, trial);
        } catch (...) {
            errors[static_cast<std::size_t>(index)] = std::current_exception();
        }
    };

    if (threads == 1) {
        for (int index = 0; index < total; ++index) task(index);
    } else {
#ifdef _OPENMP
        int requested = threads == 0 ? omp_get_max_threads() : threads;
#pragma omp parallel for schedule(dynamic) num_threads(requested)
        for (int index = 0; index < total; ++index) task(index);
#else
        for (int index = 0; index < total; ++index) task(index);
#endif
    }

    for (const std::exception_ptr& error : errors) {
        if (error) std::rethrow_exception(error);
    }

    for (int bi = 0; bi < budget_count; ++bi) {
        BudgetPoint point;
        point.generations = budgets[static_cast<std::size_t>(bi)];
        point.evaluations =
            static_cast<int>(config.ga.population_size) * point.generations;
        int ga_hits = 0;
        int sa_hits = 0;
        for (int trial = 0; trial < config.trial_count; ++trial) {
            const TrialOutcome& outcome =
                outcomes[static_cast<std::size_t>(bi * config.trial_count + trial)];
            ga_hits += outcome.ga_matched ? 1 : 0;
            sa_hits += outcome.sa_matched ? 1 : 0;
            point.trials.push_back(outcome);
        }
        point.ga_match_rate = static_cast<double>(ga_hits) / config.trial_count;
        point.sa_match_rate = static_cast<double>(sa_hits) / config.trial_count;
        report.points.push_back(std::move(point));
    }
    return report;
}

std::string comparison_csv(const ComparisonReport& report,
                           const ExperimentConfig& config) {
    std::ostringstream out;
    out << "# compare trials=" << report.trial_count << " seed=" << config.seed_base
        << " population=" << config.ga.population_size << '\n';
    out << "# exact_optimum " << report.exact_best.text()
        << " ab=" << format_double(report.exact_ab) << '\n';
    out << "generations,evaluations,ga_match_rate,sa_match_rate\n";
    for (const BudgetPoint& point : report.points) {
        out << point.generations << ',' << point.evaluations << ','
            << format_double(point.ga_match_rate) << ','
            << format_double(point.sa_match_rate) << '\n';
    }
    return out.str();
}

nlohmann::json comparison_json(const ComparisonReport& report,
                               const ExperimentConfig& config) {
    nlohmann::json points = nlohmann::json::array();
    for (const BudgetPoint& point : report.points) {
        nlohmann::json trials = nlohmann::json::array();
        for (const TrialOutcome& outcome : point.trials) {
            trials.push_back(nlohmann::json{{"trial", outcome.trial},
                                            {"seed", outcome.seed},
                                            {"ga_path", outcome.ga_path.text()},
                                            {"ga_matched", outcome.ga_matched},
                                            {"sa_path", outcome.sa_path.text()},
                                            {"sa_matched", outcome.sa_matched},
                                            {"sa_steps", outcome.sa_steps}});
        }
        points.push_back(nlohmann::json{{"generations", point.generations},
                                        {"evaluations", point.evaluations},
                                        {"ga_match_rate", point.ga_match_rate},
                                        {"sa_match_rate", point.sa_match_rate},
                                        {"trials", trials}});
    }
    return nlohmann::json{
        {"algorithm", "compare"},
        {"config", {{"trials", report.trial_count}, {"seed", config.seed_base}}},
        {"exact_optimum",
         {{"path", report.exact_best.text()}, {"ab", report.exact_ab}}},
        {"points", points}};
}

}  // namespace qospath
