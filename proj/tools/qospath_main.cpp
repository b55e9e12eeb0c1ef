#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qospath/errors.hpp"
#include "qospath/experiment.hpp"
#include "qospath/format.hpp"
#include "qospath/ga.hpp"
#include "qospath/oracle.hpp"
#include "qospath/report.hpp"
#include "qospath/sa.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qospath;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

struct CommonOptions {
    std::string topology_path;
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 0;
    CLI::Option* seed_option = nullptr;

    bool seed_given() const { return seed_option != nullptr && seed_option->count() > 0; }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--topology", opts.topology_path, "Topology file to load");
    cmd->add_option("--config", opts.config_path, "Experiment config file");
    opts.seed_option = cmd->add_option("--seed", opts.seed, "RNG seed override");
    cmd->add_option("--out", opts.out_dir, "Directory for report files");
    cmd->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path write_report(const std::string& out_dir, const std::string& name,
                      const std::string& content) {
    fs::create_directories(out_dir);
    fs::path target = fs::path(out_dir) / name;
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("cannot write report file: " + target.string());
    }
    std::cerr << "wrote " << target.string() << '\n';
    return target;
}

// Config file first, then flag overrides on top.
ExperimentConfig load_experiment(const CommonOptions& opts) {
    ExperimentConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = parse_config(read_file(opts.config_path));
    }
    if (!opts.topology_path.empty()) {
        cfg.topology.kind = TopologySource::Kind::File;
        cfg.topology.path = opts.topology_path;
    }
    return cfg;
}

int cmd_run_ga(const CommonOptions& opts) {
    ExperimentConfig cfg = load_experiment(opts);
    if (opts.seed_given()) {
        cfg.ga.seed = opts.seed;
    }
    Topology topology = resolve_topology(cfg.topology);
    GaResult result = run_ga(topology, cfg.qos, cfg.ga);
    if (opts.format == "json") {
        write_report(opts.out_dir, "ga_report.json",
                     ga_report_json(result, cfg.ga).dump(2) + "\n");
    } else {
        write_report(opts.out_dir, "generations.csv",
                     generations_csv(result.generations, cfg.ga));
    }
    if (result.low_confidence) {
        std::cerr << "warning: winner selection probability "
                  << format_double(result.winner_probability) << " is below 0.5\n";
    }
    std::cout << result.best.text() << '\n';
    return kExitOk;
}

int cmd_run_sa(const CommonOptions& opts) {
    ExperimentConfig cfg = load_experiment(opts);
    if (opts.seed_given()) {
        cfg.sa.seed = opts.seed;
    }
    Topology topology = resolve_topology(cfg.topology);
    SaResult result = run_sa(topology, cfg.qos, cfg.sa);
    if (opts.format == "json") {
        write_report(opts.out_dir, "sa_report.json",
                     sa_report_json(result, cfg.sa).dump(2) + "\n");
    } else {
        write_report(opts.out_dir, "sa_trace.csv", sa_trace_csv(result, cfg.sa));
    }
    std::cout << result.best.text() << '\n';
    return kExitOk;
}

int cmd_compare(const CommonOptions& opts, int threads) {
    ExperimentConfig cfg = load_experiment(opts);
    if (opts.seed_given()) {
        cfg.seed_base = opts.seed;
    }
    Topology topology = resolve_topology(cfg.topology);
    ComparisonReport report = run_comparison(topology, cfg, threads);
    if (opts.format == "json") {
        write_report(opts.out_dir, "comparison.json",
                     comparison_json(report, cfg).dump(2) + "\n");
    } else {
        write_report(opts.out_dir, "comparison.csv", comparison_csv(report, cfg));
    }
    std::cout << report.exact_best.text() << '\n';
    return kExitOk;
}

int cmd_oracle(const CommonOptions& opts) {
    ExperimentConfig cfg = load_experiment(opts);
    Topology topology = resolve_topology(cfg.topology);
    PathCatalog catalog = enumerate_paths(topology, cfg.qos);
    if (opts.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const CatalogRow& row : catalog.rows) {
            rows.push_back(nlohmann::json{{"chromosome", row.path.text()},
                                          {"ab", row.ab},
                                          {"fitness", row.fitness},
                                          {"nodes_visited", row.nodes_visited}});
        }
        write_report(opts.out_dir, "catalog.json",
                     nlohmann::json{{"rows", rows}}.dump(2) + "\n");
    } else {
        write_report(opts.out_dir, "catalog.csv", catalog_csv(catalog));
    }
    // Catalog lands on disk before this can throw on an all-infeasible graph.
    const CatalogRow& best = exact_optimum(catalog);
    std::cout << best.path.text() << '\n';
    return kExitOk;
}

int cmd_gen_topology(const CommonOptions& opts, const GeneratorSpec& flag_spec,
                     bool nodes_given, bool edge_prob_given) {
    ExperimentConfig cfg = load_experiment(opts);
    GeneratorSpec spec = cfg.topology.kind == TopologySource::Kind::Generate
                             ? cfg.topology.generate
                             : GeneratorSpec{};
    if (nodes_given) {
        spec.node_count = flag_spec.node_count;
    }
    if (edge_prob_given) {
        spec.edge_probability = flag_spec.edge_probability;
    }
    if (opts.seed_given()) {
        spec.seed = opts.seed;
    }
    cfg.topology.kind = TopologySource::Kind::Generate;
    cfg.topology.generate = spec;
    cfg.validate();
    Topology topology = resolve_topology(cfg.topology);
    write_report(opts.out_dir, "topology.txt", serialize(topology));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QoS-aware path selection: genetic-algorithm and simulated-annealing "
                 "optimizers with a brute-force oracle"};
    app.require_subcommand(1);

    CommonOptions ga_opts;
    CLI::App* run_ga_cmd =
        app.add_subcommand("run-ga", "Run the genetic algorithm and report generations");
    add_common(run_ga_cmd, ga_opts);

    CommonOptions sa_opts;
    CLI::App* run_sa_cmd =
        app.add_subcommand("run-sa", "Run simulated annealing and report the trace");
    add_common(run_sa_cmd, sa_opts);

    CommonOptions compare_opts;
    int threads = 1;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Sweep iteration budgets and score both optimizers against the oracle");
    add_common(compare_cmd, compare_opts);
    compare_cmd->add_option("--threads", threads,
                            "Trial workers: 1 serial, 0 all cores, n fixed");

    CommonOptions oracle_opts;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "Enumerate every simple path and print the optimum");
    add_common(oracle_cmd, oracle_opts);

    CommonOptions gen_opts;
    GeneratorSpec flag_spec;
    CLI::App* gen_cmd =
        app.add_subcommand("gen-topology", "Write a seeded random connected topology");
    add_common(gen_cmd, gen_opts);
    CLI::Option* nodes_opt =
        gen_cmd->add_option("--nodes", flag_spec.node_count, "Node count");
    CLI::Option* edge_prob_opt = gen_cmd->add_option(
        "--edge-prob", flag_spec.edge_probability, "Extra-link probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (run_ga_cmd->parsed()) {
            return cmd_run_ga(ga_opts);
        }
        if (run_sa_cmd->parsed()) {
            return cmd_run_sa(sa_opts);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(compare_opts, threads);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(oracle_opts);
        }
        if (gen_cmd->parsed()) {
            return cmd_gen_topology(gen_opts, flag_spec, nodes_opt->count() > 0,
                                    edge_prob_opt->count() > 0);
        }
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
