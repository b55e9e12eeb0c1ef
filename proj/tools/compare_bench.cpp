#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qospath/experiment.hpp"
#include "qospath/format.hpp"

using namespace qospath;

namespace {

double best_of(int repeats, int threads, const Topology& topology,
               const ExperimentConfig& cfg, ComparisonReport& out) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        auto start = std::chrono::steady_clock::now();
        out = run_comparison(topology, cfg, threads);
        auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Times the comparison sweep serial vs parallel and checks the "
                 "reports are identical"};
    int nodes = 10;
    int trials = 100;
    int repeats = 3;
    std::uint64_t seed = 11;
    double edge_prob = 0.35;
    app.add_option("--nodes", nodes, "Topology size");
    app.add_option("--trials", trials, "Trials per budget point");
    app.add_option("--repeats", repeats, "Timed repetitions, best taken");
    app.add_option("--seed", seed, "Topology and trial seed");
    app.add_option("--edge-prob", edge_prob, "Extra-link probability");
    CLI11_PARSE(app, argc, argv);

    ExperimentConfig cfg;
    cfg.trial_count = trials;
    cfg.seed_base = seed;
    cfg.topology.kind = TopologySource::Kind::Generate;
    cfg.topology.generate.node_count = nodes;
    cfg.topology.generate.edge_probability = edge_prob;
    cfg.topology.generate.seed = seed;

    Topology topology = resolve_topology(cfg.topology);

    ComparisonReport serial_report;
    ComparisonReport parallel_report;
    double serial_time = best_of(repeats, 1, topology, cfg, serial_report);
    double parallel_time = best_of(repeats, 0, topology, cfg, parallel_report);

    std::string serial_bytes = comparison_json(serial_report, cfg).dump();
    std::string parallel_bytes = comparison_json(parallel_report, cfg).dump();
    if (serial_bytes != parallel_bytes) {
        std::cerr << "FAIL: parallel report differs from serial reference\n";
        return 1;
    }

    std::cout << "serial reference: " << format_double(serial_time) << " s\n";
    std::cout << "parallel:         " << format_double(parallel_time) << " s\n";
    std::cout << "speedup:          " << format_double(serial_time / parallel_time)
              << "x\n";
    std::cout << "reports identical across schedules\n";
    return 0;
}
