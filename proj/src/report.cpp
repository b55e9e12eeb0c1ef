#include "qospath/report.hpp"

#include <sstream>

#include "qospath/format.hpp"

namespace qospath {

std::string ga_config_line(const GaConfig& cfg) {
    std::ostringstream out;
    out << "# ga population=" << cfg.population_size
        << " generations=" << cfg.max_generations
        << " crossover=" << format_double(cfg.crossover_probability)
        << " mutation=" << format_double(cfg.mutation_probability)
        << " pool=" << cfg.initial_pool_size << " seed=" << cfg.seed;
    return out.str();
}

std::string sa_config_line(const SaConfig& cfg) {
    std::ostringstream out;
    out << "# sa temperature=" << format_double(cfg.initial_temperature)
        << " stop=" << format_double(cfg.stop_temperature)
        << " inner=" << cfg.inner_iterations
        << " alpha=" << format_double(cfg.cooling_factor)
        << " stall=" << cfg.stall_limit << " seed=" << cfg.seed;
    return out.str();
}

std::string generations_csv(const std::vector<GenerationReport>& generations,
                            const GaConfig& cfg) {
    std::ostringstream out;
    out << ga_config_line(cfg) << '\n';
    out << "generation,chromosome,ab,fitness,nodes_visited,selection_probability\n";
    for (const GenerationReport& gen : generations) {
        for (const FitnessRow& row : gen.rows) {
            out << gen.generation_index << ',' << row.chromosome.text() << ','
                << format_double(row.ab) << ',' << format_double(row.fitness) << ','
                << row.nodes_visited << ','
                << format_double(row.selection_probability) << '\n';
        }
    }
    return out.str();
}

namespace {

nlohmann::json row_json(const FitnessRow& row) {
    return nlohmann::json{{"chromosome", row.chromosome.text()},
                          {"ab", row.ab},
                          {"fitness", row.fitness},
                          {"nodes_visited", row.nodes_visited},
                          {"selection_probability", row.selection_probability}};
}

nlohmann::json operator_json(const OperatorRecord& rec) {
    return nlohmann::json{{"op", rec.op},
                          {"parents", rec.parents},
                          {"produced", rec.produced},
                          {"kept", rec.kept},
                          {"mutated", rec.mutated},
                          {"fell_back", rec.fell_back}};
}

}  // namespace

nlohmann::json ga_report_json(const GaResult& result, const GaConfig& cfg) {
    nlohmann::json generations = nlohmann::json::array();
    for (const GenerationReport& gen : result.generations) {
        nlohmann::json rows = nlohmann::json::array();
        for (const FitnessRow& row : gen.rows) rows.push_back(row_json(row));
        nlohmann::json ops = nlohmann::json::array();
        for (const OperatorRecord& rec : gen.operator_log) {
            ops.push_back(operator_json(rec));
        }
        generations.push_back(nlohmann::json{{"generation", gen.generation_index},
                                             {"rows", rows},
                                             {"operators", ops}});
    }
    return nlohmann::json{
        {"algorithm", "ga"},
        {"config",
         {{"population", cfg.population_size},
          {"generations", cfg.max_generations},
          {"crossover", cfg.crossover_probability},
          {"mutation", cfg.mutation_probability},
          {"pool", cfg.initial_pool_size},
          {"seed", cfg.seed}}},
        {"selected_path", result.best.text()},
        {"winner_probability", result.winner_probability},
        {"low_confidence", result.low_confidence},
        {"generations", generations}};
}

std::string sa_trace_csv(const SaResult& result, const SaConfig& cfg) {
    std::ostringstream out;
    out << sa_config_line(cfg) << '\n';
    out << "current,candidate,delta,stall_remaining,temperature,accepted\n";
    for (const SaTraceRow& row : result.trace) {
        out << row.current.text() << ',' << row.candidate.text() << ','
            << format_double(row.delta) << ',' << row.stall_remaining << ','
            << format_double(row.temperature) << ','
            << (row.accepted ? "true" : "false") << '\n';
    }
    return out.str();
}

nlohmann::json sa_report_json(const SaResult& result, const SaConfig& cfg) {
    nlohmann::json trace = nlohmann::json::array();
    for (const SaTraceRow& row : result.trace) {
        trace.push_back(nlohmann::json{{"current", row.current.text()},
                                       {"candidate", row.candidate.text()},
                                       {"delta", row.delta},
                                       {"stall_remaining", row.stall_remaining},
                                       {"temperature", row.temperature},
                                       {"accepted", row.accepted}});
    }
    return nlohmann::json{
        {"algorithm", "sa"},
        {"config",
         {{"temperature", cfg.initial_temperature},
          {"stop", cfg.stop_temperature},
          {"inner", cfg.inner_iterations},
          {"alpha", cfg.cooling_factor},
          {"stall", cfg.stall_limit},
          {"seed", cfg.seed}}},
        {"selected_path", result.best.text()},
        {"best_objective", result.best_objective},
        {"final_state", result.final_state.text()},
        {"final_objective", result.final_objective},
        {"visited_temperatures", result.visited_temperatures},
        {"trace", trace}};
}

}  // namespace qospath
