#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qospath/ga.hpp"
#include "qospath/sa.hpp"

namespace qospath {

// Generation table, one row per population member:
// generation,chromosome,ab,fitness,nodes_visited,selection_probability
// A leading '#' line echoes the config the run used.
std::string generations_csv(const std::vector<GenerationReport>& generations,
                            const GaConfig& cfg);

nlohmann::json ga_report_json(const GaResult& result, const GaConfig& cfg);

// Annealing trace:
// current,candidate,delta,stall_remaining,temperature,accepted
std::string sa_trace_csv(const SaResult& result, const SaConfig& cfg);

nlohmann::json sa_report_json(const SaResult& result, const SaConfig& cfg);

std::string ga_config_line(const GaConfig& cfg);
std::string sa_config_line(const SaConfig& cfg);

}  // namespace qospath
