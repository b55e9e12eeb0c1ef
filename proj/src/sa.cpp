#include "qospath/sa.hpp"

#include <algorithm>
#include <cmath>

#include "qospath/errors.hpp"

namespace qospath {

void SaConfig::validate() const {
    if (!(initial_temperature > stop_temperature) || !(stop_temperature > 0.0)) {
        throw ValidationError("sa: need initial_temperature > stop_temperature > 0");
    }
    if (!(cooling_factor > 0.0) || !(cooling_factor < 1.0)) {
        throw ValidationError("sa: cooling_factor must be in (0,1)");
    }
    if (inner_iterations < 1) {
        throw ValidationError("sa: inner_iterations must be >= 1");
    }
    if (stall_limit < 1) {
        throw ValidationError("sa: stall_limit must be >= 1");
    }
}

SaObjective::SaObjective(std::vector<Chromosome> pool, const Topology& t,
                         const QosRequirement& req)
    : pool_(std::move(pool)), topology_(&t), requirement_(&req) {
    if (pool_.empty()) {
        throw ValidationError("sa objective needs a non-empty pool");
    }
    denominator_ = 0.0;
    for (const auto& c : pool_) {
        denominator_ += std::max(bottleneck_ab(t, c, req), 0.0);
    }
    if (!(denominator_ > 0.0)) {
        throw InfeasibleError("sa objective pool has no feasible member, "
                              "denominator would be zero");
    }
}

double SaObjective::operator()(const Chromosome& c) const {
    return std::max(bottleneck_ab(*topology_, c, *requirement_), 0.0) / denominator_;
}

double sa_objective(const Chromosome& c, const std::vector<Chromosome>& pool,
                    const Topology& t, const QosRequirement& req) {
    return SaObjective(pool, t, req)(c);
}

bool accept(double delta_f, double temperature, Rng& rng) {
    if (delta_f > 0.0) {
        return true;
    }
    return rng.uniform01() < std::exp(delta_f / temperature);
}

SaResult run_sa(const Topology& t, const QosRequirement& req, const SaConfig& cfg,
                std::size_t max_evaluations) {
    cfg.validate();
    Topology working = admissible_subgraph(t, req);
    Rng rng(cfg.seed);

    Chromosome state = neighbor(working, rng);

    // Freeze the objective pool: the initial state plus a short warm-up of
    // neighbor draws, distinct solutions only.
    std::vector<Chromosome> pool{state};
    std::size_t warm_up = std::max<std::size_t>(cfg.inner_iterations * 4, 8);
    for (std::size_t i = 0; i < warm_up; ++i) {
        Chromosome draw = neighbor(working, rng);
        if (std::find(pool.begin(), pool.end(), draw) == pool.end()) {
            pool.push_back(std::move(draw));
        }
    }
    SaObjective objective(std::move(pool), working, req);

    SaResult result;
    result.best = state;
    result.best_objective = objective(state);

    std::size_t stall_remaining = cfg.stall_limit;
    double temperature = cfg.initial_temperature;
    result.visited_temperatures.push_back(temperature);
    std::size_t evaluations = 0;
    bool capped = false;

    while (stall_remaining > 0 && temperature > cfg.stop_temperature && !capped) {
        for (std::size_t i = 0; i < cfg.inner_iterations; ++i) {
            if (max_evaluations > 0 && evaluations >= max_evaluations) {
                capped = true;
                break;
            }
            Chromosome candidate = neighbor(working, rng);
            double delta_f = delta(state, candidate, objective);
            bool accepted = accept(delta_f, temperature, rng);
            ++evaluations;

            SaTraceRow row;
            row.current = state;
            row.candidate = std::move(candidate);
            row.delta = delta_f;
            row.temperature = temperature;
            row.accepted = accepted;
            if (accepted) {
                state = row.candidate;
                stall_remaining = cfg.stall_limit;
                double value = objective(state);
                if (value > result.best_objective) {
                    result.best_objective = value;
                    result.best = state;
                }
            } else if (stall_remaining > 0) {
                --stall_remaining;
            }
            row.stall_remaining = stall_remaining;
            result.trace.push_back(std::move(row));
        }
        if (capped) {
            break;
        }
        temperature *= cfg.cooling_factor;
        result.visited_temperatures.push_back(temperature);
    }

    result.final_state = state;
    result.final_objective = objective(state);
    return result;
}

}  // namespace qospath
