#include "qospath/ga.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "qospath/errors.hpp"

namespace qospath {

void GaConfig::validate() const {
    if (population_size < 2) {
        throw ValidationError("ga: population_size must be >= 2");
    }
    if (max_generations < 1) {
        throw ValidationError("ga: max_generations must be >= 1");
    }
    if (crossover_probability < 0.0 || crossover_probability > 1.0) {
        throw ValidationError("ga: crossover_probability must be in [0,1]");
    }
    if (mutation_probability < 0.0 || mutation_probability > 1.0) {
        throw ValidationError("ga: mutation_probability must be in [0,1]");
    }
    if (initial_pool_size < 1) {
        throw ValidationError("ga: initial_pool_size must be >= 1");
    }
}

std::vector<FitnessRow> fitness_table(const std::vector<Chromosome>& population,
                                      const Topology& t, const QosRequirement& req) {
    std::vector<FitnessRow> rows;
    rows.reserve(population.size());
    double ab_total = 0.0;
    for (const auto& c : population) {
        FitnessRow row;
        row.chromosome = c;
        row.ab = bottleneck_ab(t, c, req);
        row.nodes_visited = hop_count(c);
        ab_total += std::max(row.ab, 0.0);
        rows.push_back(std::move(row));
    }
    for (auto& row : rows) {
        row.fitness = ab_total > 0.0 ? std::max(row.ab, 0.0) / ab_total : 0.0;
    }
    double fitness_total = 0.0;
    for (const auto& row : rows) {
        fitness_total += row.fitness;
    }
    for (auto& row : rows) {
        row.selection_probability =
            fitness_total > 0.0 ? row.fitness / fitness_total : 0.0;
    }
    return rows;
}

const FitnessRow& roulette_select(const std::vector<FitnessRow>& rows, Rng& rng) {
    double total = 0.0;
    for (const auto& row : rows) {
        total += row.selection_probability;
    }
    if (!(total > 0.0)) {
        throw InfeasibleError("roulette selection over a degenerate population: "
                              "every selection probability is zero");
    }
    double pick = rng.uniform01() * total;
    double cumulative = 0.0;
    const FitnessRow* last_positive = nullptr;
    for (const auto& row : rows) {
        if (row.selection_probability <= 0.0) {
            continue;
        }
        last_positive = &row;
        cumulative += row.selection_probability;
        if (pick < cumulative) {
            return row;
        }
    }
    return *last_positive;  // rounding pushed pick past the last slice
}

namespace {

std::vector<NodeId> intermediates(const Chromosome& c) {
    if (c.nodes.size() <= 2) {
        return {};
    }
    return {c.nodes.begin() + 1, c.nodes.end() - 1};
}

void keep_or_discard(Chromosome&& offspring, const Topology& t,
                     std::vector<Chromosome>& kept, std::vector<Chromosome>* discarded) {
    if (is_valid(t, offspring)) {
        kept.push_back(std::move(offspring));
    } else if (discarded != nullptr) {
        discarded->push_back(std::move(offspring));
    }
}

}  // namespace

std::vector<Chromosome> single_point_at(const Chromosome& a, const Chromosome& b,
                                        NodeId site, const Topology& t,
                                        std::vector<Chromosome>* discarded) {
    auto cut_a = std::find(a.nodes.begin(), a.nodes.end(), site);
    auto cut_b = std::find(b.nodes.begin(), b.nodes.end(), site);

    Chromosome first;
    first.nodes.assign(a.nodes.begin(), cut_a + 1);
    first.nodes.insert(first.nodes.end(), cut_b + 1, b.nodes.end());
    Chromosome second;
    second.nodes.assign(b.nodes.begin(), cut_b + 1);
    second.nodes.insert(second.nodes.end(), cut_a + 1, a.nodes.end());

    std::vector<Chromosome> kept;
    keep_or_discard(std::move(first), t, kept, discarded);
    keep_or_discard(std::move(second), t, kept, discarded);
    return kept;
}

std::vector<Chromosome> single_point_crossover(const Chromosome& a, const Chromosome& b,
                                               Rng& rng, const Topology& t,
                                               std::vector<Chromosome>* discarded) {
    std::unordered_set<NodeId> in_b;
    for (NodeId v : intermediates(b)) {
        in_b.insert(v);
    }
    std::vector<NodeId> common;
    for (NodeId v : intermediates(a)) {
        if (in_b.count(v) != 0) {
            common.push_back(v);
        }
    }
    if (common.empty()) {
        return {};
    }
    NodeId site = common[rng.below(common.size())];
    return single_point_at(a, b, site, t, discarded);
}

namespace {

// Replace a's [from..to] segment with the replacement segment, then drop any
// outside node the new segment already carries.
Chromosome splice_segment(const Chromosome& a, std::size_t from, std::size_t to,
                          const std::vector<NodeId>& replacement) {
    std::unordered_set<NodeId> in_segment(replacement.begin(), replacement.end());
    Chromosome out;
    for (std::size_t i = 0; i < from; ++i) {
        if (in_segment.count(a.nodes[i]) == 0) {
            out.nodes.push_back(a.nodes[i]);
        }
    }
    out.nodes.insert(out.nodes.end(), replacement.begin(), replacement.end());
    for (std::size_t i = to + 1; i < a.nodes.size(); ++i) {
        if (in_segment.count(a.nodes[i]) == 0) {
            out.nodes.push_back(a.nodes[i]);
        }
    }
    return out;
}

}  // namespace

std::vector<Chromosome> pmx_at(const Chromosome& a, const Chromosome& b,
                               NodeId first_site, NodeId second_site, const Topology& t,
                               std::vector<Chromosome>* discarded) {
    auto index_of = [](const Chromosome& c, NodeId v) {
        return static_cast<std::size_t>(
            std::find(c.nodes.begin(), c.nodes.end(), v) - c.nodes.begin());
    };
    std::size_t a0 = index_of(a, first_site), a1 = index_of(a, second_site);
    std::size_t b0 = index_of(b, first_site), b1 = index_of(b, second_site);

    std::vector<NodeId> segment_a(a.nodes.begin() + a0, a.nodes.begin() + a1 + 1);
    std::vector<NodeId> segment_b(b.nodes.begin() + b0, b.nodes.begin() + b1 + 1);

    std::vector<Chromosome> kept;
    keep_or_discard(splice_segment(a, a0, a1, segment_b), t, kept, discarded);
    keep_or_discard(splice_segment(b, b0, b1, segment_a), t, kept, discarded);
    return kept;
}

std::vector<Chromosome> pmx_crossover(const Chromosome& a, const Chromosome& b,
                                      Rng& rng, const Topology& t,
                                      std::vector<Chromosome>* discarded) {
    std::unordered_map<NodeId, std::size_t> pos_b;
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        pos_b[b.nodes[i]] = i;
    }
    // Common nodes in a's order; a site pair must keep the same relative
    // order in both parents.
    std::vector<NodeId> common;
    std::vector<std::size_t> common_pos_b;
    for (NodeId v : a.nodes) {
        auto it = pos_b.find(v);
        if (it != pos_b.end()) {
            common.push_back(v);
            common_pos_b.push_back(it->second);
        }
    }
    std::vector<std::pair<NodeId, NodeId>> site_pairs;
    for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
            if (common_pos_b[i] < common_pos_b[j]) {
                site_pairs.emplace_back(common[i], common[j]);
            }
        }
    }
    if (site_pairs.empty()) {
        return {};
    }
    auto [first_site, second_site] = site_pairs[rng.below(site_pairs.size())];
    return pmx_at(a, b, first_site, second_site, t, discarded);
}

Chromosome insertion_mutation(const Chromosome& c, Rng& rng, const Topology& t) {
    std::size_t pair_index = rng.below(c.nodes.size() - 1);
    NodeId u = c.nodes[pair_index];
    NodeId w = c.nodes[pair_index + 1];

    std::vector<char> on_path(static_cast<std::size_t>(t.node_count()), 0);
    for (NodeId v : c.nodes) {
        on_path[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<NodeId> candidates;
    for (const auto& [v, metrics] : t.neighbors(u)) {
        if (!on_path[static_cast<std::size_t>(v)] && t.find_link(v, w) != nullptr) {
            candidates.push_back(v);
        }
    }
    if (candidates.empty()) {
        return c;
    }
    NodeId inserted = candidates[rng.below(candidates.size())];
    Chromosome out = c;
    out.nodes.insert(out.nodes.begin() + static_cast<std::ptrdiff_t>(pair_index) + 1,
                     inserted);
    return out;
}

namespace {

// Elitism order: highest fitness, then fewer nodes visited, then text.
bool elite_before(const FitnessRow& a, const FitnessRow& b) {
    if (a.fitness != b.fitness) {
        return a.fitness > b.fitness;
    }
    if (a.nodes_visited != b.nodes_visited) {
        return a.nodes_visited < b.nodes_visited;
    }
    return text_less(a.chromosome, b.chromosome);
}

}  // namespace

GenerationReport evolve_generation(const GenerationReport& current, const GaConfig& cfg,
                                   const Topology& t, const QosRequirement& req, Rng& rng) {
    const auto& rows = current.rows;
    GenerationReport next;
    next.generation_index = current.generation_index + 1;

    std::vector<Chromosome> population;
    const FitnessRow& elite = *std::min_element(rows.begin(), rows.end(), elite_before);
    population.push_back(elite.chromosome);
    {
        OperatorRecord rec;
        rec.op = "elitism";
        rec.parents = {elite.chromosome.text()};
        rec.produced = {elite.chromosome.text()};
        rec.kept = {true};
        rec.mutated = {false};
        next.operator_log.push_back(std::move(rec));
    }

    while (population.size() < cfg.population_size) {
        const FitnessRow& parent_a = roulette_select(rows, rng);
        const FitnessRow* parent_b = nullptr;
        for (int tries = 0; tries < 20; ++tries) {
            const FitnessRow& draw = roulette_select(rows, rng);
            if (!(draw.chromosome == parent_a.chromosome)) {
                parent_b = &draw;
                break;
            }
        }

        OperatorRecord rec;
        std::vector<Chromosome> candidates;
        std::vector<Chromosome> discarded;
        if (parent_b != nullptr && rng.chance(cfg.crossover_probability)) {
            bool both_long = parent_a.chromosome.size() >= 4 && parent_b->chromosome.size() >= 4;
            if (both_long) {
                rec.op = "pmx";
                candidates = pmx_crossover(parent_a.chromosome, parent_b->chromosome, rng, t,
                                           &discarded);
            } else {
                rec.op = "single-point";
                candidates = single_point_crossover(parent_a.chromosome, parent_b->chromosome,
                                                    rng, t, &discarded);
            }
            rec.parents = {parent_a.chromosome.text(), parent_b->chromosome.text()};
        } else {
            rec.op = "selection";
            rec.parents = {parent_a.chromosome.text()};
        }
        for (const auto& c : discarded) {
            rec.produced.push_back(c.text());
            rec.kept.push_back(false);
            rec.mutated.push_back(false);
        }
        if (candidates.empty()) {
            rec.fell_back = rec.op != "selection";
            candidates.push_back(parent_a.chromosome);
        }

        for (auto& candidate : candidates) {
            if (population.size() >= cfg.population_size) {
                break;
            }
            bool mutated = false;
            if (rng.chance(cfg.mutation_probability)) {
                Chromosome shifted = insertion_mutation(candidate, rng, t);
                mutated = !(shifted == candidate);
                candidate = std::move(shifted);
            }
            rec.produced.push_back(candidate.text());
            rec.mutated.push_back(mutated);
            rec.kept.push_back(true);
            population.push_back(std::move(candidate));
        }
        next.operator_log.push_back(std::move(rec));
    }

    next.rows = fitness_table(population, t, req);
    return next;
}

const FitnessRow& final_path_selection(const std::vector<FitnessRow>& rows) {
    const FitnessRow* winner = nullptr;
    for (const auto& row : rows) {
        if (!(row.fitness > 0.0)) {
            continue;
        }
        if (winner == nullptr) {
            winner = &row;
            continue;
        }
        if (row.nodes_visited != winner->nodes_visited) {
            if (row.nodes_visited < winner->nodes_visited) {
                winner = &row;
            }
        } else if (row.selection_probability != winner->selection_probability) {
            if (row.selection_probability > winner->selection_probability) {
                winner = &row;
            }
        } else if (text_less(row.chromosome, winner->chromosome)) {
            winner = &row;
        }
    }
    if (winner == nullptr) {
        throw InfeasibleError("no feasible path in the final population");
    }
    return *winner;
}

GaResult run_ga(const Topology& t, const QosRequirement& req, const GaConfig& cfg) {
    cfg.validate();
    Topology working = admissible_subgraph(t, req);
    Rng rng(cfg.seed);

    // Initial pool: initial_pool_size random walks, deduplicated, refilled
    // with up to 20 fresh draws before duplicates are let back in.
    std::vector<Chromosome> pool;
    auto push_unique = [&](Chromosome&& c) {
        if (std::find(pool.begin(), pool.end(), c) == pool.end()) {
            pool.push_back(std::move(c));
            return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < cfg.initial_pool_size; ++i) {
        push_unique(random_path(working, rng));
    }
    for (int attempt = 0; attempt < 20 && pool.size() < cfg.initial_pool_size; ++attempt) {
        push_unique(random_path(working, rng));
    }
    while (pool.size() < cfg.initial_pool_size) {
        pool.push_back(random_path(working, rng));
    }

    // Keep the best population_size of the pool.
    std::vector<FitnessRow> pool_rows = fitness_table(pool, working, req);
    std::stable_sort(pool_rows.begin(), pool_rows.end(), elite_before);
    std::vector<Chromosome> population;
    population.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) {
        population.push_back(pool_rows[i % pool_rows.size()].chromosome);
    }

    GaResult result;
    GenerationReport generation;
    generation.generation_index = 1;
    generation.rows = fitness_table(population, working, req);
    result.generations.push_back(std::move(generation));
    for (std::size_t g = 2; g <= cfg.max_generations; ++g) {
        result.generations.push_back(
            evolve_generation(result.generations.back(), cfg, working, req, rng));
    }

    const FitnessRow& winner = final_path_selection(result.generations.back().rows);
    result.best = winner.chromosome;
    result.winner_probability = winner.selection_probability;
    result.low_confidence = winner.selection_probability < 0.5;
    return result;
}

}  // namespace qospath
