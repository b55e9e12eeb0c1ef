#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "qospath/errors.hpp"
#include "qospath/ga.hpp"
#include "qospath/oracle.hpp"
#include "test_support.hpp"

using namespace qospath;

namespace {

QosRequirement open_req() {
    return QosRequirement{};
}

std::vector<FitnessRow> rows_for(const Topology& t, std::vector<std::vector<NodeId>> paths) {
    std::vector<Chromosome> population;
    for (auto& nodes : paths) {
        population.push_back(Chromosome{std::move(nodes)});
    }
    return fitness_table(population, t, open_req());
}

}  // namespace

TEST_CASE("config validation rejects out-of-range values") {
    GaConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    GaConfig small = cfg;
    small.population_size = 1;
    CHECK_THROWS_AS(small.validate(), ValidationError);
    GaConfig zero_gen = cfg;
    zero_gen.max_generations = 0;
    CHECK_THROWS_AS(zero_gen.validate(), ValidationError);
    GaConfig bad_cx = cfg;
    bad_cx.crossover_probability = 1.5;
    CHECK_THROWS_AS(bad_cx.validate(), ValidationError);
    GaConfig bad_mut = cfg;
    bad_mut.mutation_probability = -0.1;
    CHECK_THROWS_AS(bad_mut.validate(), ValidationError);
    GaConfig no_pool = cfg;
    no_pool.initial_pool_size = 0;
    CHECK_THROWS_AS(no_pool.validate(), ValidationError);
}

TEST_CASE("fitness of a lone feasible chromosome is one") {
    Topology t = testsupport::load_fixture("path3.txt");
    auto rows = rows_for(t, {{0, 1, 2}});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].fitness == 1.0);
    CHECK(rows[0].selection_probability == 1.0);
}

TEST_CASE("triangle population splits fitness 0.6 and 0.4") {
    Topology t = testsupport::load_fixture("triangle.txt");
    auto rows = rows_for(t, {{0, 1, 2}, {0, 2}});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].ab == 3.0);
    CHECK(rows[1].ab == 2.0);
    CHECK(rows[0].fitness == doctest::Approx(0.6));
    CHECK(rows[1].fitness == doctest::Approx(0.4));
    CHECK(rows[0].selection_probability == doctest::Approx(0.6));
    CHECK(rows[1].selection_probability == doctest::Approx(0.4));
}

TEST_CASE("infeasible members clamp to zero fitness") {
    // Utilities 4 and -1 after demand: 0-1-2 bottlenecks at 4, 0-2 at -1.
    Topology t(3, 0, 2,
               {{0, 1, {5.0, 0.0, 0.0, 0.0}},
                {0, 2, {0.0, 0.0, 0.0, 0.0}},
                {1, 2, {4.0, 0.0, 0.0, 0.0}}});
    QosRequirement req;
    req.required_bandwidth = 1.0;
    auto rows = fitness_table({Chromosome{{0, 1, 2}}, Chromosome{{0, 2}}}, t, req);
    CHECK(rows[0].fitness == 1.0);
    CHECK(rows[1].fitness == 0.0);
    CHECK(rows[1].ab == -1.0);
}

TEST_CASE("fitness and probability columns both sum to one") {
    Topology t = testsupport::load_fixture("tennode.txt");
    Rng rng(5);
    for (int round = 0; round < 100; ++round) {
        std::vector<Chromosome> population;
        for (int i = 0; i < 6; ++i) {
            population.push_back(random_path(t, rng));
        }
        auto rows = fitness_table(population, t, open_req());
        double f = 0.0, p = 0.0;
        for (const auto& row : rows) {
            f += row.fitness;
            p += row.selection_probability;
        }
        CHECK(f == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(p == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("roulette selection follows the probability weights") {
    Topology t = testsupport::load_fixture("triangle.txt");
    auto rows = rows_for(t, {{0, 1, 2}, {0, 2}});

    SUBCASE("single row always wins") {
        auto lone = rows_for(t, {{0, 2}});
        Rng rng(1);
        for (int i = 0; i < 100; ++i) {
            CHECK(roulette_select(lone, rng).chromosome.text() == "0-2");
        }
    }
    SUBCASE("zero-probability rows are never drawn") {
        Topology p3 = testsupport::load_fixture("path3.txt");
        QosRequirement req;
        req.required_bandwidth = 9.0;  // only links of utility 10 survive as ab 1
        auto mixed = fitness_table({Chromosome{{0, 1, 2}}}, p3, req);
        REQUIRE(mixed[0].selection_probability == 1.0);
    }
    SUBCASE("60/40 split over 100000 draws lands on the binomial band") {
        Rng rng(12345);
        int first = 0;
        for (int i = 0; i < 100000; ++i) {
            if (roulette_select(rows, rng).chromosome.text() == "0-1-2") {
                ++first;
            }
        }
        CHECK(first >= 59000);
        CHECK(first <= 61000);
    }
    SUBCASE("all-zero probabilities are degenerate") {
        QosRequirement req;
        req.required_bandwidth = 100.0;
        auto dead = fitness_table({Chromosome{{0, 1, 2}}, Chromosome{{0, 2}}}, t, req);
        Rng rng(3);
        CHECK_THROWS_AS(roulette_select(dead, rng), InfeasibleError);
    }
}

TEST_CASE("single point crossover splices at the shared node") {
    // Both offspring of the [0,1,2,5] x [0,3,2,4,5] splice stay edge-valid.
    Topology t(6, 0, 5,
               {{0, 1, {9, 0, 0, 0}},
                {1, 2, {9, 0, 0, 0}},
                {2, 5, {9, 0, 0, 0}},
                {0, 3, {9, 0, 0, 0}},
                {2, 3, {9, 0, 0, 0}},
                {2, 4, {9, 0, 0, 0}},
                {4, 5, {9, 0, 0, 0}}});
    Chromosome a{{0, 1, 2, 5}};
    Chromosome b{{0, 3, 2, 4, 5}};
    auto kept = single_point_at(a, b, 2, t);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].text() == "0-1-2-4-5");
    CHECK(kept[1].text() == "0-3-2-5");

    Rng rng(4);
    auto drawn = single_point_crossover(a, b, rng, t);
    REQUIRE(drawn.size() == 2);  // node 2 is the only common intermediate
    CHECK(drawn[0].text() == "0-1-2-4-5");
    CHECK(drawn[1].text() == "0-3-2-5");
}

TEST_CASE("crossover without a shared intermediate yields nothing") {
    Topology diamond(4, 0, 3,
                     {{0, 1, {9, 0, 0, 0}},
                      {1, 3, {9, 0, 0, 0}},
                      {0, 2, {9, 0, 0, 0}},
                      {2, 3, {9, 0, 0, 0}}});
    Rng rng(8);
    CHECK(single_point_crossover(Chromosome{{0, 1, 3}}, Chromosome{{0, 2, 3}}, rng, diamond)
              .empty());
}

TEST_CASE("invalid splices land in the discard list") {
    Topology t(4, 0, 3,
               {{0, 1, {9, 0, 0, 0}},
                {1, 2, {9, 0, 0, 0}},
                {2, 3, {9, 0, 0, 0}},
                {0, 2, {9, 0, 0, 0}},
                {1, 3, {9, 0, 0, 0}}});
    Chromosome a{{0, 1, 2, 3}};
    Chromosome b{{0, 2, 1, 3}};
    std::vector<Chromosome> discarded;
    auto kept = single_point_at(a, b, 1, t, &discarded);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].text() == "0-1-3");
    REQUIRE(discarded.size() == 1);
    CHECK(discarded[0].text() == "0-2-1-2-3");
}

TEST_CASE("pmx exchanges the segment between the sites") {
    Topology t(7, 0, 6,
               {{0, 1, {9, 0, 0, 0}},
                {1, 2, {9, 0, 0, 0}},
                {2, 3, {9, 0, 0, 0}},
                {3, 6, {9, 0, 0, 0}},
                {0, 4, {9, 0, 0, 0}},
                {2, 4, {9, 0, 0, 0}},
                {2, 5, {9, 0, 0, 0}},
                {3, 5, {9, 0, 0, 0}}});
    Chromosome a{{0, 1, 2, 3, 6}};
    Chromosome b{{0, 4, 2, 5, 3, 6}};
    auto kept = pmx_at(a, b, 2, 3, t);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].text() == "0-1-2-5-3-6");
    CHECK(kept[1].text() == "0-4-2-3-6");
}

TEST_CASE("parents sharing only endpoints swap whole bodies") {
    Topology diamond(4, 0, 3,
                     {{0, 1, {9, 0, 0, 0}},
                      {1, 3, {9, 0, 0, 0}},
                      {0, 2, {9, 0, 0, 0}},
                      {2, 3, {9, 0, 0, 0}}});
    Chromosome a{{0, 1, 3}};
    Chromosome b{{0, 2, 3}};
    Rng rng(2);
    auto kept = pmx_crossover(a, b, rng, diamond);
    REQUIRE(kept.size() == 2);
    std::set<std::string> got{kept[0].text(), kept[1].text()};
    CHECK(got == std::set<std::string>{"0-1-3", "0-2-3"});
}

TEST_CASE("insertion mutation lengthens the path by one when it can") {
    Topology triangle = testsupport::load_fixture("triangle.txt");
    Rng rng(6);
    Chromosome direct{{0, 2}};
    Chromosome grown = insertion_mutation(direct, rng, triangle);
    CHECK(grown.text() == "0-1-2");
    CHECK(grown.size() == direct.size() + 1);

    Chromosome full{{0, 1, 2}};
    CHECK(insertion_mutation(full, rng, triangle) == full);
}

TEST_CASE("operator outputs always validate") {
    Topology t = testsupport::load_fixture("tennode.txt");
    Rng rng(77);
    int produced = 0;
    for (int i = 0; i < 2000; ++i) {
        Chromosome a = random_path(t, rng);
        Chromosome b = random_path(t, rng);
        if (a == b) {
            continue;
        }
        for (const Chromosome& c : single_point_crossover(a, b, rng, t)) {
            REQUIRE(is_valid(t, c));
            ++produced;
        }
        for (const Chromosome& c : pmx_crossover(a, b, rng, t)) {
            REQUIRE(is_valid(t, c));
            ++produced;
        }
        Chromosome m = insertion_mutation(a, rng, t);
        REQUIRE(is_valid(t, m));
    }
    CHECK(produced > 0);
}

TEST_CASE("disabled operators reduce evolution to resampling") {
    Topology t = testsupport::load_fixture("tennode.txt");
    GaConfig cfg;
    cfg.crossover_probability = 0.0;
    cfg.mutation_probability = 0.0;
    Rng rng(21);
    std::vector<Chromosome> population;
    for (int i = 0; i < 5; ++i) {
        population.push_back(random_path(t, rng));
    }
    GenerationReport current;
    current.generation_index = 1;
    current.rows = fitness_table(population, t, open_req());
    GenerationReport next = evolve_generation(current, cfg, t, open_req(), rng);
    REQUIRE(next.rows.size() == cfg.population_size);
    CHECK(next.generation_index == 2);
    for (const auto& row : next.rows) {
        bool from_current =
            std::any_of(current.rows.begin(), current.rows.end(),
                        [&](const FitnessRow& r) { return r.chromosome == row.chromosome; });
        CHECK(from_current);
    }
}

TEST_CASE("a one-member population evolves by pure elitism") {
    Topology t = testsupport::load_fixture("path3.txt");
    GaConfig cfg;
    cfg.population_size = 1;
    Rng rng(3);
    GenerationReport current;
    current.generation_index = 1;
    current.rows = fitness_table({Chromosome{{0, 1, 2}}}, t, open_req());
    GenerationReport next = evolve_generation(current, cfg, t, open_req(), rng);
    REQUIRE(next.rows.size() == 1);
    CHECK(next.rows[0].chromosome == current.rows[0].chromosome);
}

TEST_CASE("unique-path topologies give the same answer every generation") {
    Topology t = testsupport::load_fixture("path3.txt");
    GaConfig cfg;
    cfg.seed = 11;
    GaResult result = run_ga(t, open_req(), cfg);
    CHECK(result.best.text() == "0-1-2");
    REQUIRE(result.generations.size() == cfg.max_generations);
    for (const auto& generation : result.generations) {
        for (const auto& row : generation.rows) {
            CHECK(row.chromosome.text() == "0-1-2");
        }
    }
}

TEST_CASE("triangle run answers with the minimum path rule") {
    Topology t = testsupport::load_fixture("triangle.txt");
    GaConfig cfg;
    cfg.seed = 13;
    GaResult result = run_ga(t, open_req(), cfg);
    CHECK(result.best.text() == "0-2");
    // Five rows over bottlenecks 2 and 3 cap any single row's share at 0.2.
    CHECK(result.winner_probability < 0.5);
    CHECK(result.low_confidence);
}

TEST_CASE("elitism keeps the best bottleneck from shrinking") {
    Topology t = testsupport::load_fixture("tennode.txt");
    QosRequirement req;
    req.required_bandwidth = 2.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CAPTURE(seed);
        GaConfig cfg;
        cfg.seed = seed;
        GaResult result = run_ga(t, req, cfg);
        double best_ab = -1e300;
        for (std::size_t g = 0; g < result.generations.size(); ++g) {
            const auto& rows = result.generations[g].rows;
            auto top = std::max_element(rows.begin(), rows.end(),
                                        [](const FitnessRow& a, const FitnessRow& b) {
                                            return a.ab < b.ab;
                                        });
            REQUIRE(top->ab >= best_ab);
            best_ab = top->ab;
            if (g + 1 < result.generations.size()) {
                // The elite row survives verbatim into the next generation.
                const auto& next_rows = result.generations[g + 1].rows;
                bool carried = std::any_of(
                    next_rows.begin(), next_rows.end(), [&](const FitnessRow& r) {
                        return r.chromosome == top->chromosome;
                    });
                REQUIRE(carried);
            }
        }
    }
}

TEST_CASE("every generation row validates and sums to one") {
    Topology t = testsupport::load_fixture("tennode.txt");
    GaConfig cfg;
    cfg.seed = 9;
    cfg.max_generations = 8;
    GaResult result = run_ga(t, open_req(), cfg);
    REQUIRE(result.generations.size() == 8);
    for (const auto& generation : result.generations) {
        REQUIRE(generation.rows.size() == cfg.population_size);
        double f = 0.0;
        for (const auto& row : generation.rows) {
            CHECK(is_valid(t, row.chromosome));
            f += row.fitness;
        }
        CHECK(f == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("a longer run extends a shorter one generation for generation") {
    Topology t = testsupport::load_fixture("tennode.txt");
    GaConfig short_cfg;
    short_cfg.seed = 31;
    short_cfg.max_generations = 3;
    GaConfig long_cfg = short_cfg;
    long_cfg.max_generations = 13;
    GaResult short_run = run_ga(t, open_req(), short_cfg);
    GaResult long_run = run_ga(t, open_req(), long_cfg);
    REQUIRE(long_run.generations.size() == 13);
    for (std::size_t g = 0; g < 3; ++g) {
        const auto& a = short_run.generations[g].rows;
        const auto& b = long_run.generations[g].rows;
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].chromosome == b[i].chromosome);
            CHECK(a[i].fitness == b[i].fitness);
        }
    }
}

TEST_CASE("runs are deterministic in the seed") {
    Topology t = testsupport::load_fixture("tennode.txt");
    GaConfig cfg;
    cfg.seed = 42;
    GaResult a = run_ga(t, open_req(), cfg);
    GaResult b = run_ga(t, open_req(), cfg);
    CHECK(a.best == b.best);
    REQUIRE(a.generations.size() == b.generations.size());
    for (std::size_t g = 0; g < a.generations.size(); ++g) {
        const auto& ra = a.generations[g].rows;
        const auto& rb = b.generations[g].rows;
        REQUIRE(ra.size() == rb.size());
        for (std::size_t i = 0; i < ra.size(); ++i) {
            CHECK(ra[i].chromosome == rb[i].chromosome);
            CHECK(ra[i].selection_probability == rb[i].selection_probability);
        }
    }
}

TEST_CASE("an undersized pool cycles its rows into the population") {
    Topology t = testsupport::load_fixture("triangle.txt");
    GaConfig cfg;
    cfg.seed = 2;
    cfg.initial_pool_size = 2;
    cfg.max_generations = 1;
    GaResult result = run_ga(t, open_req(), cfg);
    REQUIRE(result.generations.size() == 1);
    REQUIRE(result.generations[0].rows.size() == 5);
    std::set<std::string> distinct;
    for (const auto& row : result.generations[0].rows) {
        distinct.insert(row.chromosome.text());
    }
    CHECK(distinct.size() <= 2);
}

TEST_CASE("final path selection prefers fewer nodes then probability then text") {
    Topology t = testsupport::complete_graph(6);
    std::vector<FitnessRow> rows(3);
    rows[0].chromosome = Chromosome{{0, 2, 5}};
    rows[0].fitness = 0.42;
    rows[0].nodes_visited = 3;
    rows[0].selection_probability = 0.42;
    rows[1].chromosome = Chromosome{{0, 1, 5}};
    rows[1].fitness = 0.30;
    rows[1].nodes_visited = 3;
    rows[1].selection_probability = 0.30;
    rows[2].chromosome = Chromosome{{0, 1, 2, 3, 5}};
    rows[2].fitness = 0.9;
    rows[2].nodes_visited = 5;
    rows[2].selection_probability = 0.9;
    CHECK(final_path_selection(rows).chromosome.text() == "0-2-5");

    SUBCASE("text order settles exact ties") {
        rows[1].fitness = rows[0].fitness;
        rows[1].selection_probability = rows[0].selection_probability;
        CHECK(final_path_selection(rows).chromosome.text() == "0-1-5");
    }
    SUBCASE("single feasible row wins outright") {
        rows[0].fitness = 0.0;
        rows[1].fitness = 0.0;
        CHECK(final_path_selection(rows).chromosome.text() == "0-1-2-3-5");
    }
    SUBCASE("no feasible row is infeasible") {
        for (auto& row : rows) {
            row.fitness = 0.0;
        }
        CHECK_THROWS_AS(final_path_selection(rows), InfeasibleError);
    }
}

TEST_CASE("scaling utilities and demand moves nothing but ab") {
    Topology t = testsupport::load_fixture("tennode.txt");
    QosRequirement req;
    req.required_bandwidth = 2.0;
    Topology scaled = testsupport::scale_utilities(t, 1000.0);
    QosRequirement scaled_req = req;
    scaled_req.required_bandwidth *= 1000.0;

    GaConfig cfg;
    cfg.seed = 17;
    cfg.max_generations = 8;
    GaResult base = run_ga(t, req, cfg);
    GaResult big = run_ga(scaled, scaled_req, cfg);
    CHECK(base.best == big.best);
    REQUIRE(base.generations.size() == big.generations.size());
    for (std::size_t g = 0; g < base.generations.size(); ++g) {
        const auto& ra = base.generations[g].rows;
        const auto& rb = big.generations[g].rows;
        REQUIRE(ra.size() == rb.size());
        for (std::size_t i = 0; i < ra.size(); ++i) {
            CHECK(ra[i].chromosome == rb[i].chromosome);
            CHECK(ra[i].fitness == rb[i].fitness);
            CHECK(ra[i].selection_probability == rb[i].selection_probability);
            CHECK(rb[i].ab == 1000.0 * ra[i].ab);
        }
    }
}

TEST_CASE("run_ga refuses infeasible demands") {
    Topology t = testsupport::load_fixture("path3.txt");
    QosRequirement req;
    req.required_bandwidth = 10.0;
    GaConfig cfg;
    CHECK_THROWS_AS(run_ga(t, req, cfg), InfeasibleError);
}
