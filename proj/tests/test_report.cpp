#include <string>

#include <doctest.h>
#include <json.hpp>

#include "qospath/format.hpp"
#include "qospath/ga.hpp"
#include "qospath/report.hpp"
#include "qospath/sa.hpp"
#include "test_support.hpp"

using namespace qospath;

TEST_CASE("config echo lines spell out every knob") {
    GaConfig ga;
    ga.seed = 7;
    CHECK(ga_config_line(ga) ==
          "# ga population=5 generations=5 crossover=0.8 mutation=1e-04 pool=10 seed=7");
    SaConfig sa;
    sa.seed = 7;
    CHECK(sa_config_line(sa) ==
          "# sa temperature=1000 stop=50 inner=2 alpha=0.2 stall=5 seed=7");
}

TEST_CASE("generation csv carries the header and one row per member") {
    Topology t = testsupport::load_fixture("path3.txt");
    GaConfig cfg;
    cfg.seed = 3;
    cfg.max_generations = 2;
    GaResult result = run_ga(t, QosRequirement{}, cfg);
    std::string csv = generations_csv(result.generations, cfg);
    CHECK(csv ==
          "# ga population=5 generations=2 crossover=0.8 mutation=1e-04 pool=10 seed=3\n"
          "generation,chromosome,ab,fitness,nodes_visited,selection_probability\n"
          "1,0-1-2,10,0.2,3,0.2\n"
          "1,0-1-2,10,0.2,3,0.2\n"
          "1,0-1-2,10,0.2,3,0.2\n"
          "1,0-1-2,10,0.2,3,0.2\n"
          "1,0-1-2,10,0.2,3,0.2\n"
          "2,0-1-2,10,0.2,3,0.2\n"
          "2,0-1-2,10,0.2,3,0.2\n"
          "2,0-1-2,10,0.2,3,0.2\n"
          "2,0-1-2,10,0.2,3,0.2\n"
          "2,0-1-2,10,0.2,3,0.2\n");
}

TEST_CASE("ga json report carries the run and its operator log") {
    Topology t = testsupport::load_fixture("triangle.txt");
    GaConfig cfg;
    cfg.seed = 13;
    GaResult result = run_ga(t, QosRequirement{}, cfg);
    nlohmann::json report = ga_report_json(result, cfg);
    CHECK(report["algorithm"] == "ga");
    CHECK(report["config"]["population"] == 5);
    CHECK(report["config"]["seed"] == 13);
    CHECK(report["selected_path"] == "0-2");
    CHECK(report["low_confidence"].is_boolean());
    REQUIRE(report["generations"].size() == cfg.max_generations);
    for (const auto& generation : report["generations"]) {
        CHECK(generation["rows"].size() == cfg.population_size);
        for (const auto& row : generation["rows"]) {
            CHECK(row.contains("chromosome"));
            CHECK(row.contains("ab"));
            CHECK(row.contains("fitness"));
            CHECK(row.contains("nodes_visited"));
            CHECK(row.contains("selection_probability"));
        }
    }
    REQUIRE(report["generations"][1]["operators"].size() > 0);
    const auto& op = report["generations"][1]["operators"][0];
    CHECK(op["op"] == "elitism");
    CHECK(op["kept"][0] == true);

    // Round trip through text parses back to the same document.
    CHECK(nlohmann::json::parse(report.dump()) == report);
}

TEST_CASE("sa trace csv mirrors the trace rows") {
    Topology t = testsupport::load_fixture("path3.txt");
    SaConfig cfg;
    cfg.seed = 2;
    SaResult result = run_sa(t, QosRequirement{}, cfg);
    std::string csv = sa_trace_csv(result, cfg);
    std::string expected =
        "# sa temperature=1000 stop=50 inner=2 alpha=0.2 stall=5 seed=2\n"
        "current,candidate,delta,stall_remaining,temperature,accepted\n";
    for (const auto& row : result.trace) {
        expected += "0-1-2,0-1-2,0,5," + format_double(row.temperature) + ",true\n";
    }
    CHECK(csv == expected);
}

TEST_CASE("sa json report records schedule and outcome") {
    Topology t = testsupport::load_fixture("tennode.txt");
    SaConfig cfg;
    cfg.seed = 7;
    SaResult result = run_sa(t, QosRequirement{}, cfg);
    nlohmann::json report = sa_report_json(result, cfg);
    CHECK(report["algorithm"] == "sa");
    CHECK(report["config"]["temperature"] == 1000.0);
    CHECK(report["config"]["alpha"] == 0.2);
    CHECK(report["selected_path"] == result.best.text());
    CHECK(report["best_objective"].get<double>() >= report["final_objective"].get<double>());
    CHECK(report["visited_temperatures"] == nlohmann::json({1000.0, 200.0, 40.0}));
    REQUIRE(report["trace"].size() == result.trace.size());
    CHECK(nlohmann::json::parse(report.dump()) == report);
}
