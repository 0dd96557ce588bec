#include <doctest.h>

#include <fstream>

#include "arevrp/io.hpp"
#include "support/fixtures.hpp"

using namespace arevrp;
using namespace testsupport;

TEST_CASE("solution JSON round trip by vertex names") {
    Instance inst = example_instance();
    Solution sol;
    sol.routes.push_back(make_route(inst, {inst.find_vertex("C1"), inst.find_vertex("S1"), inst.find_vertex("C2")}));
    RunManifest m;
    m.command = "test";
    m.tool_version = "0";
    m.build_id = "test";
    write_solution_json("./sol_roundtrip.json", sol, inst, m);
    Solution back = read_solution_json("./sol_roundtrip.json", inst);
    REQUIRE(back.routes.size() == 1);
    CHECK(back.routes[0].seq == sol.routes[0].seq);
}

TEST_CASE("solution JSON: malformed input is rejected") {
    Instance inst = example_instance();
    {
        std::ofstream out("./bad1.json");
        out << "{ not json";
    }
    CHECK_THROWS_WITH_AS(read_solution_json("./bad1.json", inst), doctest::Contains("malformed"), std::runtime_error);
    {
        std::ofstream out("./bad2.json");
        out << "{\"routes\": [[\"Nope\"]]}";
    }
    CHECK_THROWS_WITH_AS(read_solution_json("./bad2.json", inst), doctest::Contains("unknown vertex"),
                         std::runtime_error);
    CHECK_THROWS_AS(read_solution_json("./absent.json", inst), std::runtime_error);
}

TEST_CASE("scenario CSV round trip on physical arcs") {
    Instance inst = example_instance();
    Scenario s(inst.num_physical, 1.0, "x");
    int u = inst.phys[inst.find_vertex("C1")], v = inst.phys[inst.find_vertex("C2")];
    s.at(u, v) = 1.07;
    write_scenario_csv("./scenario_rt.csv", s, inst);
    Scenario back = read_scenario_csv("./scenario_rt.csv", inst);
    CHECK(back.at(u, v) == doctest::Approx(1.07));
    CHECK(back.at(v, u) == doctest::Approx(1.0));
}

TEST_CASE("config overrides") {
    SearchConfig cfg;
    apply_config_overrides("{\"n_tabu\": 13, \"alpha0\": 20.5, \"fleet\": 4}", cfg);
    CHECK(cfg.n_tabu == 13);
    CHECK(cfg.alpha0 == doctest::Approx(20.5));
    CHECK(cfg.fleet == 4);
    CHECK_THROWS_WITH_AS(apply_config_overrides("{\"nope\": 1}", cfg), doctest::Contains("unknown config key"),
                         std::runtime_error);
    CHECK_THROWS_AS(apply_config_overrides("{broken", cfg), std::runtime_error);
}

TEST_CASE("manifest JSON carries the reproduction fields") {
    RunManifest m;
    m.command = "solve";
    m.instance_path = "foo.txt";
    m.gamma = 6;
    m.hhat_fraction = 0.1;
    m.seed = 17;
    m.tool_version = "1.2.3";
    m.build_id = "abc";
    std::string j = manifest_to_json(m);
    CHECK(j.find("\"command\": \"solve\"") != std::string::npos);
    CHECK(j.find("\"seed\": 17") != std::string::npos);
    CHECK(j.find("\"gamma\": 6") != std::string::npos);
}

TEST_CASE("schedule CSV dump") {
    Instance inst = example_instance();
    Solution sol;
    sol.routes.push_back(make_route(inst, {inst.find_vertex("C1"), inst.find_vertex("S1"), inst.find_vertex("C2")}));
    Scenario s(inst.num_physical, 1.0);
    write_schedule_csv("./schedule_rt.csv", sol, s, inst);
    std::ifstream in("./schedule_rt.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "route,vertex,a_min,a_max,p,y");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);  // depot, C1, S1, C2, end depot
}
