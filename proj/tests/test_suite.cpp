#include "sqc/errors.hpp"
#include "sqc/suite.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sqc;

TEST_CASE("check list parsing") {
    CHECK(parse_check_list("L5.3,T4.8") == std::vector<std::string>{"L5.3", "T4.8"});
    CHECK(parse_check_list("").empty());
    CHECK_THROWS_AS(parse_check_list("L5.3,X1"), ConfigInvalid);
    CHECK(check_ids().size() == 10);
}

TEST_CASE("suite configuration from JSON") {
    const SuiteConfig c = suite_config_from_json(Json::parse(R"({"seed": 7, "only": ["algebra"], "mc_samples": 20000,
                                                                  "tolerances": {"star_inverse": 1e-9}})"));
    CHECK(c.seed == 7);
    REQUIRE(c.only.has_value());
    CHECK(c.only->front() == "algebra");
    CHECK(c.mc_samples == 20000);
    CHECK(c.tolerances.at("star_inverse") == 1e-9);
    CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"sed": 7})")), ConfigInvalid);
    CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"only": ["nope"]})")), ConfigInvalid);
    CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"tolerances": {"bogus": 1}})")), ConfigInvalid);
}

TEST_CASE("grid overrides") {
    const SuiteConfig c = suite_config_from_json(Json::parse(R"({"grids": {"scaling_heights": [0.5, 0.6]}})"));
    CHECK(c.scaling_heights == std::vector<double>{0.5, 0.6});
    CHECK(c.cover_heights.size() == 5);
    CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"grids": {"lattice": [0.5, 0.6]}})")), ConfigInvalid);
    CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"grids": {"pack_heights": [0.5]}})")), ConfigInvalid);
    CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"grids": {"cover_heights": [0.5, 1.0]}})")), ConfigInvalid);
}

TEST_CASE("scan rows follow the configured grid") {
    SuiteConfig c;
    c.only = std::vector<std::string>{"L5.3", "L5.4"};
    c.mc_samples = 20'000;
    c.scaling_heights = {0.6, 0.7, 0.8};
    c.cover_heights = {0.7, 0.8};
    c.pack_heights = {0.7, 0.8};
    const SuiteReport r = run_suite(c);
    const auto rows = scaling_rows(r);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].y == 0.6);
    const auto consts = estimate_constants(r);
    const auto c3 = std::find_if(consts.begin(), consts.end(), [](const ConstantEnvelope& e) { return e.name == "c3"; });
    REQUIRE(c3 != consts.end());
    CHECK(c3->grid.find("y in {0.60, 0.70, 0.80}") != std::string::npos);
}

TEST_CASE("empty selection runs nothing") {
    SuiteConfig c;
    c.only = std::vector<std::string>{};
    const SuiteReport r = run_suite(c);
    CHECK(r.checks.empty());
    CHECK_FALSE(r.failed());
    CHECK(to_json(r)["checks"].empty());
}

TEST_CASE("algebra check passes and is deterministic") {
    SuiteConfig c;
    c.seed = 99;
    c.only = std::vector<std::string>{"algebra"};
    const SuiteReport a = run_suite(c), b = run_suite(c);
    REQUIRE(a.checks.size() == 1);
    CHECK(a.checks[0].status == Status::Pass);
    CHECK(a.checks[0].failures.empty());
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(timings_json(a).contains("algebra"));
}

TEST_CASE("measure JSON round trip") {
    const MeasureSpec m = build_counterexample(0.3, 0.5, 3);
    const MeasureSpec back = measure_from_json(to_json(m));
    REQUIRE(std::holds_alternative<TubeCounterexampleMeasure>(back));
    const auto& t = std::get<TubeCounterexampleMeasure>(back);
    CHECK(t.heights == std::get<TubeCounterexampleMeasure>(m).heights);
    CHECK(total_mass(back) == doctest::Approx(total_mass(m)));
    const MeasureSpec a = measure_from_json(Json::parse(R"({"kind": "atomic", "atoms": [{"point": [0.5,0,0,0], "weight": 2.0}]})"));
    CHECK(total_mass(a) == 2.0);
    CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"kind": "fractal"})")), ConfigInvalid);
    CHECK_THROWS_AS(parse_quaternion("1,2"), ConfigInvalid);
    CHECK(parse_quaternion("0.1,0.2,0.3,0.4") == Quaternion{0.1, 0.2, 0.3, 0.4});
}

TEST_CASE("emitted artifacts") {
    SuiteConfig c;
    c.only = std::vector<std::string>{"algebra"};
    const SuiteReport r = run_suite(c);
    const auto dir = std::filesystem::temp_directory_path() / "sqc_test_emit";
    std::filesystem::remove_all(dir);
    emit(r, dir.string());
    for (const char* f : {"report.json", "timings.json", "constants.csv", "scaling_d8.csv"}) {
        CHECK(std::filesystem::exists(dir / f));
    }
    std::ifstream in(dir / "scaling_d8.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "y,d,eta_ball,sigma,fitted_exponent");
    const Json j = read_json_file((dir / "report.json").string());
    CHECK(j["seed"] == c.seed);
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv formatting") {
    const std::string s = constants_csv({{"C1", 1.0, 2.5, "g"}});
    CHECK(s.rfind("constant,min,max,grid\n", 0) == 0);
    CHECK(s.find("C1,") != std::string::npos);
}
