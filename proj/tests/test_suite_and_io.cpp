#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "regent/generators.hpp"
#include "regent/io.hpp"
#include "regent/theorem_suite.hpp"

using regent::Json;
using regent::SuiteConfig;
using regent::SuiteReport;

TEST_CASE("generators replay from their seeds", "[suite]") {
  regent::InstanceSpec spec;
  spec.seed = 42;
  spec.points = 5;
  spec.kind = regent::SpaceKind::random_preorder;
  auto a = regent::gen_space(spec);
  auto b = regent::gen_space(spec);
  CHECK(a->opens() == b->opens());

  spec.kind = regent::SpaceKind::khalimsky;
  CHECK(regent::gen_space(spec)->opens() == regent::khalimsky_space(5)->opens());
  spec.kind = regent::SpaceKind::discrete;
  spec.points = 3;
  CHECK(regent::gen_space(spec)->opens().size() == 8);

  // Rejection sampling always lands on a verified map for discrete spaces.
  regent::Rng rng(7);
  auto draw = regent::gen_r_map(rng, regent::discrete_space(4));
  REQUIRE(draw.map.has_value());
  CHECK(draw.attempts == 1);
  // Spaces whose catalogue is only {empty, X} accept every map.
  auto trivial = regent::sierpinski_space();
  regent::Rng rng2(8);
  auto d2 = regent::gen_r_map(rng2, trivial);
  REQUIRE(d2.map.has_value());
  CHECK(d2.attempts == 1);
}

TEST_CASE("suite runs clean and deterministically", "[suite]") {
  SuiteConfig config;
  config.seed = 7;
  config.instances = 12;
  SuiteReport first = regent::run_suite(config);
  CHECK(first.all_passed);
  CHECK(first.results.size() == regent::suite_check_ids().size());

  SuiteReport second = regent::run_suite(config);
  CHECK(regent::dump_canonical(regent::suite_report_to_json(first)) ==
        regent::dump_canonical(regent::suite_report_to_json(second)));

  // Gated checks report skipped instances rather than contorting them.
  for (const auto& outcome : first.results) {
    CHECK(outcome.tried == 12);
    CHECK(outcome.applicable + outcome.skipped == outcome.tried);
    CHECK(outcome.failed == 0);
    if (outcome.id == "hausdorff-separation") CHECK(outcome.skipped > 0);
  }
}

TEST_CASE("failures surface as data with replayable seeds", "[suite]") {
  // Drive the harness bookkeeping directly: first violation wins, skips
  // are separate from failures, counters accumulate.
  regent::suite_detail::Trial trial(99, "instance 0");
  trial.count("cases");
  trial.count("cases");
  trial.require(true, "fine");
  trial.require(false, "first problem");
  trial.require(false, "second problem");
  CHECK_FALSE(trial.skipped());
  REQUIRE(trial.violation().has_value());
  CHECK(*trial.violation() == "first problem");
  CHECK(trial.counts().at("cases") == 2);
  CHECK(trial.seed() == 99);

  regent::suite_detail::Trial gated(7, "instance 1");
  gated.skip("hypotheses unmet");
  CHECK(gated.skipped());
  CHECK_FALSE(gated.violation().has_value());

  // A failing outcome serializes with its witnesses and flips the verdict.
  regent::SuiteReport report;
  regent::TheoremOutcome outcome;
  outcome.id = "example";
  outcome.tried = outcome.applicable = outcome.failed = 1;
  outcome.failures.push_back(regent::SuiteFailure{99, "instance 0", "first problem"});
  report.results.push_back(outcome);
  report.all_passed = false;
  Json j = regent::suite_report_to_json(report);
  CHECK_FALSE(j.at("all_passed").get<bool>());
  CHECK(j.at("results")[0].at("failures")[0].at("seed").get<std::uint64_t>() == 99);
  CHECK(j.at("results")[0].at("failures")[0].at("detail").get<std::string>() == "first problem");
}

TEST_CASE("suite reports do not depend on the worker count", "[suite]") {
  SuiteConfig config;
  config.seed = 19;
  config.instances = 10;
  config.threads = 1;
  SuiteReport serial = regent::run_suite(config);
  config.threads = 4;
  SuiteReport parallel = regent::run_suite(config);
  CHECK(regent::dump_canonical(regent::suite_report_to_json(serial)) ==
        regent::dump_canonical(regent::suite_report_to_json(parallel)));
}

TEST_CASE("suite filters select checks", "[suite]") {
  SuiteConfig config;
  config.seed = 3;
  config.instances = 6;
  config.theorems = {"product-cover-bound", "product-projections"};
  SuiteReport report = regent::run_suite(config);
  REQUIRE(report.results.size() == 2);
  CHECK(report.results[0].id == "product-cover-bound");
  CHECK(report.results[1].id == "product-projections");

  config.theorems = {"inverse-entropy"};
  config.instance_overrides["inverse-entropy"] = 9;
  SuiteReport single = regent::run_suite(config);
  REQUIRE(single.results.size() == 1);
  CHECK(single.results[0].tried == 9);
}

TEST_CASE("space documents round-trip canonically", "[io]") {
  for (const auto& space : {regent::khalimsky_space(5), regent::sierpinski_space(), regent::discrete_space(3)}) {
    Json j = regent::space_to_json(*space);
    auto reparsed = regent::space_from_json(j);
    CHECK(reparsed->opens() == space->opens());
    CHECK(regent::dump_canonical(regent::space_to_json(*reparsed)) == regent::dump_canonical(j));
  }

  // Both presentation forms load to the same space.
  Json by_nbhds = Json::parse(R"({"min_nbhds": [[0,1],[1],[1,2,3],[3],[3,4]]})");
  CHECK(regent::space_from_json(by_nbhds)->opens() == regent::khalimsky_space(5)->opens());
}

TEST_CASE("map and cover documents", "[io]") {
  auto d2 = regent::discrete_space(2);
  Json mj = Json::parse(R"({"map": [1, 0]})");
  auto f = regent::map_from_json(mj, d2);
  CHECK(f.verified);
  CHECK(f.table == std::vector<int>{1, 0});
  Json back = regent::map_to_json(f);
  auto f2 = regent::map_from_json(back, nullptr);
  CHECK(f2.table == f.table);

  Json cj = Json::parse(R"({"sets": [[0], [1]]})");
  auto cover = regent::cover_from_json(cj, d2);
  CHECK(cover.canonical().size() == 2);
  Json cback = regent::cover_to_json(cover);
  CHECK(regent::dump_canonical(cback) == regent::dump_canonical(regent::cover_to_json(regent::cover_from_json(cback, d2))));

  // Mismatched inline space is rejected.
  Json wrong = Json::parse(R"({"space": {"n": 3, "opens": [[], [0], [1], [0,1], [2], [0,2], [1,2], [0,1,2]]}, "map": [0,1,2]})");
  CHECK_THROWS_AS(regent::map_from_json(wrong, d2), regent::Error);
}

TEST_CASE("shift documents", "[io]") {
  Json forbidden = Json::parse(R"({"forbidden": ["11"]})");
  auto golden = regent::sft_from_json(forbidden);
  CHECK(golden.matrix == std::vector<std::vector<int>>{{1, 1}, {1, 0}});

  Json matrix = regent::sft_to_json(golden);
  auto reparsed = regent::sft_from_json(matrix);
  CHECK(reparsed.matrix == golden.matrix);
  CHECK(regent::dump_canonical(regent::sft_to_json(reparsed)) == regent::dump_canonical(matrix));
}

TEST_CASE("parse failures carry context", "[io]") {
  CHECK_THROWS_AS(regent::space_from_json(Json::parse(R"({"points": ["a"]})")), regent::Error);
  CHECK_THROWS_AS(regent::space_from_json(Json::parse(R"({"n": 2, "opens": [[0, 7]]})")), regent::Error);
  CHECK_THROWS_AS(regent::space_from_json(Json::parse(R"({"n": 2, "opens": [[]], "min_nbhds": [[0], [1]]})")),
                  regent::Error);
  CHECK_THROWS_AS(regent::cover_from_json(Json::parse(R"({"sets": [[0]]})"), nullptr), regent::Error);
  CHECK_THROWS_AS(regent::sft_from_json(Json::parse(R"({"alphabet": 2})")), regent::Error);
}

TEST_CASE("entropy reports serialize stably", "[io]") {
  auto d2 = regent::discrete_space(2);
  auto swap = regent::check_r_map(d2, {1, 0});
  auto rep = regent::entropy_n(swap);
  Json j = regent::entropy_report_to_json(rep);
  CHECK(j.contains("a_seq"));
  CHECK(j.contains("fekete_inf"));
  CHECK(j.contains("cycle"));
  CHECK(j.at("value").get<double>() == 0.0);
  CHECK(j.at("exact").get<bool>());
  CHECK(j.at("log_base").get<std::string>() == "e");
  CHECK(j.at("cycle").at("period").get<int>() == 1);
}

TEST_CASE("suite config documents", "[io]") {
  Json j = Json::parse(R"({"seed": 11, "instances": 5, "theorems": ["inverse-entropy"], "overrides": {"inverse-entropy": 7}})");
  SuiteConfig config = regent::suite_config_from_json(j);
  CHECK(config.seed == 11);
  CHECK(config.instances == 5);
  CHECK(config.theorems == std::vector<std::string>{"inverse-entropy"});
  CHECK(config.instance_overrides.at("inverse-entropy") == 7);
  Json back = regent::suite_config_to_json(config);
  CHECK(regent::suite_config_from_json(back).seed == 11);
}
