#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "xdock/bench.hpp"
#include "xdock/errors.hpp"
#include "xdock/instgen.hpp"
#include "xdock/model_io.hpp"
#include "xdock/oracle.hpp"

using namespace xdock;

namespace {

bool highs_available() { return std::system("python3 -c 'import highspy' > /dev/null 2>&1") == 0; }

ExternalSolver highs() {
  return ExternalSolver{"python3 " + std::string(XDOCK_SOURCE_DIR) + "/tools/highs_bridge.py", "", false};
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_CASE("three tiny instances with oracle and hybrid give six rows") {
  const Plan plan = load_plan({{"instances", {{{"tiny", 1}}, {{"tiny", 2}}, {{"tiny", 3}}}},
                               {"methods", {"oracle", "hybrid"}}});
  const BenchResult result = run_benchmark(plan);
  REQUIRE(result.rows.size() == 6);
  CHECK(result.all_completed());
  for (std::size_t idx = 0; idx < 6; ++idx) {
    const BenchRow& row = result.rows[idx];
    CAPTURE(idx);
    CHECK(row.report.method == (idx % 2 ? "hybrid" : "oracle"));
    REQUIRE(row.gap);
    CHECK(*row.gap >= 0);
    if (idx % 2 == 0) CHECK(*row.gap == 0);
  }
  const std::string csv = to_csv(result);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(count_lines(csv) == 7);
  CHECK(to_json(result)["rows"].size() == 6);
}

TEST_CASE("empty plan gives an empty table") {
  const BenchResult result = run_benchmark(load_plan(nlohmann::json::object()));
  CHECK(result.rows.empty());
  CHECK(result.all_completed());
  CHECK(to_csv(result) == std::string(kCsvHeader) + "\n");
  const BenchResult no_methods = run_benchmark(load_plan({{"instances", {{{"tiny", 1}}}}}));
  CHECK(no_methods.rows.empty());
}

TEST_CASE("plans are validated before anything runs") {
  CHECK_THROWS_AS(load_plan({{"instances", {{{"tiny", 1}}}}, {"methods", {"hybrid", "cplex"}}}), PlanError);
  CHECK_THROWS_AS(load_plan({{"instances", {{{"file", "no/such/instance.json"}}}}, {"methods", {"hybrid"}}}),
                  PlanError);
  CHECK_THROWS_AS(load_plan({{"instances", {{{"size", 3}}}}}), PlanError);
  CHECK_THROWS_AS(load_plan({{"limits", {{"total_seconds", 0}}}}), PlanError);
  CHECK_THROWS_AS(load_plan({{"schema", "xdock-plan/9"}}), PlanError);
  CHECK_THROWS_AS(load_plan_file("/no/such/plan.json"), PlanError);
}

TEST_CASE("files, seed lists and generator configs") {
  const auto dir = std::filesystem::temp_directory_path() / "xdock-bench-test";
  std::filesystem::create_directories(dir);
  GeneratorConfig config = tiny_config(5);
  save_instance_file(generate(config), (dir / "t5.json").string());
  write_text_file((dir / "plan.json").string(),
                  R"({"instances": [{"file": "t5.json"}, {"db": 1, "seeds": [1, 2]},
                                    {"generate": {"db": 2, "seed": 4}}],
                      "methods": ["hybrid"]})");
  const Plan plan = load_plan_file((dir / "plan.json").string());
  REQUIRE(plan.instances.size() == 4);
  CHECK(dump_instance(plan.instances[0]) == dump_instance(generate(config)));
  CHECK(plan.instances[1].name == "db1-s1");
  CHECK(plan.instances[2].name == "db1-s2");
  CHECK(plan.instances[3].name == "db2-s4");
  std::filesystem::remove_all(dir);
}

TEST_CASE("job count does not change the rows") {
  const Plan plan = load_plan({{"instances", {{{"tiny", 4}}, {{"db", 1}, {"seeds", {1, 2}}}}},
                               {"methods", {"oracle", "hybrid", "integrated+sbc"}}});
  const auto serial = to_json(run_benchmark(plan, 1), false);
  const auto parallel = to_json(run_benchmark(plan, 4), false);
  CHECK(serial == parallel);
}

TEST_CASE("runs without a backend are errors, and the exit status reflects them") {
  const Plan plan = load_plan({{"instances", {{{"db", 1}}}}, {"methods", {"matheuristic", "hybrid"}}});
  const BenchResult result = run_benchmark(plan);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].report.status == "error");
  CHECK_FALSE(result.rows[0].gap);
  CHECK(result.rows[1].report.feasible);
  CHECK_FALSE(result.all_completed());
  CHECK(to_csv(result).find("db1-s1,matheuristic,,,,error,,") != std::string::npos);
}

TEST_CASE("HiGHS agrees with the oracle on tiny integrated and step-1 models") {
  if (!highs_available()) {
    MESSAGE("highspy not installed; skipping the external cross-check");
    return;
  }
  Backend backend{highs(), false};
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = generate(tiny_config(seed, seed % 2 ? 100 : 3));
    CAPTURE(seed);
    const std::int64_t optimum = solve_exact_tiny(inst).objective;
    for (const char* method : {"integrated", "integrated+sbc"}) {
      const RunReport rep = run_method(inst, method, {}, backend);
      CAPTURE(method);
      REQUIRE(rep.feasible);
      CHECK(rep.steps[0].method == "external");
      CHECK(rep.steps[0].status == "optimal");
      CHECK(rep.objective.objective == optimum);
    }
    const RunReport exact = run_method(inst, "matheuristic", {}, backend);
    const RunReport internal = run_method(inst, "matheuristic", {}, Backend{});
    CHECK(exact.feasible);
    CHECK(exact.steps[0].objective == internal.steps[0].objective);
    CHECK(exact.steps[1].objective == internal.steps[1].objective);
    CHECK(exact.objective.objective >= optimum);
  }
}

TEST_CASE("external solver drives warm-started pipelines beyond the guard rails") {
  if (!highs_available()) {
    MESSAGE("highspy not installed; skipping the external pipeline");
    return;
  }
  GeneratorConfig config = preset_database(1);
  config.seed = 2;
  const Instance inst = generate(config);
  Backend backend{highs(), true};
  const RunReport warm = run_method(inst, "warmstart", {}, backend);
  const RunReport hybrid = run_method(inst, "hybrid", {}, backend);
  REQUIRE(warm.status == "feasible");
  CHECK(warm.steps[0].method == "external");
  REQUIRE(warm.steps[0].start_objective);
  CHECK(warm.steps[0].objective <= *warm.steps[0].start_objective);
  CHECK(hybrid.feasible);
  CHECK(hybrid.steps[1].method == "external");
  CHECK_THROWS_AS(run_external(ExternalSolver{"false", "", false}, LinearModel{}, 1), ConfigurationError);
}
