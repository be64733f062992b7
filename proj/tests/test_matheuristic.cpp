#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "xdock/errors.hpp"
#include "xdock/heuristic.hpp"
#include "xdock/instgen.hpp"
#include "xdock/matheuristic.hpp"
#include "xdock/model_io.hpp"
#include "xdock/oracle.hpp"

using namespace xdock;

namespace {

Instance tiny(std::uint64_t seed) { return generate(tiny_config(seed, seed % 2 ? 100 : 3)); }

// Random integer perturbation of one entry of `values` within the bounds.
std::vector<double> perturb(const LinearModel& model, std::vector<double> values, std::mt19937_64& rng) {
  const auto idx = static_cast<std::size_t>(uniform_int(rng, 0, model.num_variables() - 1));
  const Variable& var = model.variables()[idx];
  values[idx] = uniform_int(rng, static_cast<int>(var.lower), static_cast<int>(var.upper));
  return values;
}

}  // namespace

TEST_CASE("step-1 model: zero demand and the pigeonhole case") {
  const Instance empty = fixtures::single_link(3);
  const LinearModel model = build_step1(empty);
  const Step1Solution s1 = make_empty_step1(empty);
  const auto values = encode_step1(model, empty, s1);
  CHECK(model.violated_rows(values).empty());
  CHECK(model.objective_value(values) == 0);

  Instance inst = make_instance(1, 2, 1, 2, 1, 1, 1, 5, 100);
  inst.demand(0, 0, 0) = 5;
  inst.demand(0, 1, 0) = 5;
  const Step1OracleResult exact = solve_step1_tiny(inst);
  CHECK(exact.objective == 5);
  const LinearModel m2 = build_step1(inst);
  const auto v2 = encode_step1(m2, inst, exact.solution);
  CHECK(m2.violated_rows(v2).empty());
  CHECK(m2.objective_value(v2) == 5);
}

TEST_CASE("step-1 model rows agree with the step-1 checker") {
  std::mt19937_64 rng(11);
  int infeasible = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = tiny(seed);
    const LinearModel model = build_step1(inst);
    const Step1OracleResult exact = solve_step1_tiny(inst);
    const auto base = encode_step1(model, inst, exact.solution);
    CAPTURE(seed);
    CHECK(model.violated_rows(base).empty());
    CHECK(model.objective_value(base) == doctest::Approx(static_cast<double>(exact.objective)));
    std::vector<std::string> warnings;
    CHECK(decode_step1(model, inst, to_assignment(model, base), &warnings) == exact.solution);
    CHECK(warnings.empty());
    for (int trial = 0; trial < 50; ++trial) {
      const auto values = perturb(model, base, rng);
      const Step1Solution s1 = decode_step1(model, inst, to_assignment(model, values));
      const bool rows_ok = model.violated_rows(values).empty();
      CHECK(rows_ok == check_step1(inst, s1).feasible);
      infeasible += rows_ok ? 0 : 1;
    }
  }
  CHECK(infeasible > 100);
}

TEST_CASE("step-2 model rows agree with the step-2 checker") {
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = tiny(seed);
    const Step1Solution s1 = run_heuristic(inst);
    const Step2OracleResult exact = solve_step2_tiny(inst, s1);
    const LinearModel model = build_step2(inst, s1);
    const auto base = encode_step2(model, inst, exact.solution);
    CAPTURE(seed);
    CHECK(model.violated_rows(base).empty());
    CHECK(model.objective_value(base) == doctest::Approx(static_cast<double>(exact.objective.objective)));
    CHECK(decode_step2(model, inst, to_assignment(model, base)) == exact.solution);
    for (int trial = 0; trial < 50; ++trial) {
      const auto values = perturb(model, base, rng);
      const Step2Solution s2 = decode_step2(model, inst, to_assignment(model, values));
      CHECK(model.violated_rows(values).empty() == check_step2(inst, s1, s2).feasible);
    }
  }
}

TEST_CASE("step-2 model: no step-1 load and a single link") {
  Instance inst = make_instance(2, 1, 1, 1, 2, 2, 1, 5, 10);
  inst.load(0, 0) = 2;
  inst.load(1, 0) = 3;
  Step1Solution s1 = make_empty_step1(inst);
  LinearModel model = build_step2(inst, s1);
  Step2Solution s2 = make_empty_step2(inst);
  s2.h(0, 0) = 1;
  s2.h(1, 0) = 1;
  complete_step2(inst, s1, s2);
  auto values = encode_step2(model, inst, s2);
  CHECK(model.violated_rows(values).empty());
  CHECK(model.objective_value(values) == 50);

  inst = make_instance(1, 1, 1, 1, 3, 1, 1, 5, 10);
  inst.load(0, 0) = 4;
  inst.demand(0, 0, 2) = 4;
  s1 = make_empty_step1(inst);
  s1.x(0, 0) = 4;
  s1.q(0, 0) = 1;
  s1.y(0, 2) = 1;
  complete_step1(inst, s1);
  recompute_step1_shortfall(inst, s1);
  model = build_step2(inst, s1);
  s2 = make_empty_step2(inst);
  s2.h(0, 0) = 1;
  s2.A(0, 0, 0) = 4;
  s2.SB(0, 0, 0) = 1;
  complete_step2(inst, s1, s2);
  values = encode_step2(model, inst, s2);
  CHECK(model.violated_rows(values).empty());
  CHECK(model.objective_value(values) == 2);
  CHECK_THROWS_AS(build_step2(inst, make_empty_step1(fixtures::sample_day())), DimensionError);
}

TEST_CASE("warm starts: accepted, evaluated and rejected") {
  const Instance empty = fixtures::single_link(2);
  const LinearModel started = warm_start(build_step1(empty), empty, make_empty_step1(empty));
  REQUIRE(started.start());
  CHECK(started.objective_value(*started.start()) == 0);
  const Listing listing = parse_listing(start_listing(started));
  CHECK(listing.values.size() == static_cast<std::size_t>(started.num_variables()));
  CHECK_THROWS_AS(start_listing(build_step1(empty)), WarmStartError);

  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = tiny(seed);
    const HeuristicRun run = run_heuristic_detailed(inst);
    if (run.repair_triggered()) continue;
    const LinearModel model = warm_start(build_step1(inst), inst, run.repaired.solution);
    CAPTURE(seed);
    CHECK(model.objective_value(*model.start()) == doctest::Approx(solve_step1_tiny(inst).objective));
    ++compared;
  }
  CHECK(compared >= 20);

  Instance inst = make_instance(1, 1, 2, 1, 1, 1, 1, 5, 100);
  inst.demand(0, 0, 0) = 4;
  inst.demand(1, 0, 0) = 4;
  Step1Solution heavy = make_empty_step1(inst);
  heavy.x(0, 0) = 4;
  heavy.x(0, 1) = 4;
  heavy.q(0, 0) = 1;
  heavy.y(0, 0) = 1;
  complete_step1(inst, heavy);
  recompute_step1_shortfall(inst, heavy);
  try {
    warm_start(build_step1(inst), inst, heavy);
    FAIL("capacity-violating start accepted");
  } catch (const WarmStartError& e) {
    CHECK(std::string(e.what()).find("eq:104") != std::string::npos);
  }
  CHECK_THROWS_AS(warm_start(build_step2(inst, heavy), inst, heavy), WarmStartError);
}

TEST_CASE("hybrid on zero demand and on the sample-day instance") {
  Instance empty = fixtures::single_link(3);
  empty.name = "empty";
  const PipelineResult zero = run_pipeline(empty, PipelineMode::hybrid);
  CHECK(zero.report.feasible);
  CHECK(zero.report.objective.objective == 0);
  CHECK(zero.report.seconds < 1.0);

  const Instance fig = fixtures::sample_day();
  const PipelineResult run = run_pipeline(fig, PipelineMode::hybrid);
  CHECK(run.report.feasible);
  CHECK(validate_solution(fig, run.solution).feasible);
  // OD = 2 docks two trucks at t = 2: d1 gets 10 of its 15 pallets, d2 all 9.
  CHECK(run.report.objective.penalty_total == 500);
  REQUIRE(run.report.steps.size() == 2);
  CHECK(run.report.steps[0].method == "heuristic");
  CHECK(run.report.steps[1].method == "search");
}

TEST_CASE("pipelines on tiny seeds: sound, bounded below, mode-equivalent") {
  int compared = 0, equal = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = tiny(seed);
    const OracleResult optimum = solve_exact_tiny(inst);
    const bool repaired = run_heuristic_detailed(inst).repair_triggered();
    CAPTURE(seed);
    std::int64_t objectives[3];
    int idx = 0;
    for (PipelineMode mode : {PipelineMode::exact_exact, PipelineMode::warmstart, PipelineMode::hybrid}) {
      const PipelineResult run = run_pipeline(inst, mode);
      CAPTURE(to_string(mode));
      CHECK_MESSAGE(run.report.feasible, validate_solution(inst, run.solution).summary());
      CHECK(run.report.objective.objective >= optimum.objective);
      CHECK(run.report.objective == evaluate_objective(inst, run.solution));
      const std::int64_t shipped = run.step2.A.sum();
      CHECK(shipped + run.step2.B.sum() == inst.total_supply());
      CHECK(shipped + run.step2.G.sum() == run.step1.x.sum());
      objectives[idx++] = run.report.objective.objective;
    }
    CHECK(objectives[0] == objectives[1]);
    if (!repaired) {
      ++compared;
      equal += objectives[0] == objectives[2];
    }
  }
  MESSAGE("hybrid matched exact-exact on " << equal << " of " << compared << " non-repair seeds");
  CHECK(compared >= 20);
  CHECK(equal == compared);
}

TEST_CASE("reports are byte-identical across runs and leave out timing") {
  GeneratorConfig config = preset_database(1);
  config.seed = 9;
  const Instance inst = generate(config);
  const std::string a = dump_report(run_pipeline(inst, PipelineMode::hybrid).report);
  const std::string b = dump_report(run_pipeline(inst, PipelineMode::hybrid).report);
  CHECK(a == b);
  CHECK(a.find("seconds") == std::string::npos);
  const RunReport timed = run_pipeline(inst, PipelineMode::hybrid).report;
  CHECK(dump_report(timed, true).find("seconds") != std::string::npos);
  CHECK(to_json(timed)["schema"] == "xdock-report/1");
  CHECK(to_json(timed)["steps"][1]["method"] == "search");
}

TEST_CASE("exact modes need a backend beyond the guard rails") {
  const Instance inst = generate(preset_database(1));
  CHECK_THROWS_AS(run_pipeline(inst, PipelineMode::exact_exact), ConfigurationError);
  CHECK_THROWS_AS(run_pipeline(inst, PipelineMode::warmstart), ConfigurationError);
  CHECK_NOTHROW(run_pipeline(inst, PipelineMode::hybrid));
  CHECK_THROWS_AS(run_pipeline(inst, PipelineMode::hybrid, {0, 10}), ConfigurationError);
  CHECK_THROWS_AS(parse_mode("exact"), ConfigurationError);
  CHECK(parse_mode("warmstart") == PipelineMode::warmstart);
}
