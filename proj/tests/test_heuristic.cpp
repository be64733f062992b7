#include "doctest.h"
#include "fixtures.hpp"
#include "xdock/heuristic.hpp"
#include "xdock/instgen.hpp"
#include "xdock/oracle.hpp"

using namespace xdock;

namespace {

int total_load(const Step1Solution& s1, int j) {
  int load = 0;
  for (int p = 0; p < s1.x.dim(1); ++p) load += s1.x(j, p);
  return load;
}

}  // namespace

TEST_CASE("sample-day aggregates") {
  const Instance inst = fixtures::sample_day();
  const Aggregates agg = preprocess(inst);
  CHECK(agg.RP(0, 1) == 15);
  CHECK(agg.RP(1, 1) == 9);
  CHECK(agg.ZP(0, 1) == 2);
  CHECK(agg.ZP(1, 1) == 1);
  CHECK(agg.ZT == std::vector<int>{0, 3, 0});
  CHECK(agg.trucks_needed() == 3);
}

TEST_CASE("aggregates of zero demand and ceiling") {
  Instance inst = fixtures::single_link(2);
  Aggregates agg = preprocess(inst);
  CHECK(agg.RP.sum() == 0);
  CHECK(agg.ZP.sum() == 0);
  CHECK(agg.trucks_needed() == 0);

  inst.demand(0, 0, 0) = 12;
  agg = preprocess(inst);
  CHECK(agg.ZP(0, 0) == 2);
}

TEST_CASE("trucks are consumed in index order over periods then destinations") {
  Instance inst = make_instance(1, 3, 1, 2, 2, 1, 3, 10, 100);
  inst.demand(0, 0, 0) = 12;
  PartialPlan plan = assign_trucks(inst, preprocess(inst));
  CHECK(plan.y(0, 0) == 1);
  CHECK(plan.q(0, 0) == 1);
  CHECK(plan.LJ == std::vector<int>{10, 2, 0});
  CHECK(plan.y(1, 0) == 1);
  CHECK(plan.q(1, 0) == 1);
  CHECK(plan.y(2, 0) + plan.y(2, 1) == 0);
  CHECK_FALSE(plan.uncovered);

  inst.demand(0, 0, 0) = 10;
  inst.demand(0, 1, 0) = 10;
  plan = assign_trucks(inst, preprocess(inst));
  CHECK(plan.q(0, 0) == 1);
  CHECK(plan.q(1, 1) == 1);
  CHECK(plan.LJ == std::vector<int>{10, 10, 0});

  inst.demand(0, 1, 1) = 25;
  plan = assign_trucks(inst, preprocess(inst));
  CHECK(plan.uncovered);
  CHECK(plan.BP(1, 1) == 15);
}

TEST_CASE("sample-day loads follow the product order") {
  const Instance inst = fixtures::sample_day();
  PartialPlan plan = assign_trucks(inst, preprocess(inst));
  CHECK(plan.LJ == std::vector<int>{10, 5, 9, 0});
  assign_loads(inst, plan);
  CHECK(plan.x(0, 0) == 8);
  CHECK(plan.x(0, 2) == 2);
  CHECK(plan.x(1, 2) == 5);
  CHECK(plan.x(2, 1) == 9);
  CHECK(plan.x.sum() == 24);
  CHECK(plan.B.sum() == 0);
  CHECK(plan.BL == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("single product equal to C goes on one truck") {
  Instance inst = make_instance(1, 2, 1, 1, 1, 1, 1, 10, 100);
  inst.demand(0, 0, 0) = 10;
  const Step1Solution s1 = run_heuristic(inst);
  CHECK(s1.x(0, 0) == 10);
  CHECK(s1.x(1, 0) == 0);
  CHECK(step1_objective(s1) == 0);
}

TEST_CASE("repair drops the minimum-load truck") {
  Instance inst = make_instance(1, 2, 1, 1, 1, 1, 1, 10, 100);
  inst.demand(0, 0, 0) = 12;
  const HeuristicRun run = run_heuristic_detailed(inst);
  CHECK(run.repair_triggered());
  CHECK(run.repaired.removed == std::vector<int>{1});
  CHECK(run.repaired.removed_load == 2);
  CHECK(step1_objective(run.repaired.solution) == 2);
  CHECK(run.repaired.solution.y(1, 0) == 0);
  CHECK(check_step1(inst, run.repaired.solution).feasible);
}

TEST_CASE("repair breaks load ties by lowest index") {
  Instance inst = make_instance(1, 3, 1, 3, 1, 1, 2, 10, 100);
  inst.demand(0, 0, 0) = 4;
  inst.demand(0, 1, 0) = 3;
  inst.demand(0, 2, 0) = 3;
  const HeuristicRun run = run_heuristic_detailed(inst);
  CHECK(run.repaired.removed == std::vector<int>{1});
  CHECK(step1_objective(run.repaired.solution) == 3);
}

TEST_CASE("repair leaves door-feasible plans unchanged") {
  const Instance inst = fixtures::sample_day();
  PartialPlan plan = assign_trucks(inst, preprocess(inst));
  assign_loads(inst, plan);
  Instance wide = inst;
  wide.outbound_doors = 3;
  const RepairResult result = repair(wide, plan);
  CHECK(result.removed.empty());
  CHECK(result.solution.x == plan.x);
  CHECK(result.solution.y == plan.y);
  CHECK(step1_objective(result.solution) == 0);
}

TEST_CASE("zero demand and exactly-filled doors give objective zero") {
  const Instance empty = fixtures::single_link(3);
  const Step1Solution s1 = run_heuristic(empty);
  CHECK(s1 == make_empty_step1(empty));

  Instance full = make_instance(1, 4, 1, 2, 2, 1, 2, 10, 100);
  full.demand(0, 0, 0) = 10;
  full.demand(0, 1, 0) = 10;
  full.demand(0, 0, 1) = 7;
  full.demand(0, 1, 1) = 10;
  CHECK(step1_objective(run_heuristic(full)) == 0);
}

TEST_CASE("too few trucks can leave the heuristic above the step-1 optimum") {
  // The only truck goes to the earlier, smaller order.
  Instance inst = make_instance(1, 1, 1, 1, 2, 1, 1, 10, 100);
  inst.demand(0, 0, 0) = 2;
  inst.demand(0, 0, 1) = 10;
  const HeuristicRun run = run_heuristic_detailed(inst);
  CHECK(run.plan.uncovered);
  CHECK_FALSE(run.repair_triggered());
  CHECK(step1_objective(run.repaired.solution) == 10);
  CHECK(solve_step1_tiny(inst).objective == 2);
}

TEST_CASE("seeded sweep: conservation, consistency, door feasibility and determinism") {
  int repaired = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratorConfig config = seed % 2 ? tiny_config(seed) : preset_database(1 + static_cast<int>(seed % 6));
    config.seed = seed;
    const Instance inst = generate(config);
    const HeuristicRun run = run_heuristic_detailed(inst);
    const Step1Solution& s1 = run.repaired.solution;
    CAPTURE(seed);
    REQUIRE(inst.outbound_trucks >= run.aggregates.trucks_needed());
    CHECK_FALSE(run.plan.uncovered);

    int reserved = 0;
    for (int j = 0; j < inst.outbound_trucks; ++j) {
      reserved += run.plan.LJ[static_cast<std::size_t>(j)];
      int load = 0;
      for (int p = 0; p < inst.products; ++p) load += run.plan.x(j, p);
      CHECK(load == run.plan.LJ[static_cast<std::size_t>(j)]);
    }
    CHECK(reserved == run.aggregates.RP.sum());

    for (int t = 0; t < inst.periods; ++t) {
      int docked = 0;
      for (int j = 0; j < inst.outbound_trucks; ++j) docked += s1.y(j, t);
      CHECK(docked <= inst.outbound_doors);
    }
    CHECK(step1_objective(s1) == run.repaired.removed_load);
    int removed = 0;
    for (int j : run.repaired.removed) removed += run.plan.LJ[static_cast<std::size_t>(j)];
    CHECK(removed == run.repaired.removed_load);
    for (int j = 0; j < inst.outbound_trucks; ++j) CHECK(total_load(s1, j) <= inst.capacity);

    const auto report = check_step1(inst, s1);
    CHECK_MESSAGE(report.feasible, report.summary());
    CHECK(run_heuristic(inst) == s1);
    repaired += run.repair_triggered() ? 1 : 0;
  }
  CHECK(repaired > 0);
}
