#include "doctest.h"
#include "fixtures.hpp"
#include "xdock/heuristic.hpp"
#include "xdock/instgen.hpp"
#include "xdock/oracle.hpp"
#include "xdock/step2_search.hpp"

using namespace xdock;

namespace {

void check_conservation(const Instance& inst, const Step1Solution& s1, const Step2Solution& s2) {
  std::int64_t shipped = s2.A.sum();
  CHECK(shipped + s2.B.sum() == inst.total_supply());
  CHECK(shipped + s2.G.sum() == s1.x.sum());
}

}  // namespace

TEST_CASE("one link docks the inbound truck with its outbound truck") {
  Instance inst = make_instance(1, 1, 1, 1, 3, 1, 1, 5, 10);
  inst.load(0, 0) = 4;
  inst.demand(0, 0, 2) = 4;
  Step1Solution s1 = make_empty_step1(inst);
  s1.x(0, 0) = 4;
  s1.q(0, 0) = 1;
  s1.y(0, 2) = 1;
  complete_step1(inst, s1);
  recompute_step1_shortfall(inst, s1);
  const Step2SearchResult res = solve_step2_search(inst, s1);
  REQUIRE(res.feasible);
  CHECK(res.objective.objective == 0);
  CHECK(res.lower_bound == 0);
  CHECK(res.solution.h(0, 2) == 1);
  CHECK(res.solution.SB(0, 0, 2) == 1);
}

TEST_CASE("an empty step-1 plan leaves all supply unshipped") {
  Instance inst = make_instance(2, 1, 1, 1, 2, 2, 1, 5, 10);
  inst.load(0, 0) = 2;
  inst.load(1, 0) = 3;
  Step1Solution s1 = make_empty_step1(inst);
  const Step2SearchResult res = solve_step2_search(inst, s1);
  CHECK(res.feasible);
  CHECK(res.objective.penalty == 50);
  CHECK(res.objective.waiting == 0);
  CHECK(res.lower_bound == 50);
  CHECK(res.solution.SB.sum() == 0);
}

TEST_CASE("storage overflow is reported as infeasible") {
  // Both trucks must unload 5 pallets into a storage of ID * C = 5.
  Instance inst = make_instance(2, 1, 1, 1, 2, 1, 1, 5, 10);
  inst.load(0, 0) = 5;
  inst.load(1, 0) = 5;
  const Step1Solution s1 = make_empty_step1(inst);
  CHECK_FALSE(solve_step2_search(inst, s1).feasible);
  CHECK_FALSE(solve_step2_tiny(inst, s1).feasible);
}

TEST_CASE("search is bracketed by its bound and the step-2 oracle on tiny seeds") {
  int matched = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = generate(tiny_config(seed, seed % 2 ? 100 : 3));
    CAPTURE(seed);
    for (const Step1Solution& s1 : {run_heuristic(inst), solve_step1_tiny(inst).solution}) {
      const Step2SearchResult res = solve_step2_search(inst, s1);
      const Step2OracleResult exact = solve_step2_tiny(inst, s1);
      REQUIRE(exact.feasible);
      REQUIRE(res.feasible);
      const auto report = check_step2(inst, s1, res.solution);
      CHECK_MESSAGE(report.feasible, report.summary());
      check_conservation(inst, s1, res.solution);
      CHECK(res.lower_bound <= exact.objective.objective);
      CHECK(res.objective.objective >= exact.objective.objective);
      CHECK(step2_objective(inst, s1, res.solution).objective == res.objective.objective);
      matched += res.objective.objective == exact.objective.objective;
    }
  }
  MESSAGE("search matched the step-2 oracle on " << matched << " of 80 plans");
  CHECK(matched >= 60);
}

TEST_CASE("preset instances: feasible, conserving and deterministic") {
  for (int db : {1, 5, 12}) {
    GeneratorConfig config = preset_database(db);
    config.seed = 3;
    const Instance inst = generate(config);
    const Step1Solution s1 = run_heuristic(inst);
    const Step2SearchResult res = solve_step2_search(inst, s1);
    CAPTURE(db);
    REQUIRE(res.feasible);
    CHECK(check_step2(inst, s1, res.solution).feasible);
    check_conservation(inst, s1, res.solution);
    CHECK(res.lower_bound <= res.objective.objective);
    CHECK(solve_step2_search(inst, s1).solution == res.solution);
  }
}
