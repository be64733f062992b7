#include "doctest.h"
#include "fixtures.hpp"
#include "xdock/core_model.hpp"
#include "xdock/errors.hpp"

using namespace xdock;

namespace {

// dock(i) = 2, dock(j) = 3, one pallet shipped, two pallets short.
Solution one_link_solution(const Instance& inst) {
  Solution sol = make_empty_solution(inst);
  sol.h(0, 1) = 1;
  sol.y(0, 2) = 1;
  sol.q(0, 0) = 1;
  sol.S(0, 0, 0, 0) = 1;
  sol.SB(0, 0, 1) = 1;
  complete_solution(inst, sol);
  return sol;
}

Instance one_link_instance() {
  Instance inst = fixtures::single_link(3);
  inst.load(0, 0) = 1;
  inst.demand(0, 0, 2) = 3;
  return inst;
}

}  // namespace

TEST_CASE("zero-demand instance with every inbound truck docked is feasible and costs nothing") {
  Instance inst = make_instance(2, 2, 1, 1, 3, 2, 1, 10, 100);
  inst.arrival = {1, 3};
  const Solution sol = fixtures::docked_at_arrival(inst);
  CHECK(evaluate_objective(inst, sol) == ObjectiveBreakdown{0, 0, 0});
  const auto report = validate_solution(inst, sol);
  CHECK(report.feasible);
  CHECK(report.violations.empty());
}

TEST_CASE("one link from period 2 to period 3 with two pallets short") {
  const Instance inst = one_link_instance();
  const Solution sol = one_link_solution(inst);
  CHECK(evaluate_objective(inst, sol) == ObjectiveBreakdown{1, 200, 201});
  CHECK(objective_from_auxiliaries(inst, sol) == 201);
  const auto report = validate_solution(inst, sol);
  CHECK_MESSAGE(report.feasible, report.summary());
}

TEST_CASE("one more uncovered pallet costs exactly PC") {
  Instance inst = one_link_instance();
  inst.demand(0, 0, 2) = 4;
  Solution sol = one_link_solution(inst);
  const auto before = evaluate_objective(inst, sol).objective;
  sol.V(0, 0) += 1;
  CHECK(evaluate_objective(inst, sol).objective - before == inst.penalty);
}

TEST_CASE("waiting is charged per link, not per pallet") {
  Instance inst = fixtures::single_link(3);
  inst.load(0, 0) = 5;
  inst.demand(0, 0, 2) = 5;
  Solution sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  sol.y(0, 2) = 1;
  sol.q(0, 0) = 1;
  sol.S(0, 0, 0, 0) = 5;
  sol.SB(0, 0, 0) = 1;
  complete_solution(inst, sol);
  CHECK(evaluate_objective(inst, sol) == ObjectiveBreakdown{2, 0, 2});
  CHECK(validate_solution(inst, sol).feasible);
}

TEST_CASE("docking more inbound trucks than inbound doors violates eq:9") {
  Instance inst = make_instance(3, 1, 1, 1, 2, 2, 1, 10, 100);
  Solution sol = make_empty_solution(inst);
  for (int i = 0; i < 3; ++i) sol.h(i, 0) = 1;
  complete_solution(inst, sol);
  const auto report = validate_solution(inst, sol);
  CHECK_FALSE(report.feasible);
  REQUIRE(report.has_family("eq:9"));
  for (const auto& v : report.violations) {
    CHECK(v.family == "eq:9");
    CHECK(v.indices == std::vector<int>{1});
    CHECK(v.lhs == 3);
    CHECK(v.rhs == 2);
    CHECK(v.slack < 0);
  }
}

TEST_CASE("docking before arrival is reported") {
  Instance inst = fixtures::single_link(3);
  inst.arrival = {2};
  Solution sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  complete_solution(inst, sol);
  CHECK(validate_solution(inst, sol).has_family("arrival"));
}

TEST_CASE("a link used in two periods is malformed") {
  const Instance inst = one_link_instance();
  Solution sol = one_link_solution(inst);
  sol.SB(0, 0, 2) = 1;
  CHECK_THROWS_AS(evaluate_objective(inst, sol), MalformedSolutionError);
  CHECK(validate_solution(inst, sol).has_family("eq:8"));
}

TEST_CASE("shape mismatch is a dimension error") {
  const Instance inst = one_link_instance();
  Solution sol = one_link_solution(inst);
  sol.V = Grid<int, 2>({2, 1});
  CHECK_THROWS_AS(evaluate_objective(inst, sol), DimensionError);
  CHECK_THROWS_AS(validate_solution(inst, sol), DimensionError);
}

TEST_CASE("storage: unloading and loading in the same period leaves nothing") {
  Instance inst = fixtures::single_link(3);
  inst.load(0, 0) = 10;
  inst.demand(0, 0, 0) = 10;
  Solution sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  sol.y(0, 0) = 1;
  sol.q(0, 0) = 1;
  sol.S(0, 0, 0, 0) = 10;
  sol.SB(0, 0, 0) = 1;
  complete_solution(inst, sol);
  const auto profile = storage_profile(inst, sol);
  CHECK(profile.levels == std::vector<std::int64_t>{0, 0, 0});
  CHECK_FALSE(profile.negative);
  CHECK(validate_solution(inst, sol).feasible);
}

TEST_CASE("storage: unloading at t=1 and loading at t=2 keeps ten pallets for one period") {
  Instance inst = fixtures::single_link(3);
  inst.load(0, 0) = 10;
  inst.demand(0, 0, 1) = 10;
  Solution sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  sol.y(0, 1) = 1;
  sol.q(0, 0) = 1;
  sol.S(0, 0, 0, 0) = 10;
  sol.SB(0, 0, 0) = 1;
  complete_solution(inst, sol);
  CHECK(storage_profile(inst, sol).levels == std::vector<std::int64_t>{10, 0, 0});
  CHECK(validate_solution(inst, sol).feasible);
}

TEST_CASE("storage above ID*C violates eq:37") {
  Instance inst = make_instance(2, 1, 1, 1, 2, 1, 1, 10, 100);
  inst.load(0, 0) = 10;
  inst.load(1, 0) = 10;
  Solution sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  sol.h(1, 1) = 1;
  complete_solution(inst, sol);
  CHECK(sol.St == std::vector<int>{10, 20});
  const auto report = validate_solution(inst, sol);
  CHECK(report.has_family("eq:37"));
  CHECK(storage_profile(inst, sol).over_cap == std::vector<int>{2});
}

TEST_CASE("loading before the goods arrive drives storage negative") {
  Instance inst = fixtures::single_link(3);
  inst.load(0, 0) = 4;
  inst.demand(0, 0, 0) = 4;
  Solution sol = make_empty_solution(inst);
  sol.h(0, 1) = 1;
  sol.y(0, 0) = 1;
  sol.q(0, 0) = 1;
  sol.S(0, 0, 0, 0) = 4;
  sol.SB(0, 0, 0) = 1;
  complete_solution(inst, sol);
  CHECK(storage_profile(inst, sol).negative);
  const auto report = validate_solution(inst, sol);
  CHECK(report.has_family("eq:17"));
  CHECK(report.has_family("domain:St"));
}

TEST_CASE("JIT: carrying a product in the wrong period violates eq:22") {
  Instance inst = fixtures::single_link(3);
  inst.load(0, 0) = 2;
  inst.demand(0, 0, 2) = 2;
  Solution sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  sol.y(0, 1) = 1;
  sol.q(0, 0) = 1;
  sol.S(0, 0, 0, 0) = 2;
  sol.SB(0, 0, 0) = 1;
  complete_solution(inst, sol);
  CHECK(validate_solution(inst, sol).has_family("eq:22"));
}

TEST_CASE("carrying goods for a destination the truck is not assigned to violates eq:30") {
  Instance inst = fixtures::single_link(3);
  inst.load(0, 0) = 2;
  inst.demand(0, 0, 0) = 2;
  Solution sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  sol.y(0, 0) = 1;
  sol.S(0, 0, 0, 0) = 2;
  sol.SB(0, 0, 0) = 1;
  complete_solution(inst, sol);
  CHECK(validate_solution(inst, sol).has_family("eq:30"));
}

TEST_CASE("a stale auxiliary is reported under its linearization family") {
  const Instance inst = one_link_instance();
  Solution sol = one_link_solution(inst);
  sol.qy(0, 0) = 2;
  sol.LJ(0, 2) = 0;
  const auto report = validate_solution(inst, sol);
  CHECK(report.has_family("eq:28"));
  CHECK(report.has_family("eq:33"));
}

TEST_CASE("instance JSON round trip") {
  const Instance inst = fixtures::sample_day();
  const Instance back = instance_from_json(to_json(inst));
  CHECK(dump_instance(back) == dump_instance(inst));
  CHECK(fingerprint(back) == fingerprint(inst));
  Instance renamed = inst;
  renamed.name = "other";
  CHECK(fingerprint(renamed) == fingerprint(inst));
}

TEST_CASE("instance loader rejects bad data") {
  nlohmann::json doc = to_json(fixtures::sample_day());
  SUBCASE("overloaded inbound truck") {
    doc["L"][0][0] = 11;
    CHECK_THROWS_AS(instance_from_json(doc), InstanceError);
  }
  SUBCASE("arrival outside the horizon") {
    doc["E"][0] = 4;
    CHECK_THROWS_AS(instance_from_json(doc), InstanceError);
  }
  SUBCASE("wrong grid shape") {
    doc["R"].erase(0);
    CHECK_THROWS_AS(instance_from_json(doc), InstanceError);
  }
  SUBCASE("unknown schema") {
    doc["schema"] = "something/2";
    CHECK_THROWS_AS(instance_from_json(doc), InstanceError);
  }
}

TEST_CASE("multi-period demand is accepted but flagged") {
  Instance inst = fixtures::single_link(3);
  inst.demand(0, 0, 0) = 1;
  inst.demand(0, 0, 2) = 1;
  CHECK(inst.has_multi_period_demand());
  CHECK(instance_warnings(inst).size() == 1);
  CHECK_NOTHROW(check_instance(inst));
}

TEST_CASE("solution JSON round trip, with and without auxiliaries") {
  const Instance inst = one_link_instance();
  const Solution sol = one_link_solution(inst);
  nlohmann::json doc = to_json(inst, sol);
  CHECK(solution_from_json(inst, doc) == sol);
  doc.erase("auxiliaries");
  CHECK(solution_from_json(inst, doc) == sol);
  doc["V"] = nlohmann::json::array({nlohmann::json::array({1, 2})});
  CHECK_THROWS_AS(solution_from_json(inst, doc), DimensionError);
}
