#include "doctest.h"
#include "fixtures.hpp"
#include "xdock/core_model.hpp"
#include "xdock/decomposition.hpp"
#include "xdock/errors.hpp"

using namespace xdock;

namespace {

// Three trucks at t = 2: truck 1 -> d1 {p1:8, p3:2}, truck 2 -> d1 {p3:5},
// truck 3 -> d2 {p2:9}. Truck 4 idle.
struct Split {
  Instance inst;
  Step1Solution s1;
  Step2Solution s2;
};

Split sample_split() {
  Split out{fixtures::sample_day(), {}, {}};
  Instance& inst = out.inst;
  inst.outbound_doors = 3;
  Step1Solution& s1 = out.s1;
  s1 = make_empty_step1(inst);
  s1.x(0, 0) = 8;
  s1.x(0, 2) = 2;
  s1.x(1, 2) = 5;
  s1.x(2, 1) = 9;
  s1.q(0, 0) = s1.q(1, 0) = s1.q(2, 1) = 1;
  s1.y(0, 1) = s1.y(1, 1) = s1.y(2, 1) = 1;
  complete_step1(inst, s1);
  recompute_step1_shortfall(inst, s1);

  Step2Solution& s2 = out.s2;
  s2 = make_empty_step2(inst);
  s2.h(0, 0) = s2.h(1, 0) = s2.h(2, 1) = 1;
  s2.A(0, 0, 0) = 8;
  s2.A(2, 0, 2) = 2;
  s2.A(2, 1, 2) = 5;
  s2.A(1, 2, 1) = 9;
  s2.SB(0, 0, 0) = 1;
  s2.SB(2, 0, 1) = 1;
  s2.SB(2, 1, 1) = 1;
  s2.SB(1, 2, 0) = 1;
  complete_step2(inst, s1, s2);
  return out;
}

}  // namespace

TEST_CASE("sample-day split is feasible for both steps and assembles") {
  const Split sp = sample_split();
  CHECK(step1_objective(sp.s1) == 0);
  const auto r1 = check_step1(sp.inst, sp.s1);
  CHECK_MESSAGE(r1.feasible, r1.summary());
  const auto r2 = check_step2(sp.inst, sp.s1, sp.s2);
  CHECK_MESSAGE(r2.feasible, r2.summary());
  CHECK(sp.s2.St == std::vector<int>{17, 0, 0});
  CHECK(sp.s2.B.sum() == 0);
  CHECK(sp.s2.G.sum() == 0);

  const Step2Objective o2 = step2_objective(sp.inst, sp.s1, sp.s2);
  CHECK(o2.waiting == 2);
  CHECK(o2.penalty == 0);

  const Solution sol = assemble(sp.inst, sp.s1, sp.s2);
  const auto report = validate_solution(sp.inst, sol);
  CHECK_MESSAGE(report.feasible, report.summary());
  CHECK(evaluate_objective(sp.inst, sol).objective == 2);
  CHECK(sol.S(0, 0, 0, 0) == 8);
  CHECK(sol.S(1, 2, 1, 1) == 9);
  CHECK(step1_dock(sp.s1, 3) == 0);
  CHECK(step1_destination(sp.s1, 3) == -1);
  CHECK(step1_destination(sp.s1, 2) == 1);
}

TEST_CASE("unrealized step-1 load raises V by exactly sum G") {
  Split sp = sample_split();
  sp.s2.A(2, 1, 2) = 0;
  sp.s2.SB(2, 1, 1) = 0;
  complete_step2(sp.inst, sp.s1, sp.s2);
  CHECK(sp.s2.G(1, 2) == 5);
  CHECK(sp.s2.B(2, 2) == 5);
  CHECK(check_step2(sp.inst, sp.s1, sp.s2).feasible);
  CHECK(step2_objective(sp.inst, sp.s1, sp.s2).penalty == 500);

  const Solution sol = assemble(sp.inst, sp.s1, sp.s2);
  CHECK(sol.V.sum() == sp.s2.G.sum());
  CHECK(sol.V(2, 0) == 5);
  const auto report = validate_solution(sp.inst, sol);
  CHECK_MESSAGE(report.feasible, report.summary());
  CHECK(evaluate_objective(sp.inst, sol).penalty_total == 500);
}

TEST_CASE("assembly rejects inconsistent parts and names the identity") {
  Split sp = sample_split();
  sp.s2.G(0, 0) = 1;
  CHECK_THROWS_WITH_AS(assemble(sp.inst, sp.s1, sp.s2), doctest::Contains("G_jp == x_jp"), AssemblyError);

  sp = sample_split();
  sp.s2.B(1, 1) = 3;
  CHECK_THROWS_WITH_AS(assemble(sp.inst, sp.s1, sp.s2), doctest::Contains("B_ip == L_ip"), AssemblyError);

  sp = sample_split();
  sp.s1.V(0, 0, 1) = 1;
  CHECK_THROWS_WITH_AS(assemble(sp.inst, sp.s1, sp.s2), doctest::Contains("V_pd"), AssemblyError);
}

TEST_CASE("zero-demand pair assembles to an empty solution") {
  const Instance inst = fixtures::single_link(3);
  Step1Solution s1 = make_empty_step1(inst);
  Step2Solution s2 = make_empty_step2(inst);
  s2.h(0, 0) = 1;
  complete_step2(inst, s1, s2);
  const Solution sol = assemble(inst, s1, s2);
  CHECK(validate_solution(inst, sol).feasible);
  CHECK(evaluate_objective(inst, sol).objective == 0);
  CHECK(sol == fixtures::docked_at_arrival(inst));
}

TEST_CASE("step-1 checker flags planted faults") {
  Split sp = sample_split();
  sp.s1.x(1, 0) = 6;  // 11 pallets on a 10-pallet truck
  complete_step1(sp.inst, sp.s1);
  auto report = check_step1(sp.inst, sp.s1);
  CHECK(report.has_family("eq:104"));
  CHECK(report.has_family("eq:105"));

  sp = sample_split();
  sp.inst.outbound_doors = 2;
  CHECK(check_step1(sp.inst, sp.s1).has_family("eq:112"));

  sp = sample_split();
  sp.s1.q(3, 1) = 1;
  report = check_step1(sp.inst, sp.s1);
  CHECK(report.has_family("eq:305"));

  sp = sample_split();
  sp.s1.W(0, 0, 0) = 7;
  CHECK(check_step1(sp.inst, sp.s1).has_family("eq:302"));
}

TEST_CASE("step-2 checker flags planted faults") {
  Split sp = sample_split();
  sp.s2.h(2, 1) = 0;
  sp.s2.h(2, 0) = 1;  // i3 arrives at t = 2
  complete_step2(sp.inst, sp.s1, sp.s2);
  auto report = check_step2(sp.inst, sp.s1, sp.s2);
  CHECK(report.has_family("arrival"));
  CHECK(report.has_family("eq:209"));

  sp = sample_split();
  sp.s2.SB(0, 0, 0) = 0;
  sp.s2.SB(0, 0, 2) = 1;  // after truck 1 leaves at t = 2
  complete_step2(sp.inst, sp.s1, sp.s2);
  CHECK(check_step2(sp.inst, sp.s1, sp.s2).has_family("eq:218"));

  sp = sample_split();
  sp.s2.St[0] = 3;
  CHECK(check_step2(sp.inst, sp.s1, sp.s2).has_family("eq:236"));

  sp = sample_split();
  sp.inst.inbound_doors = 1;
  sp.s2.h(1, 0) = 0;
  sp.s2.h(1, 1) = 1;
  sp.s2.SB(1, 2, 0) = 0;
  sp.s2.SB(1, 2, 1) = 1;
  complete_step2(sp.inst, sp.s1, sp.s2);
  report = check_step2(sp.inst, sp.s1, sp.s2);
  CHECK(report.has_family("eq:209"));  // i2 and i3 share t = 2
  CHECK_FALSE(report.has_family("eq:237"));
}

TEST_CASE("storage cap is checked against ID * C") {
  Split sp = sample_split();
  sp.inst.inbound_doors = 3;
  sp.inst.capacity = 5;
  CHECK(check_step2(sp.inst, sp.s1, sp.s2).has_family("eq:237"));
}

TEST_CASE("step solutions round trip through JSON") {
  const Split sp = sample_split();
  const Step1Solution s1 = step1_from_json(sp.inst, to_json(sp.inst, sp.s1));
  CHECK(s1 == sp.s1);
  const Step2Solution s2 = step2_from_json(sp.inst, to_json(sp.inst, sp.s2));
  CHECK(s2 == sp.s2);

  auto doc = to_json(sp.inst, sp.s1);
  doc["schema"] = "xdock-step1/0";
  CHECK_THROWS_AS(step1_from_json(sp.inst, doc), MalformedSolutionError);
  doc = to_json(sp.inst, sp.s2);
  doc["St"] = std::vector<int>{1, 2};
  CHECK_THROWS_AS(step2_from_json(sp.inst, doc), DimensionError);
}
