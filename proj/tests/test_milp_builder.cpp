#include "doctest.h"
#include "fixtures.hpp"
#include "xdock/core_model.hpp"
#include "xdock/errors.hpp"
#include "xdock/milp_builder.hpp"

using namespace xdock;

namespace {

Instance sample_day_solved(Solution& sol) {
  Instance inst = fixtures::sample_day();
  inst.outbound_doors = 3;
  sol = make_empty_solution(inst);
  sol.h(0, 0) = 1;
  sol.h(1, 0) = 1;
  sol.h(2, 1) = 1;
  // truck 1 -> d1 with p1:8 from i1 and p3:2 from i3, truck 2 -> d1 with p3:5,
  // truck 3 -> d2 with p2:9.
  for (int j : {0, 1, 2}) sol.y(j, 1) = 1;
  sol.q(0, 0) = 1;
  sol.q(1, 0) = 1;
  sol.q(2, 1) = 1;
  sol.S(0, 0, 0, 0) = 8;
  sol.S(2, 0, 2, 0) = 2;
  sol.S(2, 1, 2, 0) = 5;
  sol.S(1, 2, 1, 1) = 9;
  sol.SB(0, 0, 0) = 1;
  sol.SB(2, 0, 1) = 1;
  sol.SB(2, 1, 1) = 1;
  sol.SB(1, 2, 0) = 1;
  complete_solution(inst, sol);
  return inst;
}

}  // namespace

TEST_CASE("variable family sizes for m=5, n=8, k=5, f=3, r=5") {
  Instance inst = make_instance(5, 8, 5, 3, 5, 3, 3, 10, 100);
  const LinearModel model = build_integrated(inst);
  CHECK(model.count_variables_with_prefix("S_") == 600);
  CHECK(model.count_variables_with_prefix("y_") == 40);
  CHECK(model.count_variables_with_prefix("SB_") == 5 * 8 * 5);
  CHECK(model.count_variables_with_prefix("DT_") == 0);
  int binaries = 0;
  for (const auto& v : model.variables()) {
    if (v.name.starts_with("y_")) CHECK(v.type == VarType::binary);
    if (v.name.starts_with("S_")) CHECK(v.type == VarType::integer);
    binaries += v.type == VarType::binary ? 1 : 0;
  }
  CHECK(binaries == 200 + 40 + 25 + 24 + 120);
  CHECK(model.metadata().kind == "integrated");
  CHECK_FALSE(model.metadata().sbc);
}

TEST_CASE("symmetry breaking row counts") {
  SUBCASE("n=3, r=2, f=2") {
    Instance inst = make_instance(1, 3, 1, 2, 2, 1, 2, 10, 100);
    const LinearModel plain = build_integrated(inst);
    const LinearModel sbc = build_integrated(inst, {.sbc = true});
    CHECK(sbc.count_rows_with_prefix("sbc38_") == 2);
    CHECK(sbc.count_rows_with_prefix("sbc42_") == 2 * 3);
    CHECK(sbc.count_rows_with_prefix("l41") == 3 * 3 * 2);
    CHECK(sbc.num_rows() - plain.num_rows() == 2 + 6 + 18);
    CHECK(sbc.num_variables() - plain.num_variables() == 3 * 2);
  }
  SUBCASE("n=1 has only the DT rows") {
    Instance inst = make_instance(1, 1, 1, 1, 4, 1, 1, 10, 100);
    const LinearModel sbc = build_integrated(inst, {.sbc = true});
    CHECK(sbc.count_rows_with_prefix("sbc") == 0);
    CHECK(sbc.count_rows_with_prefix("l41") == 3 * 4);
  }
}

TEST_CASE("symmetry breaking twice is refused") {
  Instance inst = make_instance(1, 2, 1, 1, 2, 1, 1, 10, 100);
  LinearModel model = build_integrated(inst);
  add_symmetry_breaking(model, inst);
  CHECK(model.metadata().sbc);
  CHECK_THROWS_AS(add_symmetry_breaking(model, inst), ModelError);
  Instance other = inst;
  other.capacity = 11;
  LinearModel fresh = build_integrated(inst);
  CHECK_THROWS_AS(add_symmetry_breaking(fresh, other), ModelError);
}

TEST_CASE("building twice gives the same model") {
  const Instance inst = fixtures::sample_day();
  const LinearModel a = build_integrated(inst, {.sbc = true});
  const LinearModel b = build_integrated(inst, {.sbc = true});
  REQUIRE(a.num_variables() == b.num_variables());
  REQUIRE(a.num_rows() == b.num_rows());
  for (int v = 0; v < a.num_variables(); ++v) CHECK(a.variables()[v].name == b.variables()[v].name);
  for (int r = 0; r < a.num_rows(); ++r) {
    CHECK(a.rows()[r].name == b.rows()[r].name);
    CHECK(a.rows()[r].terms.size() == b.rows()[r].terms.size());
  }
}

TEST_CASE("model objective equals the evaluator on a feasible assignment") {
  Solution sol;
  const Instance inst = sample_day_solved(sol);
  const auto report = validate_solution(inst, sol);
  REQUIRE_MESSAGE(report.feasible, report.summary());
  const LinearModel model = build_integrated(inst);
  const auto values = encode_solution(model, inst, sol);
  CHECK(model.violated_rows(values).empty());
  CHECK(model.objective_value(values) == doctest::Approx(evaluate_objective(inst, sol).objective));

  // Idle trucks have Y = 0, so with symmetry breaking the idle truck 4 must come first.
  const LinearModel sbc = build_integrated(inst, {.sbc = true});
  CHECK(sbc.violated_rows(encode_solution(sbc, inst, sol)) == std::vector<std::string>{"sbc38_4"});
  CHECK(evaluate_objective(inst, sol).objective == 1 + 0 + 0 + 1);
}

TEST_CASE("rows catch the same faults as the validator") {
  Solution sol;
  const Instance inst = sample_day_solved(sol);
  const LinearModel model = build_integrated(inst);
  Solution bad = sol;
  bad.h(0, 0) = 0;
  bad.h(0, 1) = 1;
  fill_auxiliaries(inst, bad);
  bad.St = std::vector<int>(3, 0);
  const auto violated = model.violated_rows(encode_solution(model, inst, bad));
  bool eq17 = false;
  for (const auto& name : violated) eq17 |= row_family(name) == "eq:17";
  CHECK(eq17);
  CHECK(validate_solution(inst, bad).has_family("eq:17"));
}

TEST_CASE("row family names") {
  CHECK(row_family("eq9_3") == "eq:9");
  CHECK(row_family("eq20a_1_2_1") == "eq:20");
  CHECK(row_family("l28b_1_2") == "eq:28");
  CHECK(row_family("sbc42_1_2_1") == "eq:42");
  CHECK(row_family("l41c_1_1") == "eq:41");
  CHECK(row_family("arr_2") == "arrival");
}

TEST_CASE("decode: zero assignment on a zero-demand instance") {
  const Instance inst = make_instance(1, 1, 1, 1, 2, 1, 1, 10, 100);
  const LinearModel model = build_integrated(inst);
  Assignment zeros;
  for (const auto& v : model.variables()) zeros[v.name] = 0;
  const auto decoded = decode_solution(model, inst, zeros);
  CHECK(decoded.warnings.empty());
  CHECK(evaluate_objective(inst, decoded.solution).objective == 0);
}

TEST_CASE("decode: near-integral values round silently") {
  Solution sol;
  const Instance inst = sample_day_solved(sol);
  const LinearModel model = build_integrated(inst);
  Assignment a = to_assignment(model, encode_solution(model, inst, sol));
  a.at("y_1_2") = 0.9999997;
  auto decoded = decode_solution(model, inst, a);
  CHECK(decoded.warnings.empty());
  CHECK(decoded.solution == sol);
  a.at("y_1_2") = 0.9995;
  decoded = decode_solution(model, inst, a);
  CHECK(decoded.warnings.size() == 1);
  CHECK(decoded.solution.y(0, 1) == 1);
}

TEST_CASE("decode errors") {
  Solution sol;
  const Instance inst = sample_day_solved(sol);
  const LinearModel model = build_integrated(inst);
  Assignment a = to_assignment(model, encode_solution(model, inst, sol));
  SUBCASE("missing variable") {
    a.erase("S_1_1_1_1");
    CHECK_THROWS_AS(decode_solution(model, inst, a), DecodeError);
  }
  SUBCASE("unknown variable") {
    a["Z_1"] = 0;
    CHECK_THROWS_AS(decode_solution(model, inst, a), DecodeError);
  }
  SUBCASE("out of bounds") {
    a.at("y_1_2") = 1.01;
    CHECK_THROWS_AS(decode_solution(model, inst, a), DecodeError);
  }
}

TEST_CASE("decode of an encoded solution is the identity") {
  Solution sol;
  const Instance inst = sample_day_solved(sol);
  const LinearModel model = build_integrated(inst, {.sbc = true});
  const auto decoded = decode_solution(model, inst, to_assignment(model, encode_solution(model, inst, sol)));
  CHECK(decoded.solution == sol);
}

TEST_CASE("an arrival after the horizon is a metadata warning") {
  Instance inst = fixtures::single_link(2);
  inst.arrival = {3};
  const LinearModel model = build_integrated(inst);
  REQUIRE_FALSE(model.metadata().warnings.empty());
  CHECK(model.metadata().warnings.front().find("infeasible") != std::string::npos);
}

TEST_CASE("linear model guards") {
  LinearModel model;
  const int x = model.add_integer("x", 0, 4);
  CHECK_THROWS_AS(model.add_integer("x", 0, 1), ModelError);
  CHECK_THROWS_AS(model.add_integer("z", 2, 1), ModelError);
  CHECK_THROWS_AS(model.add_variable("b", 0, 2, VarType::binary), ModelError);
  model.add_row("r", Sense::le, 3, {{x, 1}, {x, 2}, {x, -3}});
  CHECK(model.rows().front().terms.empty());
  model.add_row("s", Sense::le, 3, {{x, 1}, {x, 2}});
  CHECK(model.rows().back().terms.size() == 1);
  CHECK(model.rows().back().terms.front().coef == 3);
  CHECK_THROWS_AS(model.add_row("t", Sense::le, 0, {{7, 1}}), ModelError);
}
