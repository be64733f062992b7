// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "model_compare.hpp"
#include "xdock/decomposition.hpp"
#include "xdock/heuristic.hpp"
#include "xdock/instgen.hpp"
#include "xdock/matheuristic.hpp"
#include "xdock/milp_builder.hpp"
#include "xdock/model_io.hpp"
#include "xdock/oracle.hpp"

using namespace xdock;

namespace {

// Tolerances and sizes.
constexpr int kTinySet = 20;
constexpr int kHeuristicTarget = 50;
constexpr std::uint64_t kHeuristicSeedCap = 400;
constexpr double kTinySeconds = 60;
constexpr double kDb1Seconds = 5;
constexpr double kDb22Seconds = 600;
constexpr double kObjectiveTolerance = 1e-9;  // model objective vs integer optimum

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

Instance tiny(std::uint64_t seed) { return generate(tiny_config(seed, seed % 2 ? 100 : 3)); }

Instance preset(int db, std::uint64_t seed = 1) {
  GeneratorConfig config = preset_database(db);
  config.seed = seed;
  return generate(config);
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string failure;

  void require(bool ok, const std::string& what) {
    if (ok || !pass) {
      pass = pass && ok;
      return;
    }
    pass = false;
    failure = what;
  }
};

int failures = 0;

void report(int id, const char* name, const Outcome& out) {
  std::printf("criterion %d: %s %s (%s)%s%s\n", id, out.pass ? "PASS" : "FAIL", name, out.detail.c_str(),
              out.pass ? "" : ": ", out.failure.c_str());
  std::fflush(stdout);
  failures += out.pass ? 0 : 1;
}

OracleCaps full_enumeration() {
  OracleCaps caps;
  caps.prune = false;
  caps.reduce_symmetry = false;
  return caps;
}

OracleCaps sbc_caps() {
  OracleCaps caps;
  caps.sbc = true;
  return caps;
}

std::string seed_tag(std::uint64_t seed) { return "seed " + std::to_string(seed); }

Outcome oracle_equivalence() {
  Outcome out;
  const auto start = Clock::now();
  for (std::uint64_t seed = 1; seed <= kTinySet; ++seed) {
    const Instance inst = tiny(seed);
    const OracleResult pruned = solve_exact_tiny(inst);
    const OracleResult full = solve_exact_tiny(inst, full_enumeration());
    const LinearModel model = build_integrated(inst);
    const auto values = encode_solution(model, inst, pruned.solution);
    out.require(pruned.feasible && pruned.proven_optimal && full.proven_optimal, seed_tag(seed) + " unproven");
    out.require(pruned.objective == full.objective, seed_tag(seed) + " pruned and full enumeration differ");
    out.require(model.violated_rows(values).empty(), seed_tag(seed) + " oracle solution violates model rows");
    out.require(std::abs(model.objective_value(values) - static_cast<double>(pruned.objective)) <= kObjectiveTolerance,
                seed_tag(seed) + " model objective differs");
  }
  const double seconds = since(start);
  out.require(seconds < kTinySeconds, "runtime above the limit");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d instances, %.1f s of %.0f s", kTinySet, seconds, kTinySeconds);
  out.detail = buf;
  return out;
}

bool sbc_invariants(const Instance& inst, const Solution& sol) {
  for (int j = 1; j < inst.outbound_trucks; ++j) {
    if (outbound_dock(sol, j) < outbound_dock(sol, j - 1)) return false;
  }
  for (int j = 0; j < inst.outbound_trucks; ++j) {
    for (int g = j + 1; g < inst.outbound_trucks; ++g) {
      const int t = outbound_dock(sol, j);
      if (t > 0 && t == outbound_dock(sol, g) && destination_number(sol, j) > destination_number(sol, g)) return false;
    }
  }
  return true;
}

Outcome sbc_invariance() {
  Outcome out;
  for (std::uint64_t seed = 1; seed <= kTinySet; ++seed) {
    const Instance inst = tiny(seed);
    const OracleResult plain = solve_exact_tiny(inst);
    const OracleResult sbc = solve_exact_tiny(inst, sbc_caps());
    const LinearModel model = build_integrated(inst, {.sbc = true});
    out.require(sbc.feasible && sbc.proven_optimal, seed_tag(seed) + " unproven");
    out.require(sbc.objective == plain.objective, seed_tag(seed) + " optimum changes with symmetry breaking");
    out.require(sbc_invariants(inst, sbc.solution), seed_tag(seed) + " ordering invariants violated");
    out.require(model.violated_rows(encode_solution(model, inst, sbc.solution)).empty(),
                seed_tag(seed) + " symmetry-broken optimum violates model rows");
  }
  out.detail = std::to_string(kTinySet) + " instances";
  return out;
}

Outcome heuristic_step1() {
  Outcome out;
  const auto start = Clock::now();
  int equal = 0, repaired = 0;
  for (std::uint64_t seed = 1; seed <= kHeuristicSeedCap && equal < kHeuristicTarget; ++seed) {
    const Instance inst = tiny(seed);
    const HeuristicRun run = run_heuristic_detailed(inst);
    const Step1Solution& s1 = run.repaired.solution;
    const std::int64_t optimum = solve_step1_tiny(inst).objective;
    const std::int64_t value = step1_objective(s1);
    out.require(check_step1(inst, s1).feasible, seed_tag(seed) + " heuristic plan infeasible");
    if (run.repair_triggered()) {
      ++repaired;
      out.require(value >= optimum, seed_tag(seed) + " repaired plan below the optimum");
    } else {
      out.require(value == optimum, seed_tag(seed) + " heuristic " + std::to_string(value) + " vs optimum " +
                                        std::to_string(optimum));
      ++equal;
    }
  }
  const double seconds = since(start);
  out.require(equal >= kHeuristicTarget, "too few non-repair instances");
  out.require(seconds < kTinySeconds, "runtime above the limit");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d non-repair equal, %d repaired bounded, %.1f s", equal, repaired, seconds);
  out.detail = buf;
  return out;
}

Outcome decomposition_soundness() {
  Outcome out;
  int runs = 0, feasible = 0;
  double worst_gap = 0, total_gap = 0;
  for (std::uint64_t seed = 1; seed <= kTinySet; ++seed) {
    const Instance inst = tiny(seed);
    const std::int64_t optimum = solve_exact_tiny(inst).objective;
    for (PipelineMode mode : {PipelineMode::exact_exact, PipelineMode::warmstart, PipelineMode::hybrid}) {
      const PipelineResult run = run_pipeline(inst, mode);
      const Solution assembled = assemble(inst, run.step1, run.step2);
      const ValidationReport check = validate_solution(inst, assembled);
      const std::int64_t value = evaluate_objective(inst, assembled).objective;
      ++runs;
      feasible += check.feasible && check.violations.empty();
      const std::string tag = seed_tag(seed) + " " + to_string(mode);
      out.require(check.feasible && check.violations.empty(), tag + " infeasible: " + check.summary());
      out.require(value >= optimum, tag + " below the integrated optimum");
      out.require(value == run.report.objective.objective, tag + " report disagrees with the assembled solution");
      const double gap = static_cast<double>(value - optimum) / static_cast<double>(std::max<std::int64_t>(optimum, 1));
      worst_gap = std::max(worst_gap, gap);
      total_gap += gap;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/%d feasible, mean gap %.4f, max gap %.4f", feasible, runs,
                total_gap / std::max(runs, 1), worst_gap);
  out.detail = buf;
  return out;
}

std::string auxiliary_fault(const Instance& inst, const Solution& sol) {
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    for (int j = 0; j < inst.outbound_trucks; ++j) {
      const int link = link_count(sol, i, j);
      if (sol.qy(i, j) != outbound_dock(sol, j) * link) return "qy";
      if (sol.qh(i, j) != inbound_dock(sol, i) * link) return "qh";
    }
  }
  for (int j = 0; j < inst.outbound_trucks; ++j) {
    for (int p = 0; p < inst.products; ++p) {
      for (int d = 0; d < inst.destinations; ++d) {
        if (sol.WY(j, p, d) != outbound_dock(sol, j) * sol.WB(j, p, d)) return "WY";
      }
    }
    for (int t = 0; t < inst.periods; ++t) {
      if (sol.LJ(j, t) != sol.y(j, t) * outbound_load(sol, j)) return "LJ";
      if (sol.DT(j, t) != sol.y(j, t) * destination_number(sol, j)) return "DT";
    }
  }
  return "";
}

Outcome linearization() {
  Outcome out;
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= kTinySet; ++seed) {
    const Instance inst = tiny(seed);
    for (const OracleCaps& caps : {OracleCaps{}, full_enumeration(), sbc_caps()}) {
      const OracleResult res = solve_exact_tiny(inst, caps);
      const std::string fault = auxiliary_fault(inst, res.solution);
      out.require(fault.empty(), seed_tag(seed) + " " + fault + " disagrees with its product");
      ++checked;
    }
  }
  out.detail = std::to_string(checked) + " oracle solutions";
  return out;
}

// Independent recomputation from the primary grids.
std::string conservation_fault(const Instance& inst, const Solution& sol) {
  std::int64_t inflow = 0, outflow = 0;
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    if (inbound_dock(sol, i) == 0) continue;
    for (int p = 0; p < inst.products; ++p) inflow += inst.load(i, p);
  }
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    for (int j = 0; j < inst.outbound_trucks; ++j) {
      for (int p = 0; p < inst.products; ++p) {
        for (int d = 0; d < inst.destinations; ++d) outflow += sol.S(i, j, p, d);
      }
    }
  }
  const StorageProfile profile = storage_profile(inst, sol);
  if (sol.St.empty() || sol.St.back() != inflow - outflow) return "stored St_r";
  if (profile.levels.empty() || profile.levels.back() != inflow - outflow) return "storage profile St_r";
  for (int p = 0; p < inst.products; ++p) {
    for (int d = 0; d < inst.destinations; ++d) {
      std::int64_t shipped = 0, requested = 0;
      for (int i = 0; i < inst.inbound_trucks; ++i) {
        for (int j = 0; j < inst.outbound_trucks; ++j) shipped += sol.S(i, j, p, d);
      }
      for (int t = 0; t < inst.periods; ++t) requested += inst.demand(p, d, t);
      if (shipped + sol.V(p, d) != requested) return "coverage";
    }
  }
  return "";
}

std::string step2_fault(const Instance& inst, const PipelineResult& run) {
  for (int p = 0; p < inst.products; ++p) {
    std::int64_t shipped = 0, unshipped = 0, supply = 0;
    for (int i = 0; i < inst.inbound_trucks; ++i) {
      for (int j = 0; j < inst.outbound_trucks; ++j) shipped += run.step2.A(i, j, p);
      unshipped += run.step2.B(i, p);
      supply += inst.load(i, p);
    }
    if (shipped + unshipped != supply) return "sum A + sum B";
  }
  for (int j = 0; j < inst.outbound_trucks; ++j) {
    for (int p = 0; p < inst.products; ++p) {
      std::int64_t shipped = 0;
      for (int i = 0; i < inst.inbound_trucks; ++i) shipped += run.step2.A(i, j, p);
      if (shipped + run.step2.G(j, p) != run.step1.x(j, p)) return "sum A + sum G";
    }
  }
  return "";
}

Outcome conservation() {
  Outcome out;
  int solutions = 0, pipelines = 0;
  auto check_run = [&](const Instance& inst, const PipelineResult& run, const std::string& tag) {
    const std::string fault = conservation_fault(inst, run.solution);
    out.require(fault.empty(), tag + " " + fault);
    const std::string s2 = step2_fault(inst, run);
    out.require(s2.empty(), tag + " " + s2);
    ++solutions;
    ++pipelines;
  };
  for (std::uint64_t seed = 1; seed <= kTinySet; ++seed) {
    const Instance inst = tiny(seed);
    for (const OracleCaps& caps : {OracleCaps{}, sbc_caps()}) {
      const std::string fault = conservation_fault(inst, solve_exact_tiny(inst, caps).solution);
      out.require(fault.empty(), seed_tag(seed) + " oracle " + fault);
      ++solutions;
    }
    for (PipelineMode mode : {PipelineMode::exact_exact, PipelineMode::hybrid}) {
      check_run(inst, run_pipeline(inst, mode), seed_tag(seed) + " " + to_string(mode));
    }
  }
  for (int db : {1, 6, 12}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const Instance inst = preset(db, seed);
      check_run(inst, run_pipeline(inst, PipelineMode::hybrid), inst.name);
    }
  }
  out.detail = std::to_string(solutions) + " solutions, " + std::to_string(pipelines) + " with step identities";
  return out;
}

LinearModel two_variable_model() {
  LinearModel model("TWOVAR");
  const int x = model.add_integer("x", 0, 4);
  const int y = model.add_variable("y", 1, 2.5, VarType::continuous);
  model.add_row("c1", Sense::le, 6, {{x, 1}, {y, 2}});
  model.add_row("c2", Sense::ge, -1, {{x, 1}, {y, -1}});
  model.add_row("c3", Sense::eq, 0.75, {{y, 0.5}});
  model.set_objective({{x, 3}, {y, -0.5}}, 2);
  return model;
}

Outcome export_fidelity() {
  Outcome out;
  const std::string data = std::string(XDOCK_SOURCE_DIR) + "/tests/data/";
  const LinearModel golden = two_variable_model();
  out.require(export_mps(golden) == read_text_file(data + "two_var.mps"), "golden MPS mismatch");
  out.require(export_lp(golden) == read_text_file(data + "two_var.lp"), "golden LP mismatch");

  int models = 1;
  std::vector<LinearModel> cases{golden};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = tiny(seed);
    cases.push_back(build_integrated(inst));
    cases.push_back(build_integrated(inst, {.sbc = true}));
  }
  const Instance db1 = preset(1);
  cases.push_back(build_integrated(db1, {.sbc = true}));
  cases.push_back(build_step1(db1));
  cases.push_back(build_step2(db1, run_heuristic(db1)));
  for (const LinearModel& model : cases) {
    NameMap names;
    const std::string mps = export_mps(model, &names);
    const std::string lp = export_lp(model);
    const std::string expected = fixtures::canonical_multisets(model);
    const LinearModel from_mps = read_mps(mps, names);
    const LinearModel from_lp = read_lp(lp);
    const std::string tag = model.name();
    out.require(fixtures::canonical_multisets(from_mps) == expected, tag + " MPS round trip");
    out.require(fixtures::canonical_multisets(from_lp) == expected, tag + " LP round trip");
    out.require(from_mps.num_rows() == model.num_rows() && from_mps.num_variables() == model.num_variables(),
                tag + " MPS counts");
    NameMap again;
    out.require(export_mps(from_mps, &again) == mps, tag + " MPS re-export not byte-identical");
    out.require(export_lp(from_mps) == lp, tag + " LP re-export not byte-identical");
    ++models;
  }
  out.detail = std::to_string(models) + " models, golden files matched";
  return out;
}

Outcome scale_smoke() {
  Outcome out;
  std::string detail;
  for (const auto& [db, limit] : std::vector<std::pair<int, double>>{{1, kDb1Seconds}, {12, 0}, {22, kDb22Seconds}}) {
    const Instance inst = preset(db);
    const auto start = Clock::now();
    const PipelineResult run = run_pipeline(inst, PipelineMode::hybrid);
    const double seconds = since(start);
    const ValidationReport check = validate_solution(inst, run.solution);
    const std::string tag = "db" + std::to_string(db);
    out.require(check.feasible, tag + " infeasible: " + check.summary());
    out.require(limit == 0 || seconds < limit, tag + " above its time limit");
    char buf[96];
    std::snprintf(buf, sizeof buf, "%sdb%d m=%d f=%d obj %lld in %.2f s", detail.empty() ? "" : ", ", db,
                  inst.inbound_trucks, inst.destinations, static_cast<long long>(run.report.objective.objective),
                  seconds);
    detail += buf;
  }
  out.detail = detail;
  return out;
}

Outcome determinism() {
  Outcome out;
  int pairs = 0;
  auto compare = [&](const Instance& inst, PipelineMode mode) {
    const std::string a = dump_report(run_pipeline(inst, mode).report);
    const std::string b = dump_report(run_pipeline(inst, mode).report);
    out.require(a == b, inst.name + " " + to_string(mode) + " reports differ");
    ++pairs;
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (PipelineMode mode : {PipelineMode::exact_exact, PipelineMode::warmstart, PipelineMode::hybrid}) {
      compare(tiny(seed), mode);
    }
  }
  for (int db : {1, 12, 22}) {
    GeneratorConfig config = preset_database(db);
    config.seed = 7;
    const Instance first = generate(config);
    const Instance second = generate(config);
    out.require(dump_instance(first) == dump_instance(second), first.name + " generator not deterministic");
    compare(first, PipelineMode::hybrid);
  }
  out.detail = std::to_string(pairs) + " report pairs byte-identical";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"symmetry-breaking value invariance", sbc_invariance},
      {"heuristic step-1 optimality", heuristic_step1},
      {"decomposition soundness", decomposition_soundness},
      {"linearization substitution", linearization},
      {"conservation", conservation},
      {"export fidelity", export_fidelity},
      {"scale smoke", scale_smoke},
      {"determinism", determinism},
  };
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.failure = std::string("exception: ") + e.what();
    }
    report(id, name, out);
  }
  std::printf("%d of %d criteria passed\n", id - failures, id);
  return failures == 0 ? 0 : 1;
}
