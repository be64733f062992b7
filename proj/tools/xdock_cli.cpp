// xdock: generate, build, solve, validate and benchmark cross-dock instances.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "xdock/bench.hpp"
#include "xdock/decomposition.hpp"
#include "xdock/errors.hpp"
#include "xdock/heuristic.hpp"
#include "xdock/instgen.hpp"
#include "xdock/matheuristic.hpp"
#include "xdock/milp_builder.hpp"
#include "xdock/model_io.hpp"

using namespace xdock;

namespace {

struct Source {
  std::string in;
  int db = 0;
  std::optional<std::uint64_t> seed;
  std::string config;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("--in", src.in, "instance JSON (default: generate from --db/--seed)");
  cmd->add_option("--db", src.db, "database preset 1-22 (0: tiny instance)")->check(CLI::Range(0, 22));
  cmd->add_option("--seed", src.seed, "generator seed (default: 1, or the config's)");
}

Instance load_source(const Source& src) {
  if (!src.in.empty()) return load_instance_file(src.in);
  GeneratorConfig config;
  if (!src.config.empty()) {
    config = config_from_json(nlohmann::json::parse(read_text_file(src.config)));
  } else {
    config = src.db == 0 ? tiny_config(src.seed.value_or(1)) : preset_database(src.db);
  }
  if (src.seed) config.seed = *src.seed;
  return generate(config);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

std::optional<ExternalSolver> pick_solver(const std::string& command) {
  if (!command.empty()) return ExternalSolver{command, "", false};
  return solver_from_environment();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-dock truck scheduling: models, heuristics, pipelines and benchmarks"};
  app.require_subcommand(1);

  Source gen_src;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--db", gen_src.db, "database preset 1-22 (0: tiny instance)")->check(CLI::Range(0, 22));
  gen->add_option("--seed", gen_src.seed, "generator seed");
  gen->add_option("--config", gen_src.config, "generator config JSON (overrides --db)");
  gen->add_option("--in", gen_src.config, "same as --config");
  gen->add_option("--out", gen_out, "instance JSON (default: stdout)");

  Source build_src;
  std::string build_out, build_kind = "integrated", step1_file, build_format;
  bool build_sbc = false;
  auto* build = app.add_subcommand("build", "emit a model as MPS or LP");
  add_source(build, build_src);
  build->add_option("--out", build_out, "model file; .lp selects LP, anything else MPS (default: stdout MPS)");
  build->add_option("--format", build_format, "mps or lp")->check(CLI::IsMember({"mps", "lp"}));
  build->add_option("--model", build_kind, "integrated, step1 or step2")
      ->check(CLI::IsMember({"integrated", "step1", "step2"}));
  build->add_option("--step1", step1_file, "step-1 plan JSON for --model step2 (default: the heuristic's)");
  build->add_flag("--sbc", build_sbc, "add the symmetry-breaking rows");

  Source heur_src;
  std::string heur_out;
  auto* heur = app.add_subcommand("heur", "run the constructive heuristic (step-1 plan)");
  add_source(heur, heur_src);
  heur->add_option("--out", heur_out, "step-1 plan JSON (default: stdout)");

  Source solve_src;
  std::string solve_out, solve_mode = "hybrid", solve_solution, solve_solver;
  double time_limit = 60, total_limit = 0;
  bool solve_timing = false;
  auto* solve = app.add_subcommand("solve", "run a pipeline or a single-model method");
  add_source(solve, solve_src);
  solve->add_option("--mode", solve_mode, "exact-exact, warmstart, hybrid, oracle, integrated or integrated+sbc")
      ->check(CLI::IsMember({"exact-exact", "warmstart", "hybrid", "oracle", "integrated", "integrated+sbc"}));
  solve->add_option("--out", solve_out, "run report JSON (default: stdout)");
  solve->add_option("--solution", solve_solution, "write the assembled solution JSON here");
  solve->add_option("--time-limit", time_limit, "seconds per step")->check(CLI::PositiveNumber);
  solve->add_option("--total-limit", total_limit, "seconds per run (default: 3 x --time-limit)");
  solve->add_option("--solver", solve_solver, "external solver command (default: $XDOCK_SOLVER)");
  solve->add_flag("--timing", solve_timing, "include wall times in the report");

  Source val_src;
  std::string val_solution, val_out;
  auto* validate = app.add_subcommand("validate", "check a solution or a step-1 plan");
  add_source(validate, val_src);
  validate->add_option("--solution", val_solution, "solution or step-1 plan JSON")->required();
  validate->add_option("--out", val_out, "validation report JSON (default: stdout)");

  std::string bench_plan, bench_out, bench_json, bench_solver;
  int jobs = 1;
  double bench_limit = 0;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "run a benchmark plan");
  bench->add_option("--in,--plan", bench_plan, "plan JSON")->required();
  bench->add_option("--out", bench_out, "results CSV (default: stdout)");
  bench->add_option("--json", bench_json, "results JSON");
  bench->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);
  bench->add_option("--time-limit", bench_limit, "override the plan's per-step limit");
  bench->add_option("--seed", bench_seed, "add this seed to every generated entry without seeds");
  bench->add_option("--solver", bench_solver, "external solver command (default: plan, then $XDOCK_SOLVER)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      emit(gen_out, dump_instance(load_source(gen_src)));
      return 0;
    }
    if (*build) {
      const Instance inst = load_source(build_src);
      LinearModel model;
      if (build_kind == "integrated") {
        model = build_integrated(inst, {.sbc = build_sbc});
      } else if (build_kind == "step1") {
        model = build_step1(inst);
      } else {
        const Step1Solution s1 = step1_file.empty()
                                     ? run_heuristic(inst)
                                     : step1_from_json(inst, nlohmann::json::parse(read_text_file(step1_file)));
        model = build_step2(inst, s1);
      }
      const bool lp = build_format == "lp" || (build_format.empty() && build_out.size() > 3 &&
                                               build_out.substr(build_out.size() - 3) == ".lp");
      NameMap names;
      emit(build_out, lp ? export_lp(model) : export_mps(model, &names));
      if (!names.empty() && !build_out.empty() && build_out != "-") {
        write_text_file(build_out + ".names.json", to_json(names).dump(2) + "\n");
      }
      std::cerr << "rows: " << model.num_rows() << " variables: " << model.num_variables() << "\n";
      for (const auto& w : model.metadata().warnings) std::cerr << "warning: " << w << "\n";
      return 0;
    }
    if (*heur) {
      const Instance inst = load_source(heur_src);
      const HeuristicRun run = run_heuristic_detailed(inst);
      emit(heur_out, to_json(inst, run.repaired.solution).dump(2) + "\n");
      std::cerr << "uncovered: " << step1_objective(run.repaired.solution)
                << (run.repair_triggered() ? " (repaired)" : "") << "\n";
      return 0;
    }
    if (*solve) {
      const Instance inst = load_source(solve_src);
      const PipelineLimits limits{time_limit, total_limit > 0 ? total_limit : 3 * time_limit};
      const Backend backend{pick_solver(solve_solver), true};
      RunReport report;
      std::optional<Solution> solution;
      if (solve_mode == "oracle" || solve_mode == "integrated" || solve_mode == "integrated+sbc") {
        if (!solve_solution.empty()) throw ConfigurationError("--solution applies to the pipeline modes only");
        report = run_method(inst, solve_mode, limits, backend);
      } else {
        PipelineResult res = run_pipeline(inst, parse_mode(solve_mode), limits, backend);
        report = res.report;
        if (report.feasible) solution = std::move(res.solution);
      }
      emit(solve_out, dump_report(report, solve_timing));
      if (!solve_solution.empty() && solution) write_text_file(solve_solution, to_json(inst, *solution).dump(2) + "\n");
      std::cerr << "objective: " << report.objective.objective << " status: " << report.status << "\n";
      if (!report.error.empty()) std::cerr << "error: " << report.error << "\n";
      return report.status == "error" ? 2 : 0;
    }
    if (*validate) {
      const Instance inst = load_source(val_src);
      const nlohmann::json doc = nlohmann::json::parse(read_text_file(val_solution));
      ValidationReport report;
      nlohmann::json out;
      if (doc.value("schema", std::string{}) == kStep1Schema) {
        const Step1Solution s1 = step1_from_json(inst, doc);
        report = check_step1(inst, s1);
        out["kind"] = "step1";
        out["uncovered"] = step1_objective(s1);
      } else {
        const Solution sol = solution_from_json(inst, doc);
        report = validate_solution(inst, sol);
        const ObjectiveBreakdown obj = evaluate_objective(inst, sol);
        out["kind"] = "solution";
        out["objective"] = {{"objective", obj.objective}, {"waiting", obj.waiting_total}, {"penalty", obj.penalty_total}};
      }
      out["feasible"] = report.feasible;
      nlohmann::json violations = nlohmann::json::array();
      for (const Violation& v : report.violations) {
        violations.push_back({{"family", v.family}, {"indices", v.indices}, {"lhs", v.lhs}, {"rhs", v.rhs}});
      }
      out["violations"] = violations;
      emit(val_out, out.dump(2) + "\n");
      std::cerr << (report.feasible ? "feasible" : "infeasible: " + report.summary()) << "\n";
      return report.feasible ? 0 : 1;
    }
    if (*bench) {
      nlohmann::json doc = nlohmann::json::parse(read_text_file(bench_plan));
      if (bench_seed > 0 && doc.contains("instances")) {
        for (auto& entry : doc["instances"]) {
          if (entry.is_object() && !entry.contains("file") && !entry.contains("seeds") && !entry.contains("tiny")) {
            entry["seed"] = bench_seed;
          }
        }
      }
      Plan plan = load_plan(doc, std::filesystem::path(bench_plan).parent_path().string());
      if (bench_limit > 0) plan.limits.step_seconds = bench_limit;
      if (!bench_solver.empty() || !plan.backend.external) plan.backend.external = pick_solver(bench_solver);
      const BenchResult result = run_benchmark(plan, jobs);
      emit(bench_out, to_csv(result));
      if (!bench_json.empty()) write_text_file(bench_json, to_json(result).dump(2) + "\n");
      return result.all_completed() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
