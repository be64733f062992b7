#include "xdock/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "xdock/errors.hpp"
#include "xdock/instgen.hpp"
#include "xdock/milp_builder.hpp"
#include "xdock/model_io.hpp"
#include "xdock/oracle.hpp"

namespace xdock {

namespace {

using Clock = std::chrono::steady_clock;

void load_entry(const nlohmann::json& entry, const std::filesystem::path& base, std::vector<Instance>& out) {
  if (!entry.is_object()) throw PlanError("instance entries must be objects");
  if (entry.contains("file")) {
    const std::filesystem::path file = base / entry.at("file").get<std::string>();
    if (!std::filesystem::exists(file)) throw PlanError("missing instance file " + file.string());
    out.push_back(load_instance_file(file.string()));
    return;
  }
  GeneratorConfig config;
  if (entry.contains("tiny")) {
    config = tiny_config(entry.at("tiny").get<std::uint64_t>());
  } else if (entry.contains("generate")) {
    config = config_from_json(entry.at("generate"));
  } else if (entry.contains("db")) {
    nlohmann::json doc = entry;
    doc.erase("seeds");
    config = config_from_json(doc);
  } else {
    throw PlanError("instance entry needs one of file, tiny, db or generate: " + entry.dump());
  }
  if (!entry.contains("seeds")) {
    out.push_back(generate(config));
    return;
  }
  for (const auto& seed : entry.at("seeds")) {
    config.seed = seed.get<std::uint64_t>();
    out.push_back(generate(config));
  }
}

StepReport single_step(const std::string& method, const std::string& status) {
  StepReport step;
  step.name = "integrated";
  step.method = method;
  step.status = status;
  return step;
}

RunReport run_integrated(const Instance& inst, bool sbc, const PipelineLimits& limits, const Backend& backend) {
  RunReport rep;
  Solution sol = make_empty_solution(inst);
  bool have_solution = false;
  const auto start = Clock::now();
  if (backend.external) {
    const LinearModel model = build_integrated(inst, {.sbc = sbc});
    const ExternalResult res = run_external(*backend.external, model, limits.total_seconds);
    StepReport step = single_step("external", res.status);
    if (res.bound) step.bound = static_cast<std::int64_t>(std::ceil(*res.bound - 1e-6));
    have_solution = res.status == "optimal" || res.status == "incumbent";
    if (have_solution) {
      DecodeResult decoded = decode_solution(model, inst, res.values);
      sol = std::move(decoded.solution);
      rep.warnings = std::move(decoded.warnings);
      step.objective = evaluate_objective(inst, sol).objective;
    }
    rep.steps.push_back(step);
  } else {
    check_guard_rails(inst);
    OracleCaps caps;
    caps.sbc = sbc;
    caps.time_limit = limits.total_seconds;
    const OracleResult res = solve_exact_tiny(inst, caps);
    StepReport step = single_step("oracle", !res.feasible ? "infeasible" : res.proven_optimal ? "optimal" : "incumbent");
    step.objective = res.objective;
    step.states = res.states;
    if (res.proven_optimal && res.feasible) step.bound = res.objective;
    rep.steps.push_back(step);
    have_solution = res.feasible;
    sol = res.solution;
  }
  for (StepReport& step : rep.steps) {
    step.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (step.bound) step.gap = static_cast<double>(step.objective - *step.bound) /
                               static_cast<double>(std::max<std::int64_t>(step.objective, 1));
  }
  if (have_solution) {
    score_solution(inst, sol, rep);
  } else {
    rep.status = "infeasible";
  }
  return rep;
}

std::string csv_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods{"integrated", "integrated+sbc", "matheuristic",
                                                "warmstart",  "hybrid",         "oracle"};
  return methods;
}

Plan load_plan(const nlohmann::json& doc, const std::string& base_dir) {
  Plan plan;
  try {
    if (!doc.is_object()) throw PlanError("plan must be a JSON object");
    if (doc.contains("schema") && doc.at("schema") != kPlanSchema) {
      throw PlanError("unsupported plan schema " + doc.at("schema").dump());
    }
    for (const auto& method : doc.value("methods", nlohmann::json::array())) {
      const auto name = method.get<std::string>();
      const auto& known = known_methods();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw PlanError("unknown method '" + name + "'");
      }
      plan.methods.push_back(name);
    }
    if (doc.contains("limits")) {
      const auto& limits = doc.at("limits");
      plan.limits.step_seconds = limits.value("step_seconds", plan.limits.step_seconds);
      plan.limits.total_seconds = limits.value("total_seconds", plan.limits.total_seconds);
      if (!(plan.limits.step_seconds > 0) || !(plan.limits.total_seconds > 0)) {
        throw PlanError("limits must be positive");
      }
    }
    if (doc.contains("solver")) plan.backend.external = ExternalSolver{doc.at("solver").get<std::string>(), "", false};
    const std::filesystem::path base(base_dir);
    for (const auto& entry : doc.value("instances", nlohmann::json::array())) load_entry(entry, base, plan.instances);
  } catch (const PlanError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw PlanError(std::string("plan: ") + e.what());
  } catch (const Error& e) {
    throw PlanError(std::string("plan: ") + e.what());
  }
  return plan;
}

Plan load_plan_file(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw PlanError("plan " + path + ": " + e.what());
  } catch (const Error& e) {
    throw PlanError("plan " + path + ": " + e.what());
  }
  return load_plan(doc, std::filesystem::path(path).parent_path().string());
}

RunReport run_method(const Instance& inst, const std::string& method, const PipelineLimits& limits,
                     const Backend& backend) {
  const auto start = Clock::now();
  RunReport rep;
  try {
    if (method == "integrated" || method == "integrated+sbc") {
      rep = run_integrated(inst, method == "integrated+sbc", limits, backend);
    } else if (method == "oracle") {
      rep = run_integrated(inst, false, limits, Backend{std::nullopt, true});
    } else if (method == "matheuristic") {
      rep = run_pipeline(inst, PipelineMode::exact_exact, limits, backend).report;
    } else if (method == "warmstart" || method == "hybrid") {
      rep = run_pipeline(inst, parse_mode(method), limits, backend).report;
    } else {
      throw ConfigurationError("unknown method '" + method + "'");
    }
  } catch (const Error& e) {
    rep = RunReport{};
    rep.status = "error";
    rep.error = e.what();
  }
  rep.instance = inst.name;
  rep.fingerprint = fingerprint(inst);
  rep.method = method;
  rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

bool BenchResult::all_completed() const {
  return std::none_of(rows.begin(), rows.end(), [](const BenchRow& row) { return row.report.status == "error"; });
}

BenchResult run_benchmark(const Plan& plan, int jobs) {
  const std::size_t per = plan.methods.size();
  const std::size_t total = plan.instances.size() * per;
  BenchResult out;
  out.rows.resize(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      out.rows[idx].report = run_method(plan.instances[idx / per], plan.methods[idx % per], plan.limits, plan.backend);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(total, 1))));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (per == 0) return out;

  for (std::size_t first = 0; first < total; first += per) {
    std::optional<std::int64_t> best;
    for (std::size_t idx = first; idx < first + per; ++idx) {
      const RunReport& rep = out.rows[idx].report;
      if (rep.feasible && (!best || rep.objective.objective < *best)) best = rep.objective.objective;
    }
    for (std::size_t idx = first; idx < first + per && best; ++idx) {
      const RunReport& rep = out.rows[idx].report;
      if (!rep.feasible) continue;
      out.rows[idx].gap = static_cast<double>(rep.objective.objective - *best) /
                          static_cast<double>(std::max<std::int64_t>(*best, 1));
    }
  }
  return out;
}

std::string to_csv(const BenchResult& result) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const BenchRow& row : result.rows) {
    const RunReport& rep = row.report;
    out += rep.instance + "," + rep.method + ",";
    if (rep.feasible) {
      out += std::to_string(rep.objective.objective) + "," + std::to_string(rep.objective.waiting_total) + "," +
             std::to_string(rep.objective.penalty_total);
    } else {
      out += ",,";
    }
    out += "," + rep.status + "," + (row.gap ? csv_number(*row.gap) : "") + "," + csv_number(rep.seconds) + "\n";
  }
  return out;
}

nlohmann::json to_json(const BenchResult& result, bool timing) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BenchRow& row : result.rows) {
    nlohmann::json r = to_json(row.report, timing);
    r["gap"] = row.gap ? nlohmann::json(*row.gap) : nlohmann::json(nullptr);
    rows.push_back(r);
  }
  return {{"schema", kResultsSchema}, {"columns", kCsvHeader}, {"rows", rows}};
}

}  // namespace xdock
