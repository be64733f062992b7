#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xdock/instance.hpp"
#include "xdock/matheuristic.hpp"

namespace xdock {

inline constexpr std::string_view kPlanSchema = "xdock-plan/1";
inline constexpr std::string_view kResultsSchema = "xdock-results/1";
inline constexpr std::string_view kCsvHeader = "instance,method,objective,waiting,penalty,status,gap,seconds";

/// integrated, integrated+sbc, matheuristic, warmstart, hybrid, oracle.
const std::vector<std::string>& known_methods();

struct Plan {
  std::vector<Instance> instances;
  std::vector<std::string> methods;
  PipelineLimits limits;
  Backend backend;
};

/// Plan document:
///   {"schema": "xdock-plan/1",
///    "instances": [{"file": "a.json"}, {"db": 1, "seeds": [1, 2]}, {"tiny": 4},
///                  {"generate": {...generator config...}}],
///    "methods": ["oracle", "hybrid"],
///    "limits": {"step_seconds": 60, "total_seconds": 180},
///    "solver": "command"}
/// Every instance is loaded and every method checked before anything runs;
/// relative files resolve against `base_dir`. Throws PlanError.
Plan load_plan(const nlohmann::json& doc, const std::string& base_dir = ".");
Plan load_plan_file(const std::string& path);

/// One method on one instance. Library errors become a report with status
/// "error"; the objective is always recomputed from the decoded solution.
RunReport run_method(const Instance& instance, const std::string& method, const PipelineLimits& limits,
                     const Backend& backend);

struct BenchRow {
  RunReport report;
  std::optional<double> gap;  // against the best feasible objective on the instance
};

struct BenchResult {
  std::vector<BenchRow> rows;  // plan order: instances outer, methods inner
  bool all_completed() const;
};

/// Runs the rows on up to `jobs` threads; the row order never depends on it.
BenchResult run_benchmark(const Plan& plan, int jobs = 1);

std::string to_csv(const BenchResult& result);
nlohmann::json to_json(const BenchResult& result, bool timing = true);

}  // namespace xdock
