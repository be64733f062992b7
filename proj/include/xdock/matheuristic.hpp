#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "xdock/core_model.hpp"
#include "xdock/decomposition.hpp"
#include "xdock/instance.hpp"
#include "xdock/linear_model.hpp"
#include "xdock/solution.hpp"
#include "xdock/solver_bridge.hpp"

namespace xdock {

inline constexpr std::string_view kReportSchema = "xdock-report/1";

/// Step-1 model: minimize sum V over x, q, y, V and the products W = x q,
/// U = W y (big-M blocks with M = C). Rows carry the step-1 tags: eq104,
/// eq131, eq113, eq305, eq304, eq105, eq112 and l302a..c, l303a..c.
LinearModel build_step1(const Instance& instance);

/// Step-2 model for a fixed step-1 plan: A, B, G, h, SB, St, qh. The outbound
/// docking periods are data, so the qy part of the waiting is a coefficient
/// dock(j) on each SB. Throws DimensionError on a step-1 shape mismatch.
LinearModel build_step2(const Instance& instance, const Step1Solution& s1);

std::vector<double> encode_step1(const LinearModel& model, const Instance& instance,
                                 const Step1Solution& s1);
std::vector<double> encode_step2(const LinearModel& model, const Instance& instance,
                                 const Step2Solution& s2);

/// Rounded like decode_solution; derived fields are taken from the values.
Step1Solution decode_step1(const LinearModel& model, const Instance& instance,
                           const Assignment& assignment, std::vector<std::string>* warnings = nullptr);
Step2Solution decode_step2(const LinearModel& model, const Instance& instance,
                           const Assignment& assignment, std::vector<std::string>* warnings = nullptr);

/// Copy of `model` carrying `heur` (with W, U and V recomputed) as its start.
/// Throws WarmStartError listing the violated families or rows.
LinearModel warm_start(const LinearModel& model, const Instance& instance, const Step1Solution& heur);

/// The start as a solution listing; throws WarmStartError without one.
std::string start_listing(const LinearModel& model);

enum class PipelineMode { exact_exact, warmstart, hybrid };

std::string to_string(PipelineMode mode);
PipelineMode parse_mode(const std::string& text);  // throws ConfigurationError

struct PipelineLimits {
  double step_seconds = 60;
  double total_seconds = 180;
};

/// Exact backend: the internal oracle when the instance is within its guard
/// rails, otherwise the external solver if one is configured.
struct Backend {
  std::optional<ExternalSolver> external;
  bool use_oracle = true;
};

struct StepReport {
  std::string name;     // "step1", "step2", "integrated"
  std::string method;   // "oracle", "heuristic", "search", "external"
  std::string status;   // optimal, incumbent, heuristic, timeout, infeasible
  std::int64_t objective = 0;
  std::optional<std::int64_t> bound;
  std::optional<std::int64_t> start_objective;
  double gap = 0;
  std::int64_t states = 0;
  double seconds = 0;
};

struct RunReport {
  std::string instance;
  std::string fingerprint;
  std::string method;
  std::string status;  // feasible, infeasible, error
  bool feasible = false;
  ObjectiveBreakdown objective;
  std::vector<std::string> violations;  // families, first occurrence order
  std::vector<StepReport> steps;
  std::vector<std::string> warnings;
  std::string error;
  double seconds = 0;
};

/// Canonical JSON; wall times are left out unless `timing`.
nlohmann::json to_json(const RunReport& report, bool timing = false);
std::string dump_report(const RunReport& report, bool timing = false);

struct PipelineResult {
  RunReport report;
  Solution solution;
  Step1Solution step1;
  Step2Solution step2;
};

/// Throws ConfigurationError when an exact step has no backend, and for
/// non-positive limits.
PipelineResult run_pipeline(const Instance& instance, PipelineMode mode,
                            const PipelineLimits& limits = {}, const Backend& backend = {});

/// Fills feasibility, objective and violations of `report` from `sol`.
void score_solution(const Instance& instance, const Solution& sol, RunReport& report);

}  // namespace xdock
