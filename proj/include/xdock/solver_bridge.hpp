#pragma once

#include <optional>
#include <string>

#include "xdock/linear_model.hpp"

namespace xdock {

/// An external MILP solver driven through files. The command is run as
///   <command> --model <file.mps> --out <listing> --time-limit <seconds> [--start <listing>]
/// and must write a `name value` listing with `# status:` and, when known,
/// `# objective:` and `# bound:` comment lines.
struct ExternalSolver {
  std::string command;
  std::string work_dir;  // empty: a fresh directory under the system temp dir
  bool keep_files = false;
};

struct ExternalResult {
  std::string status;  // optimal, incumbent, infeasible, timeout, error
  Assignment values;   // model names
  std::optional<double> objective;
  std::optional<double> bound;
};

/// Exports `model` (and its start, if any), runs the solver and reads the
/// listing back. Throws ConfigurationError if the command cannot be run and
/// ParseError on a malformed listing.
ExternalResult run_external(const ExternalSolver& solver, const LinearModel& model, double time_limit);

/// Solver from XDOCK_SOLVER, if set.
std::optional<ExternalSolver> solver_from_environment();

}  // namespace xdock
