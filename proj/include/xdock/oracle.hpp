#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xdock/core_model.hpp"
#include "xdock/decomposition.hpp"
#include "xdock/instance.hpp"
#include "xdock/linear_model.hpp"
#include "xdock/solution.hpp"

namespace xdock {

struct OracleCaps {
  std::int64_t max_states = 200'000'000;
  double time_limit = 60;  // seconds
  bool prune = true;            // bound pruning, greedy seeds, empty-dock dominance
  bool reduce_symmetry = true;  // outbound trucks enumerated as a sorted multiset
  bool sbc = false;             // restrict to solutions of the symmetry-broken model
};

/// Dimensions the exhaustive searches accept: m <= 3, n <= 4, r <= 3, k <= 2,
/// f <= 2 and at most 5 pallets per inbound truck. Throws GuardRailError.
void check_guard_rails(const Instance& instance);

struct OracleResult {
  bool feasible = false;  // false when no assignment satisfies the model
  Solution solution;
  std::int64_t objective = 0;
  bool proven_optimal = false;
  std::int64_t states = 0;
};

/// Lexicographically smallest (h, y, q, S) among the optima of the
/// integrated model. Shipment links are dated at the inbound docking period.
OracleResult solve_exact_tiny(const Instance& instance, const OracleCaps& caps = {});

struct Step1OracleResult {
  Step1Solution solution;
  std::int64_t objective = 0;
  bool proven_optimal = false;
  std::int64_t states = 0;
};

Step1OracleResult solve_step1_tiny(const Instance& instance, const OracleCaps& caps = {});

struct Step2OracleResult {
  bool feasible = false;
  Step2Solution solution;
  Step2Objective objective;
  bool proven_optimal = false;
  std::int64_t states = 0;
};

Step2OracleResult solve_step2_tiny(const Instance& instance, const Step1Solution& s1,
                                   const OracleCaps& caps = {});

struct ImportedSolution {
  Solution solution;
  ValidationReport report;
  std::vector<std::string> warnings;
  std::string provenance = "external";
};

/// Decodes a `name value` listing; variables missing from the listing are zero.
ImportedSolution import_external_solution(const LinearModel& model, const Instance& instance,
                                          const std::string& listing);

}  // namespace xdock
