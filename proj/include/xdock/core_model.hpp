#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xdock/instance.hpp"
#include "xdock/solution.hpp"

namespace xdock {

struct ObjectiveBreakdown {
  std::int64_t waiting_total = 0;
  std::int64_t penalty_total = 0;
  std::int64_t objective = 0;

  bool operator==(const ObjectiveBreakdown&) const = default;
};

/// One failed check. `family` is the constraint label (e.g. "eq:9"), plus
/// "arrival", "domain" and the linearization blocks "eq:28", "eq:26",
/// "eq:23", "eq:33", "eq:41". `slack` is rhs - lhs oriented so that a
/// negative value means violated.
struct Violation {
  std::string family;
  std::vector<int> indices;  // 1-based, in the family's index order
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
};

struct ValidationReport {
  bool feasible = true;
  std::vector<Violation> violations;

  bool has_family(const std::string& family) const;
  std::string summary() const;
};

struct StorageProfile {
  std::vector<std::int64_t> levels;  // St_t for t = 1..r
  bool negative = false;             // some intermediate level below zero
  std::vector<int> over_cap;         // 1-based periods with St_t > ID * C
};

/// Waiting counted once per used (i, j) link plus PC per uncovered pallet.
ObjectiveBreakdown evaluate_objective(const Instance& instance, const Solution& sol);

/// Same value computed from the auxiliaries: sum(qy - qh) + PC * sum(V).
std::int64_t objective_from_auxiliaries(const Instance& instance, const Solution& sol);

/// Checks every constraint family of the integrated model, explicit arrival
/// enforcement and the linearization identities. Integer-exact; `tolerance`
/// only widens comparisons for rounded external solutions.
ValidationReport validate_solution(const Instance& instance, const Solution& sol,
                                   double tolerance = 0.0);

/// St_t = St_{t-1} + unloaded_t - loaded_t, St_0 = 0, from h, y and S.
StorageProfile storage_profile(const Instance& instance, const Solution& sol);

}  // namespace xdock
