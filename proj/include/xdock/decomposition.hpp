#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xdock/core_model.hpp"
#include "xdock/grid.hpp"
#include "xdock/instance.hpp"
#include "xdock/solution.hpp"

namespace xdock {

inline constexpr std::string_view kStep1Schema = "xdock-step1/1";
inline constexpr std::string_view kStep2Schema = "xdock-step2/1";

/// Outbound schedule: loads, destinations and docking periods.
struct Step1Solution {
  Grid<int, 2> x;  // (j, p) pallets of p on truck j
  Grid<int, 2> q;  // (j, d)
  Grid<int, 2> y;  // (j, t)
  Grid<int, 3> V;  // (p, d, t) demand not served in its period
  Grid<int, 3> W;  // (j, p, d) = x * q
  Grid<int, 4> U;  // (j, p, d, t) = W * y

  bool operator==(const Step1Solution&) const = default;
};

/// Inbound schedule and the shipments that realize a step-1 plan.
struct Step2Solution {
  Grid<int, 3> A;   // (i, j, p) shipped pallets
  Grid<int, 2> B;   // (i, p) supply never shipped
  Grid<int, 2> G;   // (j, p) step-1 load that could not be realized
  Grid<int, 2> h;   // (i, t)
  Grid<int, 3> SB;  // (i, j, t)
  std::vector<int> St;
  Grid<int, 2> qh;  // (i, j) dock(i) * link(i, j)

  bool operator==(const Step2Solution&) const = default;
};

Step1Solution make_empty_step1(const Instance& instance);
Step2Solution make_empty_step2(const Instance& instance);

/// Recomputes W and U from x, q and y.
void complete_step1(const Instance& instance, Step1Solution& s1);
/// Recomputes V from the carried loads: V = R - sum_j U.
void recompute_step1_shortfall(const Instance& instance, Step1Solution& s1);
/// Recomputes B, G, St and qh from A, h, SB and the step-1 plan.
void complete_step2(const Instance& instance, const Step1Solution& s1, Step2Solution& s2);

std::int64_t step1_objective(const Step1Solution& s1);

struct Step2Objective {
  std::int64_t waiting = 0;
  std::int64_t penalty = 0;  // PC * sum B
  std::int64_t objective = 0;
};
Step2Objective step2_objective(const Instance& instance, const Step1Solution& s1,
                               const Step2Solution& s2);

/// Families eq:131, eq:113, eq:305, eq:105, eq:112, eq:104, eq:304 plus the
/// product identities eq:302 (W) and eq:303 (U) and domains.
ValidationReport check_step1(const Instance& instance, const Step1Solution& s1);

/// Families eq:202, eq:205, eq:206, eq:208, eq:209, eq:210, eq:217, eq:218,
/// eq:236, eq:237, arrival, the qh identity ("qh") and domains.
ValidationReport check_step2(const Instance& instance, const Step1Solution& s1,
                             const Step2Solution& s2);

/// Docking period (1-based, 0 if idle) and destination (0-based, -1 if none).
int step1_dock(const Step1Solution& s1, int j);
int step1_destination(const Step1Solution& s1, int j);

/// Integrated solution from the two steps. Throws AssemblyError naming the
/// violated identity when the parts disagree.
Solution assemble(const Instance& instance, const Step1Solution& s1, const Step2Solution& s2);

nlohmann::json to_json(const Instance& instance, const Step1Solution& s1);
Step1Solution step1_from_json(const Instance& instance, const nlohmann::json& doc);
nlohmann::json to_json(const Instance& instance, const Step2Solution& s2);
Step2Solution step2_from_json(const Instance& instance, const nlohmann::json& doc);

}  // namespace xdock
