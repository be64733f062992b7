#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xdock/grid.hpp"
#include "xdock/instance.hpp"

namespace xdock {

inline constexpr std::string_view kSolutionSchema = "xdock-solution/1";

/// Full assignment of the integrated model's decision variables.
/// Time axes are 0-based period indices (period = index + 1).
struct Solution {
  Grid<int, 2> h;   // (i, t) inbound docking
  Grid<int, 2> y;   // (j, t) outbound docking
  Grid<int, 2> q;   // (j, d) destination assignment
  Grid<int, 4> S;   // (i, j, p, d) shipped pallets
  Grid<int, 3> SB;  // (i, j, t) shipment-link period
  Grid<int, 3> WB;  // (j, p, d) carry indicator
  Grid<int, 2> V;   // (p, d) uncovered demand
  std::vector<int> St;  // end-of-period storage, one entry per period

  // Linearization auxiliaries.
  Grid<int, 2> qy;  // (i, j) dock(j) * link(i, j)
  Grid<int, 2> qh;  // (i, j) dock(i) * link(i, j)
  Grid<int, 3> WY;  // (j, p, d) dock(j) * WB
  Grid<int, 2> LJ;  // (j, t) y * load(j)
  Grid<int, 2> DT;  // (j, t) y * destination number

  bool operator==(const Solution&) const = default;
};

Solution make_empty_solution(const Instance& instance);

/// Throws DimensionError when any grid disagrees with the instance dimensions.
void check_shapes(const Instance& instance, const Solution& sol);

/// 1-based docking period, 0 when not docked.
int inbound_dock(const Solution& sol, int i);
int outbound_dock(const Solution& sol, int j);
/// 1-based destination number, 0 when unassigned.
int destination_number(const Solution& sol, int j);
/// Number of periods in which a shipment link (i, j) is active.
int link_count(const Solution& sol, int i, int j);
/// Pallets loaded onto outbound truck j.
int outbound_load(const Solution& sol, int j);

/// Recomputes WB, V, St and every auxiliary from h, y, q, S and SB.
void complete_solution(const Instance& instance, Solution& sol);

/// Recomputes only the linearization auxiliaries from the primary grids.
void fill_auxiliaries(const Instance& instance, Solution& sol);

nlohmann::json to_json(const Instance& instance, const Solution& sol);
Solution solution_from_json(const Instance& instance, const nlohmann::json& doc);

}  // namespace xdock
