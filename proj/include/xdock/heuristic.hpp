#pragma once

#include <vector>

#include "xdock/decomposition.hpp"
#include "xdock/grid.hpp"
#include "xdock/instance.hpp"

namespace xdock {

struct Aggregates {
  Grid<int, 2> RP;      // (d, t) total demand
  Grid<int, 2> ZP;      // (d, t) trucks needed, ceil(RP / C)
  std::vector<int> ZT;  // per period, sum_d ZP

  int trucks_needed() const;
};

/// Working state of the constructive heuristic.
struct PartialPlan {
  Grid<int, 2> y;       // (j, t)
  Grid<int, 2> q;       // (j, d)
  std::vector<int> LJ;  // capacity reserved on truck j
  Grid<int, 2> BP;      // (d, t) demand not yet given a truck
  Grid<int, 3> B;       // (p, d, t) demand not yet loaded
  std::vector<int> BL;  // free reserved capacity per truck
  Grid<int, 2> x;       // (j, p)
  bool uncovered = false;  // trucks ran out with demand left
};

Aggregates preprocess(const Instance& instance);

/// Trucks in index order over periods then destinations, LJ = min(C, BP).
PartialPlan assign_trucks(const Instance& instance, const Aggregates& agg);

/// Fills the trucks of each (d, t) with products in index order.
void assign_loads(const Instance& instance, PartialPlan& plan);

struct RepairResult {
  Step1Solution solution;
  std::vector<int> removed;  // 0-based truck indices, in removal order
  int removed_load = 0;
};

/// Drops minimum-load trucks (lowest index on ties) from every period with
/// more than OD docked trucks.
RepairResult repair(const Instance& instance, const PartialPlan& plan);

struct HeuristicRun {
  Aggregates aggregates;
  PartialPlan plan;  // after load assignment
  RepairResult repaired;
  bool repair_triggered() const { return !repaired.removed.empty(); }
};

HeuristicRun run_heuristic_detailed(const Instance& instance);
Step1Solution run_heuristic(const Instance& instance);

}  // namespace xdock
