#include "xdock/heuristic.hpp"

#include <algorithm>

namespace xdock {

int Aggregates::trucks_needed() const {
  int total = 0;
  for (int z : ZT) total += z;
  return total;
}

Aggregates preprocess(const Instance& inst) {
  check_instance(inst);
  const int f = inst.destinations, r = inst.periods;
  Aggregates agg{Grid<int, 2>({f, r}), Grid<int, 2>({f, r}), std::vector<int>(static_cast<std::size_t>(r), 0)};
  for (int d = 0; d < f; ++d) {
    for (int t = 0; t < r; ++t) {
      for (int p = 0; p < inst.products; ++p) agg.RP(d, t) += inst.demand(p, d, t);
      agg.ZP(d, t) = inst.capacity > 0 ? (agg.RP(d, t) + inst.capacity - 1) / inst.capacity : 0;
      agg.ZT[static_cast<std::size_t>(t)] += agg.ZP(d, t);
    }
  }
  return agg;
}

PartialPlan assign_trucks(const Instance& inst, const Aggregates& agg) {
  const int n = inst.outbound_trucks, k = inst.products, f = inst.destinations, r = inst.periods;
  PartialPlan plan;
  plan.y = Grid<int, 2>({n, r});
  plan.q = Grid<int, 2>({n, f});
  plan.LJ.assign(static_cast<std::size_t>(n), 0);
  plan.BP = agg.RP;
  plan.B = inst.demand;
  plan.x = Grid<int, 2>({n, k});
  int next = 0;
  for (int t = 0; t < r; ++t) {
    for (int d = 0; d < f; ++d) {
      while (plan.BP(d, t) > 0 && inst.capacity > 0) {
        if (next == n) {
          plan.uncovered = true;
          break;
        }
        plan.y(next, t) = 1;
        plan.q(next, d) = 1;
        plan.LJ[static_cast<std::size_t>(next)] = std::min(inst.capacity, plan.BP(d, t));
        plan.BP(d, t) -= plan.LJ[static_cast<std::size_t>(next)];
        ++next;
      }
    }
  }
  if (inst.capacity == 0 && agg.RP.sum() > 0) plan.uncovered = true;
  plan.BL = plan.LJ;
  return plan;
}

void assign_loads(const Instance& inst, PartialPlan& plan) {
  const int n = inst.outbound_trucks;
  for (int t = 0; t < inst.periods; ++t) {
    for (int d = 0; d < inst.destinations; ++d) {
      for (int p = 0; p < inst.products; ++p) {
        for (int j = 0; j < n && plan.B(p, d, t) > 0; ++j) {
          auto& free = plan.BL[static_cast<std::size_t>(j)];
          if (!plan.y(j, t) || !plan.q(j, d) || free == 0) continue;
          const int amount = std::min(plan.B(p, d, t), free);
          plan.x(j, p) += amount;
          plan.B(p, d, t) -= amount;
          free -= amount;
        }
      }
    }
  }
}

RepairResult repair(const Instance& inst, const PartialPlan& plan) {
  const int n = inst.outbound_trucks;
  RepairResult out;
  Step1Solution& s1 = out.solution;
  s1 = make_empty_step1(inst);
  s1.x = plan.x;
  s1.q = plan.q;
  s1.y = plan.y;
  auto load = [&](int j) {
    int total = 0;
    for (int p = 0; p < inst.products; ++p) total += s1.x(j, p);
    return total;
  };
  for (int t = 0; t < inst.periods; ++t) {
    int docked = 0;
    for (int j = 0; j < n; ++j) docked += s1.y(j, t);
    while (docked > inst.outbound_doors) {
      int victim = -1;
      for (int j = 0; j < n; ++j) {
        if (s1.y(j, t) && (victim < 0 || load(j) < load(victim))) victim = j;
      }
      out.removed.push_back(victim);
      out.removed_load += load(victim);
      s1.y(victim, t) = 0;
      for (int d = 0; d < inst.destinations; ++d) s1.q(victim, d) = 0;
      for (int p = 0; p < inst.products; ++p) s1.x(victim, p) = 0;
      --docked;
    }
  }
  complete_step1(inst, s1);
  recompute_step1_shortfall(inst, s1);
  return out;
}

HeuristicRun run_heuristic_detailed(const Instance& inst) {
  HeuristicRun run;
  run.aggregates = preprocess(inst);
  run.plan = assign_trucks(inst, run.aggregates);
  assign_loads(inst, run.plan);
  run.repaired = repair(inst, run.plan);
  return run;
}

Step1Solution run_heuristic(const Instance& inst) { return run_heuristic_detailed(inst).repaired.solution; }

}  // namespace xdock
