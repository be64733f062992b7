#pragma once

#include "xdock/instance.hpp"
#include "xdock/solution.hpp"

namespace fixtures {

// One inbound truck, one outbound truck, one product, one destination.
inline xdock::Instance single_link(int r = 3, int C = 10, int PC = 100) {
  xdock::Instance inst = xdock::make_instance(1, 1, 1, 1, r, 1, 1, C, PC);
  inst.name = "single-link";
  return inst;
}

// Zero-demand instance where every inbound truck docks at its arrival.
inline xdock::Solution docked_at_arrival(const xdock::Instance& inst) {
  xdock::Solution sol = xdock::make_empty_solution(inst);
  for (int i = 0; i < inst.inbound_trucks; ++i) sol.h(i, inst.arrival[static_cast<std::size_t>(i)] - 1) = 1;
  xdock::complete_solution(inst, sol);
  return sol;
}

// Three inbound and four outbound trucks, orders due at t = 2: d1 wants 8 of p1 and 7 of p3, d2 wants 9 of p2.
inline xdock::Instance sample_day() {
  xdock::Instance inst = xdock::make_instance(3, 4, 3, 2, 3, 2, 2, 10, 100);
  inst.name = "sample-day";
  inst.arrival = {1, 1, 2};
  inst.load(0, 0) = 8;
  inst.load(1, 1) = 9;
  inst.load(2, 2) = 7;
  inst.demand(0, 0, 1) = 8;
  inst.demand(2, 0, 1) = 7;
  inst.demand(1, 1, 1) = 9;
  return inst;
}

}  // namespace fixtures
