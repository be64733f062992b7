#pragma once

#include <cstdint>

#include "xdock/decomposition.hpp"
#include "xdock/instance.hpp"

namespace xdock {

struct Step2SearchOptions {
  int rounds = 3;  // link-consolidation passes
};

struct Step2SearchResult {
  bool feasible = false;  // false when no schedule met the storage cap
  Step2Solution solution;
  Step2Objective objective;
  std::int64_t lower_bound = 0;
  int accepted_moves = 0;
};

/// Step 2 for instances beyond the oracle: inbound trucks docked as early as
/// the doors allow, shipments by min-cost max-flow, then links dropped one at
/// a time and inbound trucks pushed as late as their links permit while the
/// true objective improves. Deterministic. The lower bound relaxes the doors
/// (every inbound truck at its arrival) and ignores waiting.
Step2SearchResult solve_step2_search(const Instance& instance, const Step1Solution& s1,
                                     const Step2SearchOptions& options = {});

}  // namespace xdock
