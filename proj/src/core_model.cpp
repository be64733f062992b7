#include "xdock/core_model.hpp"

#include <cmath>
#include <sstream>

#include "checker.hpp"
#include "xdock/errors.hpp"

namespace xdock {

bool ValidationReport::has_family(const std::string& family) const {
  for (const auto& v : violations) {
    if (v.family == family) return true;
  }
  return false;
}

std::string ValidationReport::summary() const {
  if (feasible) return "feasible";
  std::ostringstream out;
  out << violations.size() << " violation(s):";
  const std::size_t shown = std::min<std::size_t>(violations.size(), 10);
  for (std::size_t v = 0; v < shown; ++v) {
    const auto& viol = violations[v];
    out << "\n  " << viol.family << " [";
    for (std::size_t a = 0; a < viol.indices.size(); ++a) {
      out << (a ? "," : "") << viol.indices[a];
    }
    out << "] lhs=" << viol.lhs << " rhs=" << viol.rhs;
  }
  if (violations.size() > shown) out << "\n  ...";
  return out.str();
}

ObjectiveBreakdown evaluate_objective(const Instance& inst, const Solution& sol) {
  check_shapes(inst, sol);
  ObjectiveBreakdown out;
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    const int dock_in = inbound_dock(sol, i);
    for (int j = 0; j < inst.outbound_trucks; ++j) {
      const int link = link_count(sol, i, j);
      if (link > 1) {
        throw MalformedSolutionError("link (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") active in more than one period");
      }
      out.waiting_total += static_cast<std::int64_t>(outbound_dock(sol, j) - dock_in) * link;
    }
  }
  out.penalty_total = static_cast<std::int64_t>(inst.penalty) * sol.V.sum();
  out.objective = out.waiting_total + out.penalty_total;
  return out;
}

std::int64_t objective_from_auxiliaries(const Instance& inst, const Solution& sol) {
  check_shapes(inst, sol);
  std::int64_t total = 0;
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    for (int j = 0; j < inst.outbound_trucks; ++j) total += sol.qy(i, j) - sol.qh(i, j);
  }
  return total + static_cast<std::int64_t>(inst.penalty) * sol.V.sum();
}

StorageProfile storage_profile(const Instance& inst, const Solution& sol) {
  check_shapes(inst, sol);
  StorageProfile out;
  out.levels.assign(static_cast<std::size_t>(inst.periods), 0);
  std::vector<int> loads(static_cast<std::size_t>(inst.outbound_trucks));
  for (int j = 0; j < inst.outbound_trucks; ++j) loads[static_cast<std::size_t>(j)] = outbound_load(sol, j);
  std::int64_t level = 0;
  for (int t = 0; t < inst.periods; ++t) {
    for (int i = 0; i < inst.inbound_trucks; ++i) {
      level += static_cast<std::int64_t>(sol.h(i, t)) * inst.truck_supply(i);
    }
    for (int j = 0; j < inst.outbound_trucks; ++j) {
      level -= static_cast<std::int64_t>(sol.y(j, t)) * loads[static_cast<std::size_t>(j)];
    }
    out.levels[static_cast<std::size_t>(t)] = level;
    if (level < 0) out.negative = true;
    if (level > inst.storage_cap()) out.over_cap.push_back(t + 1);
  }
  return out;
}


ValidationReport validate_solution(const Instance& inst, const Solution& sol, double tolerance) {
  check_shapes(inst, sol);
  ValidationReport report;
  detail::Checker c(report, tolerance);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods, C = inst.capacity;

  // Domains.
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < r; ++t) c.binary("h", {i + 1, t + 1}, sol.h(i, t));
    for (int j = 0; j < n; ++j) {
      for (int t = 0; t < r; ++t) c.binary("SB", {i + 1, j + 1, t + 1}, sol.SB(i, j, t));
      for (int p = 0; p < k; ++p) {
        for (int d = 0; d < f; ++d) c.nonneg("S", {i + 1, j + 1, p + 1, d + 1}, sol.S(i, j, p, d));
      }
      c.nonneg("qy", {i + 1, j + 1}, sol.qy(i, j));
      c.nonneg("qh", {i + 1, j + 1}, sol.qh(i, j));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < r; ++t) {
      c.binary("y", {j + 1, t + 1}, sol.y(j, t));
      c.nonneg("LJ", {j + 1, t + 1}, sol.LJ(j, t));
      c.nonneg("DT", {j + 1, t + 1}, sol.DT(j, t));
    }
    for (int d = 0; d < f; ++d) c.binary("q", {j + 1, d + 1}, sol.q(j, d));
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        c.binary("WB", {j + 1, p + 1, d + 1}, sol.WB(j, p, d));
        c.nonneg("WY", {j + 1, p + 1, d + 1}, sol.WY(j, p, d));
      }
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) c.nonneg("V", {p + 1, d + 1}, sol.V(p, d));
  }
  for (int t = 0; t < r; ++t) c.nonneg("St", {t + 1}, sol.St[static_cast<std::size_t>(t)]);

  // Arrival: no docking before E_i.
  for (int i = 0; i < m; ++i) {
    int early = 0;
    for (int t = 0; t + 1 < inst.arrival[static_cast<std::size_t>(i)]; ++t) early += sol.h(i, t);
    c.le("arrival", {i + 1}, early, 0);
  }

  // Supply, capacity and coverage.
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      int shipped = 0;
      for (int j = 0; j < n; ++j) {
        for (int d = 0; d < f; ++d) shipped += sol.S(i, j, p, d);
      }
      c.le("eq:2", {i + 1, p + 1}, shipped, inst.load(i, p));
    }
  }
  for (int j = 0; j < n; ++j) c.le("eq:4", {j + 1}, outbound_load(sol, j), C);
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      int shipped = 0;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) shipped += sol.S(i, j, p, d);
      }
      c.eq("eq:5", {p + 1, d + 1}, shipped + sol.V(p, d), inst.total_demand(p, d));
    }
  }

  // Shipment links and their timing.
  for (int i = 0; i < m; ++i) {
    const int big_m = inst.truck_supply(i);
    const int dock_in = inbound_dock(sol, i);
    for (int j = 0; j < n; ++j) {
      int shipped = 0;
      for (int p = 0; p < k; ++p) {
        for (int d = 0; d < f; ++d) shipped += sol.S(i, j, p, d);
      }
      const int link = link_count(sol, i, j);
      int link_period = 0;
      for (int t = 0; t < r; ++t) link_period += (t + 1) * sol.SB(i, j, t);
      c.le("eq:6", {i + 1, j + 1}, shipped, static_cast<double>(big_m) * link);
      c.le("eq:6", {i + 1, j + 1}, link, shipped);
      c.le("eq:8", {i + 1, j + 1}, link, 1);
      c.le("eq:17", {i + 1, j + 1}, dock_in, link_period + r * (1 - link));
      c.le("eq:18", {i + 1, j + 1}, link_period, outbound_dock(sol, j));
    }
  }

  // Doors.
  for (int t = 0; t < r; ++t) {
    int in = 0, out = 0;
    for (int i = 0; i < m; ++i) in += sol.h(i, t);
    for (int j = 0; j < n; ++j) out += sol.y(j, t);
    c.le("eq:9", {t + 1}, in, inst.inbound_doors);
    c.le("eq:12", {t + 1}, out, inst.outbound_doors);
  }
  for (int i = 0; i < m; ++i) {
    int docked = 0;
    for (int t = 0; t < r; ++t) docked += sol.h(i, t);
    c.eq("eq:10", {i + 1}, docked, 1);
  }
  for (int j = 0; j < n; ++j) {
    int docked = 0;
    for (int t = 0; t < r; ++t) docked += sol.y(j, t);
    c.le("eq:13", {j + 1}, docked, 1);
  }

  // Carry indicators, destinations and JIT docking.
  for (int j = 0; j < n; ++j) {
    const int dock_out = outbound_dock(sol, j);
    int assigned = 0;
    for (int d = 0; d < f; ++d) {
      assigned += sol.q(j, d);
      int carried = 0;
      for (int p = 0; p < k; ++p) {
        int shipped = 0;
        for (int i = 0; i < m; ++i) shipped += sol.S(i, j, p, d);
        c.le("eq:20", {j + 1, p + 1, d + 1}, shipped, static_cast<double>(C) * sol.WB(j, p, d));
        c.le("eq:20", {j + 1, p + 1, d + 1}, sol.WB(j, p, d), shipped);
        carried += sol.WB(j, p, d);
        c.eq("eq:22", {j + 1, p + 1, d + 1}, dock_out * sol.WB(j, p, d),
             inst.jit_period(p, d) * sol.WB(j, p, d));
      }
      c.le("eq:30", {j + 1, d + 1}, carried, static_cast<double>(k) * sol.q(j, d));
    }
    c.le("eq:31", {j + 1}, assigned, 1);
  }

  // Storage balance and cap.
  const StorageProfile profile = storage_profile(inst, sol);
  for (int t = 0; t < r; ++t) {
    const auto st = static_cast<double>(sol.St[static_cast<std::size_t>(t)]);
    c.eq("eq:36", {t + 1}, st, static_cast<double>(profile.levels[static_cast<std::size_t>(t)]));
    c.le("eq:37", {t + 1}, st, inst.storage_cap());
  }

  // Linearization identities.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int link = link_count(sol, i, j);
      c.eq("eq:28", {i + 1, j + 1}, sol.qy(i, j), outbound_dock(sol, j) * link);
      c.eq("eq:26", {i + 1, j + 1}, sol.qh(i, j), inbound_dock(sol, i) * link);
    }
  }
  for (int j = 0; j < n; ++j) {
    const int dock_out = outbound_dock(sol, j);
    const int load = outbound_load(sol, j);
    const int dest = destination_number(sol, j);
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        c.eq("eq:23", {j + 1, p + 1, d + 1}, sol.WY(j, p, d), dock_out * sol.WB(j, p, d));
      }
    }
    for (int t = 0; t < r; ++t) {
      c.eq("eq:33", {j + 1, t + 1}, sol.LJ(j, t), sol.y(j, t) * load);
      c.eq("eq:41", {j + 1, t + 1}, sol.DT(j, t), sol.y(j, t) * dest);
    }
  }
  return report;
}

}  // namespace xdock
