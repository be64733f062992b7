#include "xdock/decomposition.hpp"

#include "checker.hpp"
#include "grid_json.hpp"
#include "xdock/errors.hpp"

namespace xdock {

Step1Solution make_empty_step1(const Instance& inst) {
  const int n = inst.outbound_trucks, k = inst.products, f = inst.destinations, r = inst.periods;
  Step1Solution s1;
  s1.x = Grid<int, 2>({n, k});
  s1.q = Grid<int, 2>({n, f});
  s1.y = Grid<int, 2>({n, r});
  s1.V = Grid<int, 3>({k, f, r});
  s1.W = Grid<int, 3>({n, k, f});
  s1.U = Grid<int, 4>({n, k, f, r});
  return s1;
}

Step2Solution make_empty_step2(const Instance& inst) {
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products, r = inst.periods;
  Step2Solution s2;
  s2.A = Grid<int, 3>({m, n, k});
  s2.B = Grid<int, 2>({m, k});
  s2.G = Grid<int, 2>({n, k});
  s2.h = Grid<int, 2>({m, r});
  s2.SB = Grid<int, 3>({m, n, r});
  s2.St.assign(static_cast<std::size_t>(r), 0);
  s2.qh = Grid<int, 2>({m, n});
  return s2;
}

namespace {

void check_step1_shapes(const Instance& inst, const Step1Solution& s1) {
  const Step1Solution ref = make_empty_step1(inst);
  if (s1.x.dims() != ref.x.dims() || s1.q.dims() != ref.q.dims() || s1.y.dims() != ref.y.dims() ||
      s1.V.dims() != ref.V.dims() || s1.W.dims() != ref.W.dims() || s1.U.dims() != ref.U.dims()) {
    throw DimensionError("step-1 solution does not match the instance dimensions");
  }
}

void check_step2_shapes(const Instance& inst, const Step2Solution& s2) {
  const Step2Solution ref = make_empty_step2(inst);
  if (s2.A.dims() != ref.A.dims() || s2.B.dims() != ref.B.dims() || s2.G.dims() != ref.G.dims() ||
      s2.h.dims() != ref.h.dims() || s2.SB.dims() != ref.SB.dims() || s2.St.size() != ref.St.size() ||
      s2.qh.dims() != ref.qh.dims()) {
    throw DimensionError("step-2 solution does not match the instance dimensions");
  }
}

int step2_dock(const Step2Solution& s2, int i) {
  int period = 0;
  for (int t = 0; t < s2.h.dim(1); ++t) period += (t + 1) * s2.h(i, t);
  return period;
}

int step2_link(const Step2Solution& s2, int i, int j) {
  int used = 0;
  for (int t = 0; t < s2.SB.dim(2); ++t) used += s2.SB(i, j, t);
  return used;
}

// St_t = St_{t-1} + unloaded_t - loaded_t.
std::vector<std::int64_t> step2_storage(const Instance& inst, const Step1Solution& s1,
                                        const Step2Solution& s2) {
  std::vector<std::int64_t> loads(static_cast<std::size_t>(inst.outbound_trucks), 0);
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    for (int j = 0; j < inst.outbound_trucks; ++j) {
      for (int p = 0; p < inst.products; ++p) loads[static_cast<std::size_t>(j)] += s2.A(i, j, p);
    }
  }
  std::vector<std::int64_t> levels(static_cast<std::size_t>(inst.periods), 0);
  std::int64_t level = 0;
  for (int t = 0; t < inst.periods; ++t) {
    for (int i = 0; i < inst.inbound_trucks; ++i) level += s2.h(i, t) * inst.truck_supply(i);
    for (int j = 0; j < inst.outbound_trucks; ++j) level -= s1.y(j, t) * loads[static_cast<std::size_t>(j)];
    levels[static_cast<std::size_t>(t)] = level;
  }
  return levels;
}

}  // namespace

int step1_dock(const Step1Solution& s1, int j) {
  int period = 0;
  for (int t = 0; t < s1.y.dim(1); ++t) period += (t + 1) * s1.y(j, t);
  return period;
}

int step1_destination(const Step1Solution& s1, int j) {
  for (int d = 0; d < s1.q.dim(1); ++d) {
    if (s1.q(j, d)) return d;
  }
  return -1;
}

void complete_step1(const Instance& inst, Step1Solution& s1) {
  check_step1_shapes(inst, s1);
  for (int j = 0; j < inst.outbound_trucks; ++j) {
    for (int p = 0; p < inst.products; ++p) {
      for (int d = 0; d < inst.destinations; ++d) {
        s1.W(j, p, d) = s1.x(j, p) * s1.q(j, d);
        for (int t = 0; t < inst.periods; ++t) s1.U(j, p, d, t) = s1.W(j, p, d) * s1.y(j, t);
      }
    }
  }
}

void recompute_step1_shortfall(const Instance& inst, Step1Solution& s1) {
  check_step1_shapes(inst, s1);
  for (int p = 0; p < inst.products; ++p) {
    for (int d = 0; d < inst.destinations; ++d) {
      for (int t = 0; t < inst.periods; ++t) {
        int carried = 0;
        for (int j = 0; j < inst.outbound_trucks; ++j) carried += s1.U(j, p, d, t);
        s1.V(p, d, t) = inst.demand(p, d, t) - carried;
      }
    }
  }
}

void complete_step2(const Instance& inst, const Step1Solution& s1, Step2Solution& s2) {
  check_step1_shapes(inst, s1);
  check_step2_shapes(inst, s2);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products;
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      int shipped = 0;
      for (int j = 0; j < n; ++j) shipped += s2.A(i, j, p);
      s2.B(i, p) = inst.load(i, p) - shipped;
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      int received = 0;
      for (int i = 0; i < m; ++i) received += s2.A(i, j, p);
      s2.G(j, p) = s1.x(j, p) - received;
    }
  }
  const auto levels = step2_storage(inst, s1, s2);
  for (std::size_t t = 0; t < levels.size(); ++t) s2.St[t] = static_cast<int>(levels[t]);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) s2.qh(i, j) = step2_dock(s2, i) * step2_link(s2, i, j);
  }
}

std::int64_t step1_objective(const Step1Solution& s1) { return s1.V.sum(); }

Step2Objective step2_objective(const Instance& inst, const Step1Solution& s1, const Step2Solution& s2) {
  check_step1_shapes(inst, s1);
  check_step2_shapes(inst, s2);
  Step2Objective out;
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    for (int j = 0; j < inst.outbound_trucks; ++j) {
      out.waiting += static_cast<std::int64_t>(step2_link(s2, i, j)) * (step1_dock(s1, j) - step2_dock(s2, i));
    }
  }
  out.penalty = static_cast<std::int64_t>(inst.penalty) * s2.B.sum();
  out.objective = out.waiting + out.penalty;
  return out;
}

ValidationReport check_step1(const Instance& inst, const Step1Solution& s1) {
  check_step1_shapes(inst, s1);
  ValidationReport report;
  detail::Checker c(report, 0.0);
  const int n = inst.outbound_trucks, k = inst.products, f = inst.destinations, r = inst.periods;
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) c.nonneg("x", {j + 1, p + 1}, s1.x(j, p));
    for (int d = 0; d < f; ++d) c.binary("q", {j + 1, d + 1}, s1.q(j, d));
    for (int t = 0; t < r; ++t) c.binary("y", {j + 1, t + 1}, s1.y(j, t));
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) c.nonneg("V", {p + 1, d + 1, t + 1}, s1.V(p, d, t));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      int spread = 0;
      for (int d = 0; d < f; ++d) {
        c.eq("eq:302", {j + 1, p + 1, d + 1}, s1.W(j, p, d), s1.x(j, p) * s1.q(j, d));
        for (int t = 0; t < r; ++t) {
          c.eq("eq:303", {j + 1, p + 1, d + 1, t + 1}, s1.U(j, p, d, t), s1.W(j, p, d) * s1.y(j, t));
          spread += s1.U(j, p, d, t);
        }
      }
      c.eq("eq:304", {j + 1, p + 1}, spread, s1.x(j, p));
    }
    int dests = 0, docks = 0, load = 0;
    for (int d = 0; d < f; ++d) dests += s1.q(j, d);
    for (int t = 0; t < r; ++t) docks += s1.y(j, t);
    for (int p = 0; p < k; ++p) load += s1.x(j, p);
    c.le("eq:131", {j + 1}, dests, 1);
    c.le("eq:113", {j + 1}, docks, 1);
    c.eq("eq:305", {j + 1}, docks, dests);
    c.le("eq:104", {j + 1}, load, inst.capacity);
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) {
        int carried = 0;
        for (int j = 0; j < n; ++j) carried += s1.U(j, p, d, t);
        c.eq("eq:105", {p + 1, d + 1, t + 1}, carried + s1.V(p, d, t), inst.demand(p, d, t));
      }
    }
  }
  for (int t = 0; t < r; ++t) {
    int docked = 0;
    for (int j = 0; j < n; ++j) docked += s1.y(j, t);
    c.le("eq:112", {t + 1}, docked, inst.outbound_doors);
  }
  return report;
}

ValidationReport check_step2(const Instance& inst, const Step1Solution& s1, const Step2Solution& s2) {
  check_step1_shapes(inst, s1);
  check_step2_shapes(inst, s2);
  ValidationReport report;
  detail::Checker c(report, 0.0);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products, r = inst.periods;
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) c.nonneg("B", {i + 1, p + 1}, s2.B(i, p));
    for (int t = 0; t < r; ++t) c.binary("h", {i + 1, t + 1}, s2.h(i, t));
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k; ++p) c.nonneg("A", {i + 1, j + 1, p + 1}, s2.A(i, j, p));
      for (int t = 0; t < r; ++t) c.binary("SB", {i + 1, j + 1, t + 1}, s2.SB(i, j, t));
      c.nonneg("qh", {i + 1, j + 1}, s2.qh(i, j));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) c.nonneg("G", {j + 1, p + 1}, s2.G(j, p));
  }
  for (int t = 0; t < r; ++t) c.nonneg("St", {t + 1}, s2.St[static_cast<std::size_t>(t)]);

  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      int shipped = 0;
      for (int j = 0; j < n; ++j) shipped += s2.A(i, j, p);
      c.eq("eq:202", {i + 1, p + 1}, shipped + s2.B(i, p), inst.load(i, p));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      int received = 0;
      for (int i = 0; i < m; ++i) received += s2.A(i, j, p);
      c.eq("eq:205", {j + 1, p + 1}, received + s2.G(j, p), s1.x(j, p));
    }
  }
  for (int t = 0; t < r; ++t) {
    int docked = 0;
    for (int i = 0; i < m; ++i) docked += s2.h(i, t);
    c.le("eq:209", {t + 1}, docked, inst.inbound_doors);
  }
  for (int i = 0; i < m; ++i) {
    int docked = 0, early = 0;
    for (int t = 0; t < r; ++t) docked += s2.h(i, t);
    for (int t = 0; t + 1 < inst.arrival[static_cast<std::size_t>(i)]; ++t) early += s2.h(i, t);
    c.eq("eq:210", {i + 1}, docked, 1);
    c.le("arrival", {i + 1}, early, 0);
  }
  for (int i = 0; i < m; ++i) {
    const int dock_in = step2_dock(s2, i);
    for (int j = 0; j < n; ++j) {
      int shipped = 0;
      for (int p = 0; p < k; ++p) shipped += s2.A(i, j, p);
      const int link = step2_link(s2, i, j);
      int link_period = 0;
      for (int t = 0; t < r; ++t) link_period += (t + 1) * s2.SB(i, j, t);
      c.le("eq:206", {i + 1, j + 1}, shipped, static_cast<double>(inst.truck_supply(i)) * link);
      c.le("eq:206", {i + 1, j + 1}, link, shipped);
      c.le("eq:208", {i + 1, j + 1}, link, 1);
      c.le("eq:217", {i + 1, j + 1}, dock_in, link_period + r * (1 - link));
      c.le("eq:218", {i + 1, j + 1}, link_period, step1_dock(s1, j));
      c.eq("qh", {i + 1, j + 1}, s2.qh(i, j), dock_in * link);
    }
  }
  const auto levels = step2_storage(inst, s1, s2);
  for (int t = 0; t < r; ++t) {
    const auto st = static_cast<double>(s2.St[static_cast<std::size_t>(t)]);
    c.eq("eq:236", {t + 1}, st, static_cast<double>(levels[static_cast<std::size_t>(t)]));
    c.le("eq:237", {t + 1}, st, inst.storage_cap());
  }
  return report;
}

Solution assemble(const Instance& inst, const Step1Solution& s1, const Step2Solution& s2) {
  check_step1_shapes(inst, s1);
  check_step2_shapes(inst, s2);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods;
  auto fail = [](const std::string& identity, std::initializer_list<int> idx) {
    std::string where;
    for (int v : idx) where += (where.empty() ? "" : ",") + std::to_string(v);
    throw AssemblyError(identity + " violated at (" + where + ")");
  };
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      int received = 0;
      for (int i = 0; i < m; ++i) received += s2.A(i, j, p);
      if (received + s2.G(j, p) != s1.x(j, p)) fail("sum_i A_ijp + G_jp == x_jp", {j + 1, p + 1});
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      int shipped = 0;
      for (int j = 0; j < n; ++j) shipped += s2.A(i, j, p);
      if (shipped + s2.B(i, p) != inst.load(i, p)) fail("sum_j A_ijp + B_ip == L_ip", {i + 1, p + 1});
    }
  }

  Solution sol = make_empty_solution(inst);
  sol.h = s2.h;
  sol.y = s1.y;
  sol.q = s1.q;
  sol.SB = s2.SB;
  Grid<int, 2> expected_v({k, f});
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) expected_v(p, d) += s1.V(p, d, t);
    }
  }
  for (int j = 0; j < n; ++j) {
    const int d = step1_destination(s1, j);
    for (int p = 0; p < k; ++p) {
      if (d < 0) {
        if (s1.x(j, p) != 0) fail("x_jp > 0 requires a destination for truck j", {j + 1, p + 1});
        continue;
      }
      expected_v(p, d) += s2.G(j, p);
      for (int i = 0; i < m; ++i) sol.S(i, j, p, d) = s2.A(i, j, p);
    }
  }
  complete_solution(inst, sol);
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      if (sol.V(p, d) != expected_v(p, d)) fail("V_pd == sum_t V_pdt + sum_j G_jp", {p + 1, d + 1});
    }
  }
  return sol;
}

nlohmann::json to_json(const Instance& inst, const Step1Solution& s1) {
  check_step1_shapes(inst, s1);
  nlohmann::json doc;
  doc["schema"] = std::string(kStep1Schema);
  doc["x"] = detail::grid_to_json(s1.x);
  doc["q"] = detail::grid_to_json(s1.q);
  doc["y"] = detail::grid_to_json(s1.y);
  doc["V"] = detail::grid_to_json(s1.V);
  return doc;
}

Step1Solution step1_from_json(const Instance& inst, const nlohmann::json& doc) {
  const int n = inst.outbound_trucks, k = inst.products, f = inst.destinations, r = inst.periods;
  try {
    if (doc.value("schema", std::string{}) != kStep1Schema) {
      throw MalformedSolutionError("unsupported step-1 schema");
    }
    Step1Solution s1 = make_empty_step1(inst);
    s1.x = detail::grid_from_json<2>(doc.at("x"), {n, k}, "x");
    s1.q = detail::grid_from_json<2>(doc.at("q"), {n, f}, "q");
    s1.y = detail::grid_from_json<2>(doc.at("y"), {n, r}, "y");
    s1.V = detail::grid_from_json<3>(doc.at("V"), {k, f, r}, "V");
    complete_step1(inst, s1);
    return s1;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSolutionError(std::string("step-1 JSON: ") + e.what());
  }
}

nlohmann::json to_json(const Instance& inst, const Step2Solution& s2) {
  check_step2_shapes(inst, s2);
  nlohmann::json doc;
  doc["schema"] = std::string(kStep2Schema);
  doc["A"] = detail::grid_to_json(s2.A);
  doc["B"] = detail::grid_to_json(s2.B);
  doc["G"] = detail::grid_to_json(s2.G);
  doc["h"] = detail::grid_to_json(s2.h);
  doc["SB"] = detail::grid_to_json(s2.SB);
  doc["St"] = s2.St;
  return doc;
}

Step2Solution step2_from_json(const Instance& inst, const nlohmann::json& doc) {
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products, r = inst.periods;
  try {
    if (doc.value("schema", std::string{}) != kStep2Schema) {
      throw MalformedSolutionError("unsupported step-2 schema");
    }
    Step2Solution s2 = make_empty_step2(inst);
    s2.A = detail::grid_from_json<3>(doc.at("A"), {m, n, k}, "A");
    s2.B = detail::grid_from_json<2>(doc.at("B"), {m, k}, "B");
    s2.G = detail::grid_from_json<2>(doc.at("G"), {n, k}, "G");
    s2.h = detail::grid_from_json<2>(doc.at("h"), {m, r}, "h");
    s2.SB = detail::grid_from_json<3>(doc.at("SB"), {m, n, r}, "SB");
    s2.St = doc.at("St").get<std::vector<int>>();
    if (static_cast<int>(s2.St.size()) != r) throw DimensionError("St has wrong length");
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        s2.qh(i, j) = step2_dock(s2, i) * step2_link(s2, i, j);
      }
    }
    return s2;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSolutionError(std::string("step-2 JSON: ") + e.what());
  }
}

}  // namespace xdock
