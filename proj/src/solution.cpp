#include "xdock/solution.hpp"

#include "grid_json.hpp"
#include "xdock/core_model.hpp"
#include "xdock/errors.hpp"

namespace xdock {

Solution make_empty_solution(const Instance& inst) {
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods;
  Solution sol;
  sol.h = Grid<int, 2>({m, r});
  sol.y = Grid<int, 2>({n, r});
  sol.q = Grid<int, 2>({n, f});
  sol.S = Grid<int, 4>({m, n, k, f});
  sol.SB = Grid<int, 3>({m, n, r});
  sol.WB = Grid<int, 3>({n, k, f});
  sol.V = Grid<int, 2>({k, f});
  sol.St.assign(static_cast<std::size_t>(r), 0);
  sol.qy = Grid<int, 2>({m, n});
  sol.qh = Grid<int, 2>({m, n});
  sol.WY = Grid<int, 3>({n, k, f});
  sol.LJ = Grid<int, 2>({n, r});
  sol.DT = Grid<int, 2>({n, r});
  return sol;
}

void check_shapes(const Instance& inst, const Solution& sol) {
  const Solution ref = make_empty_solution(inst);
  auto expect = [](bool ok, const char* what) {
    if (!ok) throw DimensionError(std::string("solution grid ") + what + " has wrong shape");
  };
  expect(sol.h.dims() == ref.h.dims(), "h");
  expect(sol.y.dims() == ref.y.dims(), "y");
  expect(sol.q.dims() == ref.q.dims(), "q");
  expect(sol.S.dims() == ref.S.dims(), "S");
  expect(sol.SB.dims() == ref.SB.dims(), "SB");
  expect(sol.WB.dims() == ref.WB.dims(), "WB");
  expect(sol.V.dims() == ref.V.dims(), "V");
  expect(sol.St.size() == ref.St.size(), "St");
  expect(sol.qy.dims() == ref.qy.dims(), "qy");
  expect(sol.qh.dims() == ref.qh.dims(), "qh");
  expect(sol.WY.dims() == ref.WY.dims(), "WY");
  expect(sol.LJ.dims() == ref.LJ.dims(), "LJ");
  expect(sol.DT.dims() == ref.DT.dims(), "DT");
}

int inbound_dock(const Solution& sol, int i) {
  int period = 0;
  for (int t = 0; t < sol.h.dim(1); ++t) period += (t + 1) * sol.h(i, t);
  return period;
}

int outbound_dock(const Solution& sol, int j) {
  int period = 0;
  for (int t = 0; t < sol.y.dim(1); ++t) period += (t + 1) * sol.y(j, t);
  return period;
}

int destination_number(const Solution& sol, int j) {
  int dest = 0;
  for (int d = 0; d < sol.q.dim(1); ++d) dest += (d + 1) * sol.q(j, d);
  return dest;
}

int link_count(const Solution& sol, int i, int j) {
  int used = 0;
  for (int t = 0; t < sol.SB.dim(2); ++t) used += sol.SB(i, j, t);
  return used;
}

int outbound_load(const Solution& sol, int j) {
  int total = 0;
  for (int i = 0; i < sol.S.dim(0); ++i) {
    for (int p = 0; p < sol.S.dim(2); ++p) {
      for (int d = 0; d < sol.S.dim(3); ++d) total += sol.S(i, j, p, d);
    }
  }
  return total;
}

void fill_auxiliaries(const Instance& inst, Solution& sol) {
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int link = link_count(sol, i, j);
      sol.qy(i, j) = outbound_dock(sol, j) * link;
      sol.qh(i, j) = inbound_dock(sol, i) * link;
    }
  }
  for (int j = 0; j < n; ++j) {
    const int dock = outbound_dock(sol, j);
    const int load = outbound_load(sol, j);
    const int dest = destination_number(sol, j);
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) sol.WY(j, p, d) = dock * sol.WB(j, p, d);
    }
    for (int t = 0; t < r; ++t) {
      sol.LJ(j, t) = sol.y(j, t) * load;
      sol.DT(j, t) = sol.y(j, t) * dest;
    }
  }
}

void complete_solution(const Instance& inst, Solution& sol) {
  check_shapes(inst, sol);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations;
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        int shipped = 0;
        for (int i = 0; i < m; ++i) shipped += sol.S(i, j, p, d);
        sol.WB(j, p, d) = shipped > 0 ? 1 : 0;
      }
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      int shipped = 0;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) shipped += sol.S(i, j, p, d);
      }
      sol.V(p, d) = inst.total_demand(p, d) - shipped;
    }
  }
  const StorageProfile profile = storage_profile(inst, sol);
  for (std::size_t t = 0; t < sol.St.size(); ++t) {
    sol.St[t] = static_cast<int>(profile.levels[t]);
  }
  fill_auxiliaries(inst, sol);
}

nlohmann::json to_json(const Instance& inst, const Solution& sol) {
  check_shapes(inst, sol);
  nlohmann::json doc;
  doc["schema"] = kSolutionSchema;
  doc["h"] = detail::grid_to_json(sol.h);
  doc["y"] = detail::grid_to_json(sol.y);
  doc["q"] = detail::grid_to_json(sol.q);
  doc["S"] = detail::grid_to_json(sol.S);
  doc["SB"] = detail::grid_to_json(sol.SB);
  doc["WB"] = detail::grid_to_json(sol.WB);
  doc["V"] = detail::grid_to_json(sol.V);
  doc["St"] = sol.St;
  nlohmann::json aux;
  aux["qy"] = detail::grid_to_json(sol.qy);
  aux["qh"] = detail::grid_to_json(sol.qh);
  aux["WY"] = detail::grid_to_json(sol.WY);
  aux["LJ"] = detail::grid_to_json(sol.LJ);
  aux["DT"] = detail::grid_to_json(sol.DT);
  doc["auxiliaries"] = aux;
  return doc;
}

Solution solution_from_json(const Instance& inst, const nlohmann::json& doc) {
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods;
  try {
    if (doc.value("schema", std::string{}) != kSolutionSchema) {
      throw MalformedSolutionError("unsupported solution schema");
    }
    Solution sol = make_empty_solution(inst);
    sol.h = detail::grid_from_json<2>(doc.at("h"), {m, r}, "h");
    sol.y = detail::grid_from_json<2>(doc.at("y"), {n, r}, "y");
    sol.q = detail::grid_from_json<2>(doc.at("q"), {n, f}, "q");
    sol.S = detail::grid_from_json<4>(doc.at("S"), {m, n, k, f}, "S");
    sol.SB = detail::grid_from_json<3>(doc.at("SB"), {m, n, r}, "SB");
    sol.WB = detail::grid_from_json<3>(doc.at("WB"), {n, k, f}, "WB");
    sol.V = detail::grid_from_json<2>(doc.at("V"), {k, f}, "V");
    sol.St = doc.at("St").get<std::vector<int>>();
    if (static_cast<int>(sol.St.size()) != r) throw DimensionError("St has wrong length");
    if (doc.contains("auxiliaries")) {
      const auto& aux = doc.at("auxiliaries");
      sol.qy = detail::grid_from_json<2>(aux.at("qy"), {m, n}, "qy");
      sol.qh = detail::grid_from_json<2>(aux.at("qh"), {m, n}, "qh");
      sol.WY = detail::grid_from_json<3>(aux.at("WY"), {n, k, f}, "WY");
      sol.LJ = detail::grid_from_json<2>(aux.at("LJ"), {n, r}, "LJ");
      sol.DT = detail::grid_from_json<2>(aux.at("DT"), {n, r}, "DT");
    } else {
      fill_auxiliaries(inst, sol);
    }
    return sol;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSolutionError(std::string("solution JSON: ") + e.what());
  }
}

}  // namespace xdock
