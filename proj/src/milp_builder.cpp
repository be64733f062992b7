#include "xdock/milp_builder.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "model_blocks.hpp"
#include "xdock/errors.hpp"

namespace xdock {

std::string var_name(const std::string& family, std::initializer_list<int> zero_based) {
  std::string out = family;
  for (int idx : zero_based) out += "_" + std::to_string(idx + 1);
  return out;
}

std::string row_family(const std::string& row_name) {
  const std::string tag = row_name.substr(0, row_name.find('_'));
  if (tag == "arr") return "arrival";
  std::size_t pos = 0;
  while (pos < tag.size() && !std::isdigit(static_cast<unsigned char>(tag[pos]))) ++pos;
  std::size_t end = pos;
  while (end < tag.size() && std::isdigit(static_cast<unsigned char>(tag[end]))) ++end;
  if (pos == end) return tag;
  return "eq:" + tag.substr(pos, end - pos);
}

namespace {

// Index lookups for the integrated model's variable families.
struct Vars {
  const Instance& inst;
  const LinearModel& model;

  int get(const std::string& family, std::initializer_list<int> idx) const {
    return model.variable_index(var_name(family, idx));
  }
  int S(int i, int j, int p, int d) const { return get("S", {i, j, p, d}); }
  int SB(int i, int j, int t) const { return get("SB", {i, j, t}); }
  int y(int j, int t) const { return get("y", {j, t}); }
  int h(int i, int t) const { return get("h", {i, t}); }
  int q(int j, int d) const { return get("q", {j, d}); }
  int WB(int j, int p, int d) const { return get("WB", {j, p, d}); }
  int V(int p, int d) const { return get("V", {p, d}); }
  int St(int t) const { return get("St", {t}); }
  int qy(int i, int j) const { return get("qy", {i, j}); }
  int qh(int i, int j) const { return get("qh", {i, j}); }
  int WY(int j, int p, int d) const { return get("WY", {j, p, d}); }
  int LJ(int j, int t) const { return get("LJ", {j, t}); }
  int DT(int j, int t) const { return get("DT", {j, t}); }

  // sum_t t * x_t for a docking family.
  std::vector<Term> period_sum(const std::string& family, int truck, double scale = 1) const {
    std::vector<Term> terms;
    for (int t = 0; t < inst.periods; ++t) terms.push_back({get(family, {truck, t}), scale * (t + 1)});
    return terms;
  }
  std::vector<Term> link_sum(int i, int j, double scale = 1) const {
    std::vector<Term> terms;
    for (int t = 0; t < inst.periods; ++t) terms.push_back({SB(i, j, t), scale});
    return terms;
  }
  std::vector<Term> truck_load(int j, double scale = 1) const {
    std::vector<Term> terms;
    for (int i = 0; i < inst.inbound_trucks; ++i) {
      for (int p = 0; p < inst.products; ++p) {
        for (int d = 0; d < inst.destinations; ++d) terms.push_back({S(i, j, p, d), scale});
      }
    }
    return terms;
  }
};

using detail::add_product_block;
using detail::concat;

}  // namespace

LinearModel build_integrated(const Instance& inst, const BuildOptions& options) {
  {
    Instance clamped = inst;
    for (int& e : clamped.arrival) e = std::min(e, std::max(inst.periods, 1));
    check_instance(clamped);
  }
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods, C = inst.capacity;
  LinearModel model("XDOCK");
  auto& meta = model.metadata();
  meta.kind = "integrated";
  meta.fingerprint = fingerprint(inst);
  meta.dims = {m, n, k, f, r};
  for (int i = 0; i < m; ++i) {
    if (inst.arrival[static_cast<std::size_t>(i)] > r) {
      meta.warnings.push_back("inbound truck " + std::to_string(i + 1) +
                              " arrives after the horizon; model is infeasible");
    }
  }
  for (const auto& w : instance_warnings(inst)) meta.warnings.push_back(w);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k; ++p) {
        for (int d = 0; d < f; ++d) {
          model.add_integer(var_name("S", {i, j, p, d}), 0, std::min(inst.load(i, p), C));
        }
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = 0; t < r; ++t) model.add_binary(var_name("SB", {i, j, t}));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < r; ++t) model.add_binary(var_name("y", {j, t}));
  }
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < r; ++t) model.add_binary(var_name("h", {i, t}));
  }
  for (int j = 0; j < n; ++j) {
    for (int d = 0; d < f; ++d) model.add_binary(var_name("q", {j, d}));
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) model.add_binary(var_name("WB", {j, p, d}));
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) model.add_integer(var_name("V", {p, d}), 0, inst.total_demand(p, d));
  }
  for (int t = 0; t < r; ++t) model.add_integer(var_name("St", {t}), 0, inst.storage_cap());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) model.add_integer(var_name("qy", {i, j}), 0, r);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) model.add_integer(var_name("qh", {i, j}), 0, r);
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) model.add_integer(var_name("WY", {j, p, d}), 0, r);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < r; ++t) model.add_integer(var_name("LJ", {j, t}), 0, C);
  }

  const Vars v{inst, model};

  std::vector<Term> objective;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      objective.push_back({v.qy(i, j), 1});
      objective.push_back({v.qh(i, j), -1});
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) objective.push_back({v.V(p, d), static_cast<double>(inst.penalty)});
  }
  model.set_objective(objective);

  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      std::vector<Term> terms;
      for (int j = 0; j < n; ++j) {
        for (int d = 0; d < f; ++d) terms.push_back({v.S(i, j, p, d), 1});
      }
      model.add_row(var_name("eq2", {i, p}), Sense::le, inst.load(i, p), terms);
    }
  }
  for (int j = 0; j < n; ++j) model.add_row(var_name("eq4", {j}), Sense::le, C, v.truck_load(j));
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      std::vector<Term> terms;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) terms.push_back({v.S(i, j, p, d), 1});
      }
      terms.push_back({v.V(p, d), 1});
      model.add_row(var_name("eq5", {p, d}), Sense::eq, inst.total_demand(p, d), terms);
    }
  }
  for (int i = 0; i < m; ++i) {
    const double big_m = inst.truck_supply(i);
    for (int j = 0; j < n; ++j) {
      std::vector<Term> shipped;
      for (int p = 0; p < k; ++p) {
        for (int d = 0; d < f; ++d) shipped.push_back({v.S(i, j, p, d), 1});
      }
      model.add_row(var_name("eq6a", {i, j}), Sense::le, 0, concat(shipped, v.link_sum(i, j, -big_m)));
      std::vector<Term> negated = shipped;
      for (Term& t : negated) t.coef = -1;
      model.add_row(var_name("eq6b", {i, j}), Sense::le, 0, concat(v.link_sum(i, j), negated));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) model.add_row(var_name("eq8", {i, j}), Sense::le, 1, v.link_sum(i, j));
  }
  for (int t = 0; t < r; ++t) {
    std::vector<Term> terms;
    for (int i = 0; i < m; ++i) terms.push_back({v.h(i, t), 1});
    model.add_row(var_name("eq9", {t}), Sense::le, inst.inbound_doors, terms);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Term> terms;
    for (int t = 0; t < r; ++t) terms.push_back({v.h(i, t), 1});
    model.add_row(var_name("eq10", {i}), Sense::eq, 1, terms);
  }
  for (int t = 0; t < r; ++t) {
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j) terms.push_back({v.y(j, t), 1});
    model.add_row(var_name("eq12", {t}), Sense::le, inst.outbound_doors, terms);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Term> terms;
    for (int t = 0; t < r; ++t) terms.push_back({v.y(j, t), 1});
    model.add_row(var_name("eq13", {j}), Sense::le, 1, terms);
  }
  for (int i = 0; i < m; ++i) {
    const int arrival = inst.arrival[static_cast<std::size_t>(i)];
    if (arrival <= 1) continue;
    std::vector<Term> terms;
    for (int t = 0; t + 1 < arrival && t < r; ++t) terms.push_back({v.h(i, t), 1});
    model.add_row(var_name("arr", {i}), Sense::le, 0, terms);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      // dock(i) - sum_t t SB + r sum_t SB <= r
      std::vector<Term> terms = v.period_sum("h", i);
      for (int t = 0; t < r; ++t) terms.push_back({v.SB(i, j, t), static_cast<double>(r - (t + 1))});
      model.add_row(var_name("eq17", {i, j}), Sense::le, r, terms);
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Term> terms;
      for (int t = 0; t < r; ++t) terms.push_back({v.SB(i, j, t), static_cast<double>(t + 1)});
      model.add_row(var_name("eq18", {i, j}), Sense::le, 0, concat(terms, v.period_sum("y", j, -1)));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        std::vector<Term> shipped;
        for (int i = 0; i < m; ++i) shipped.push_back({v.S(i, j, p, d), 1});
        model.add_row(var_name("eq20a", {j, p, d}), Sense::le, 0,
                      concat(shipped, {{v.WB(j, p, d), -static_cast<double>(C)}}));
        std::vector<Term> negated = shipped;
        for (Term& t : negated) t.coef = -1;
        model.add_row(var_name("eq20b", {j, p, d}), Sense::le, 0, concat({{v.WB(j, p, d), 1}}, negated));
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int d = 0; d < f; ++d) {
      std::vector<Term> terms;
      for (int p = 0; p < k; ++p) terms.push_back({v.WB(j, p, d), 1});
      terms.push_back({v.q(j, d), -static_cast<double>(k)});
      model.add_row(var_name("eq30", {j, d}), Sense::le, 0, terms);
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Term> terms;
    for (int d = 0; d < f; ++d) terms.push_back({v.q(j, d), 1});
    model.add_row(var_name("eq31", {j}), Sense::le, 1, terms);
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        model.add_row(var_name("eq22", {j, p, d}), Sense::eq, 0,
                      {{v.WY(j, p, d), 1}, {v.WB(j, p, d), -static_cast<double>(inst.jit_period(p, d))}});
      }
    }
  }
  for (int t = 0; t < r; ++t) {
    std::vector<Term> terms{{v.St(t), 1}};
    if (t > 0) terms.push_back({v.St(t - 1), -1});
    for (int i = 0; i < m; ++i) terms.push_back({v.h(i, t), -static_cast<double>(inst.truck_supply(i))});
    for (int j = 0; j < n; ++j) terms.push_back({v.LJ(j, t), 1});
    model.add_row(var_name("eq36", {t}), Sense::eq, 0, terms);
  }
  for (int t = 0; t < r; ++t) {
    model.add_row(var_name("eq37", {t}), Sense::le, inst.storage_cap(), {{v.St(t), 1}});
  }

  // Linearization blocks. The link indicator sum_t SB is binary by eq8, so the
  // product blocks are written against it directly.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int z = v.qy(i, j);
      const auto dock = v.period_sum("y", j);
      model.add_row(var_name("l28a", {i, j}), Sense::le, 0, concat({{z, 1}}, v.link_sum(i, j, -r)));
      model.add_row(var_name("l28b", {i, j}), Sense::le, r,
                    concat(concat(dock, {{z, -1}}), v.link_sum(i, j, r)));
      model.add_row(var_name("l28c", {i, j}), Sense::ge, 0, concat(dock, {{z, -1}}));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int z = v.qh(i, j);
      const auto dock = v.period_sum("h", i);
      model.add_row(var_name("l26a", {i, j}), Sense::le, 0, concat({{z, 1}}, v.link_sum(i, j, -r)));
      model.add_row(var_name("l26b", {i, j}), Sense::le, r,
                    concat(concat(dock, {{z, -1}}), v.link_sum(i, j, r)));
      model.add_row(var_name("l26c", {i, j}), Sense::ge, 0, concat(dock, {{z, -1}}));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        add_product_block(model, "l23", {j, p, d}, v.WY(j, p, d), v.WB(j, p, d), v.period_sum("y", j), r);
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < r; ++t) {
      add_product_block(model, "l33", {j, t}, v.LJ(j, t), v.y(j, t), v.truck_load(j), C);
    }
  }

  if (options.sbc) add_symmetry_breaking(model, inst);
  return model;
}

void add_symmetry_breaking(LinearModel& model, const Instance& inst) {
  if (model.metadata().kind != "integrated") {
    throw ModelError("symmetry breaking applies to the integrated model only");
  }
  if (model.metadata().sbc || model.find_variable(var_name("DT", {0, 0}))) {
    throw ModelError("symmetry breaking already applied");
  }
  if (model.metadata().fingerprint != fingerprint(inst)) {
    throw ModelError("model was built for a different instance");
  }
  const int n = inst.outbound_trucks, f = inst.destinations, r = inst.periods;
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < r; ++t) model.add_integer(var_name("DT", {j, t}), 0, f);
  }
  const Vars v{inst, model};

  for (int j = 1; j < n; ++j) {
    model.add_row(var_name("sbc38", {j}), Sense::ge, 0,
                  concat(v.period_sum("y", j), v.period_sum("y", j - 1, -1)));
  }
  for (int j = 0; j < n; ++j) {
    for (int g = j + 1; g < n; ++g) {
      for (int t = 0; t < r; ++t) {
        model.add_row(var_name("sbc42", {j, g, t}), Sense::le, f,
                      {{v.DT(j, t), 1}, {v.DT(g, t), -1}, {v.y(g, t), static_cast<double>(f)}});
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Term> dest;
    for (int d = 0; d < f; ++d) dest.push_back({v.q(j, d), static_cast<double>(d + 1)});
    for (int t = 0; t < r; ++t) add_product_block(model, "l41", {j, t}, v.DT(j, t), v.y(j, t), dest, f);
  }
  model.metadata().sbc = true;
}

DecodeResult decode_solution(const LinearModel& model, const Instance& inst,
                             const Assignment& assignment) {
  if (model.metadata().kind != "integrated") throw DecodeError("not an integrated model");
  const std::vector<double> values = to_dense(model, assignment);
  DecodeResult out{make_empty_solution(inst), {}};
  const std::vector<int> rounded = detail::round_values(model, values, out.warnings);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods;
  const Vars v{inst, model};
  Solution& sol = out.solution;
  auto at = [&](int idx) { return rounded[static_cast<std::size_t>(idx)]; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k; ++p) {
        for (int d = 0; d < f; ++d) sol.S(i, j, p, d) = at(v.S(i, j, p, d));
      }
      for (int t = 0; t < r; ++t) sol.SB(i, j, t) = at(v.SB(i, j, t));
      sol.qy(i, j) = at(v.qy(i, j));
      sol.qh(i, j) = at(v.qh(i, j));
    }
    for (int t = 0; t < r; ++t) sol.h(i, t) = at(v.h(i, t));
  }
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < r; ++t) {
      sol.y(j, t) = at(v.y(j, t));
      sol.LJ(j, t) = at(v.LJ(j, t));
    }
    for (int d = 0; d < f; ++d) sol.q(j, d) = at(v.q(j, d));
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        sol.WB(j, p, d) = at(v.WB(j, p, d));
        sol.WY(j, p, d) = at(v.WY(j, p, d));
      }
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) sol.V(p, d) = at(v.V(p, d));
  }
  for (int t = 0; t < r; ++t) sol.St[static_cast<std::size_t>(t)] = at(v.St(t));
  const bool has_dt = model.find_variable(var_name("DT", {0, 0})).has_value();
  for (int j = 0; j < n; ++j) {
    const int dest = destination_number(sol, j);
    for (int t = 0; t < r; ++t) sol.DT(j, t) = has_dt ? at(v.DT(j, t)) : sol.y(j, t) * dest;
  }
  return out;
}

std::vector<double> encode_solution(const LinearModel& model, const Instance& inst,
                                    const Solution& sol) {
  check_shapes(inst, sol);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products,
            f = inst.destinations, r = inst.periods;
  const Vars v{inst, model};
  std::vector<double> values(static_cast<std::size_t>(model.num_variables()), 0.0);
  auto set = [&](int idx, int value) { values[static_cast<std::size_t>(idx)] = value; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k; ++p) {
        for (int d = 0; d < f; ++d) set(v.S(i, j, p, d), sol.S(i, j, p, d));
      }
      for (int t = 0; t < r; ++t) set(v.SB(i, j, t), sol.SB(i, j, t));
      set(v.qy(i, j), sol.qy(i, j));
      set(v.qh(i, j), sol.qh(i, j));
    }
    for (int t = 0; t < r; ++t) set(v.h(i, t), sol.h(i, t));
  }
  const bool has_dt = model.find_variable(var_name("DT", {0, 0})).has_value();
  for (int j = 0; j < n; ++j) {
    const int dest = destination_number(sol, j);
    for (int t = 0; t < r; ++t) {
      set(v.y(j, t), sol.y(j, t));
      set(v.LJ(j, t), sol.LJ(j, t));
      if (has_dt) set(v.DT(j, t), sol.y(j, t) * dest);
    }
    for (int d = 0; d < f; ++d) set(v.q(j, d), sol.q(j, d));
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        set(v.WB(j, p, d), sol.WB(j, p, d));
        set(v.WY(j, p, d), sol.WY(j, p, d));
      }
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) set(v.V(p, d), sol.V(p, d));
  }
  for (int t = 0; t < r; ++t) set(v.St(t), sol.St[static_cast<std::size_t>(t)]);
  return values;
}

}  // namespace xdock
