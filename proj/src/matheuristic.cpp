#include "xdock/matheuristic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "model_blocks.hpp"
#include "xdock/errors.hpp"
#include "xdock/heuristic.hpp"
#include "xdock/milp_builder.hpp"
#include "xdock/model_io.hpp"
#include "xdock/oracle.hpp"
#include "xdock/step2_search.hpp"

namespace xdock {

namespace {

using detail::add_product_block;
using detail::concat;

struct Names {
  const LinearModel& model;
  int get(const std::string& family, std::initializer_list<int> idx) const {
    return model.variable_index(var_name(family, idx));
  }
};

void require_kind(const LinearModel& model, const std::string& kind) {
  if (model.metadata().kind != kind) throw DecodeError("not a " + kind + " model");
}

double gap_of(std::int64_t objective, std::int64_t bound) {
  return static_cast<double>(objective - bound) / static_cast<double>(std::max<std::int64_t>(objective, 1));
}

}  // namespace

LinearModel build_step1(const Instance& inst) {
  check_instance(inst);
  const int n = inst.outbound_trucks, k = inst.products, f = inst.destinations, r = inst.periods,
            C = inst.capacity;
  LinearModel model("XDOCK1");
  auto& meta = model.metadata();
  meta.kind = "step1";
  meta.fingerprint = fingerprint(inst);
  meta.dims = {inst.inbound_trucks, n, k, f, r};

  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) model.add_integer(var_name("x", {j, p}), 0, C);
  }
  for (int j = 0; j < n; ++j) {
    for (int d = 0; d < f; ++d) model.add_binary(var_name("q", {j, d}));
  }
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < r; ++t) model.add_binary(var_name("y", {j, t}));
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) model.add_integer(var_name("V", {p, d, t}), 0, inst.demand(p, d, t));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) model.add_integer(var_name("W", {j, p, d}), 0, C);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        for (int t = 0; t < r; ++t) model.add_integer(var_name("U", {j, p, d, t}), 0, C);
      }
    }
  }
  const Names v{model};

  std::vector<Term> objective;
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) objective.push_back({v.get("V", {p, d, t}), 1});
    }
  }
  model.set_objective(objective);

  for (int j = 0; j < n; ++j) {
    std::vector<Term> load, dests, docks;
    for (int p = 0; p < k; ++p) load.push_back({v.get("x", {j, p}), 1});
    for (int d = 0; d < f; ++d) dests.push_back({v.get("q", {j, d}), 1});
    for (int t = 0; t < r; ++t) docks.push_back({v.get("y", {j, t}), 1});
    model.add_row(var_name("eq104", {j}), Sense::le, C, load);
    model.add_row(var_name("eq131", {j}), Sense::le, 1, dests);
    model.add_row(var_name("eq113", {j}), Sense::le, 1, docks);
    std::vector<Term> balance = docks;
    for (const Term& t : dests) balance.push_back({t.var, -1});
    model.add_row(var_name("eq305", {j}), Sense::eq, 0, balance);
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      std::vector<Term> spread{{v.get("x", {j, p}), -1}};
      for (int d = 0; d < f; ++d) {
        for (int t = 0; t < r; ++t) spread.push_back({v.get("U", {j, p, d, t}), 1});
      }
      model.add_row(var_name("eq304", {j, p}), Sense::eq, 0, spread);
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) {
        std::vector<Term> terms{{v.get("V", {p, d, t}), 1}};
        for (int j = 0; j < n; ++j) terms.push_back({v.get("U", {j, p, d, t}), 1});
        model.add_row(var_name("eq105", {p, d, t}), Sense::eq, inst.demand(p, d, t), terms);
      }
    }
  }
  for (int t = 0; t < r; ++t) {
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j) terms.push_back({v.get("y", {j, t}), 1});
    model.add_row(var_name("eq112", {t}), Sense::le, inst.outbound_doors, terms);
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        add_product_block(model, "l302", {j, p, d}, v.get("W", {j, p, d}), v.get("q", {j, d}),
                          {{v.get("x", {j, p}), 1}}, C);
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        for (int t = 0; t < r; ++t) {
          add_product_block(model, "l303", {j, p, d, t}, v.get("U", {j, p, d, t}), v.get("y", {j, t}),
                            {{v.get("W", {j, p, d}), 1}}, C);
        }
      }
    }
  }
  return model;
}

LinearModel build_step2(const Instance& inst, const Step1Solution& s1) {
  check_instance(inst);
  if (s1.x.dims() != make_empty_step1(inst).x.dims() || s1.y.dims() != make_empty_step1(inst).y.dims()) {
    throw DimensionError("step-1 solution does not match the instance dimensions");
  }
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products, r = inst.periods;
  LinearModel model("XDOCK2");
  auto& meta = model.metadata();
  meta.kind = "step2";
  meta.fingerprint = fingerprint(inst);
  meta.dims = {m, n, k, inst.destinations, r};
  std::vector<int> dock(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) dock[static_cast<std::size_t>(j)] = step1_dock(s1, j);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k; ++p) {
        model.add_integer(var_name("A", {i, j, p}), 0, std::max(0, std::min(inst.load(i, p), s1.x(j, p))));
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) model.add_integer(var_name("B", {i, p}), 0, inst.load(i, p));
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) model.add_integer(var_name("G", {j, p}), 0, std::max(0, s1.x(j, p)));
  }
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < r; ++t) model.add_binary(var_name("h", {i, t}));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = 0; t < r; ++t) model.add_binary(var_name("SB", {i, j, t}));
    }
  }
  for (int t = 0; t < r; ++t) model.add_integer(var_name("St", {t}), 0, inst.storage_cap());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) model.add_integer(var_name("qh", {i, j}), 0, r);
  }
  const Names v{model};
  auto link_sum = [&](int i, int j, double scale) {
    std::vector<Term> terms;
    for (int t = 0; t < r; ++t) terms.push_back({v.get("SB", {i, j, t}), scale});
    return terms;
  };
  auto shipped = [&](int i, int j, double scale) {
    std::vector<Term> terms;
    for (int p = 0; p < k; ++p) terms.push_back({v.get("A", {i, j, p}), scale});
    return terms;
  };
  auto dock_in = [&](int i) {
    std::vector<Term> terms;
    for (int t = 0; t < r; ++t) terms.push_back({v.get("h", {i, t}), static_cast<double>(t + 1)});
    return terms;
  };

  std::vector<Term> objective;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto links = link_sum(i, j, dock[static_cast<std::size_t>(j)]);
      objective.insert(objective.end(), links.begin(), links.end());
      objective.push_back({v.get("qh", {i, j}), -1});
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) objective.push_back({v.get("B", {i, p}), static_cast<double>(inst.penalty)});
  }
  model.set_objective(objective);

  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      std::vector<Term> terms{{v.get("B", {i, p}), 1}};
      for (int j = 0; j < n; ++j) terms.push_back({v.get("A", {i, j, p}), 1});
      model.add_row(var_name("eq202", {i, p}), Sense::eq, inst.load(i, p), terms);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      std::vector<Term> terms{{v.get("G", {j, p}), 1}};
      for (int i = 0; i < m; ++i) terms.push_back({v.get("A", {i, j, p}), 1});
      model.add_row(var_name("eq205", {j, p}), Sense::eq, s1.x(j, p), terms);
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      model.add_row(var_name("eq206a", {i, j}), Sense::le, 0,
                    concat(shipped(i, j, 1), link_sum(i, j, -inst.truck_supply(i))));
      model.add_row(var_name("eq206b", {i, j}), Sense::le, 0, concat(link_sum(i, j, 1), shipped(i, j, -1)));
      model.add_row(var_name("eq208", {i, j}), Sense::le, 1, link_sum(i, j, 1));
    }
  }
  for (int t = 0; t < r; ++t) {
    std::vector<Term> terms;
    for (int i = 0; i < m; ++i) terms.push_back({v.get("h", {i, t}), 1});
    model.add_row(var_name("eq209", {t}), Sense::le, inst.inbound_doors, terms);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Term> terms;
    for (int t = 0; t < r; ++t) terms.push_back({v.get("h", {i, t}), 1});
    model.add_row(var_name("eq210", {i}), Sense::eq, 1, terms);
  }
  for (int i = 0; i < m; ++i) {
    const int arrival = inst.arrival[static_cast<std::size_t>(i)];
    if (arrival <= 1) continue;
    std::vector<Term> terms;
    for (int t = 0; t + 1 < arrival && t < r; ++t) terms.push_back({v.get("h", {i, t}), 1});
    model.add_row(var_name("arr", {i}), Sense::le, 0, terms);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Term> terms = dock_in(i);
      for (int t = 0; t < r; ++t) terms.push_back({v.get("SB", {i, j, t}), static_cast<double>(r - (t + 1))});
      model.add_row(var_name("eq217", {i, j}), Sense::le, r, terms);
      std::vector<Term> dated;
      for (int t = 0; t < r; ++t) dated.push_back({v.get("SB", {i, j, t}), static_cast<double>(t + 1)});
      model.add_row(var_name("eq218", {i, j}), Sense::le, dock[static_cast<std::size_t>(j)], dated);
    }
  }
  for (int t = 0; t < r; ++t) {
    std::vector<Term> terms{{v.get("St", {t}), 1}};
    if (t > 0) terms.push_back({v.get("St", {t - 1}), -1});
    for (int i = 0; i < m; ++i) terms.push_back({v.get("h", {i, t}), -static_cast<double>(inst.truck_supply(i))});
    for (int j = 0; j < n; ++j) {
      if (s1.y(j, t) == 0) continue;
      for (int i = 0; i < m; ++i) {
        const auto loaded = shipped(i, j, 1);
        terms.insert(terms.end(), loaded.begin(), loaded.end());
      }
    }
    model.add_row(var_name("eq236", {t}), Sense::eq, 0, terms);
  }
  for (int t = 0; t < r; ++t) {
    model.add_row(var_name("eq237", {t}), Sense::le, inst.storage_cap(), {{v.get("St", {t}), 1}});
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int z = v.get("qh", {i, j});
      model.add_row(var_name("l26a", {i, j}), Sense::le, 0, concat({{z, 1}}, link_sum(i, j, -r)));
      model.add_row(var_name("l26b", {i, j}), Sense::le, r, concat(concat(dock_in(i), {{z, -1}}), link_sum(i, j, r)));
      model.add_row(var_name("l26c", {i, j}), Sense::ge, 0, concat(dock_in(i), {{z, -1}}));
    }
  }
  return model;
}

std::vector<double> encode_step1(const LinearModel& model, const Instance& inst, const Step1Solution& s1) {
  require_kind(model, "step1");
  const int n = inst.outbound_trucks, k = inst.products, f = inst.destinations, r = inst.periods;
  const Names v{model};
  std::vector<double> values(static_cast<std::size_t>(model.num_variables()), 0.0);
  auto set = [&](const std::string& family, std::initializer_list<int> idx, int value) {
    values[static_cast<std::size_t>(v.get(family, idx))] = value;
  };
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      set("x", {j, p}, s1.x(j, p));
      for (int d = 0; d < f; ++d) {
        set("W", {j, p, d}, s1.W(j, p, d));
        for (int t = 0; t < r; ++t) set("U", {j, p, d, t}, s1.U(j, p, d, t));
      }
    }
    for (int d = 0; d < f; ++d) set("q", {j, d}, s1.q(j, d));
    for (int t = 0; t < r; ++t) set("y", {j, t}, s1.y(j, t));
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) set("V", {p, d, t}, s1.V(p, d, t));
    }
  }
  return values;
}

std::vector<double> encode_step2(const LinearModel& model, const Instance& inst, const Step2Solution& s2) {
  require_kind(model, "step2");
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products, r = inst.periods;
  const Names v{model};
  std::vector<double> values(static_cast<std::size_t>(model.num_variables()), 0.0);
  auto set = [&](const std::string& family, std::initializer_list<int> idx, int value) {
    values[static_cast<std::size_t>(v.get(family, idx))] = value;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k; ++p) set("A", {i, j, p}, s2.A(i, j, p));
      for (int t = 0; t < r; ++t) set("SB", {i, j, t}, s2.SB(i, j, t));
      set("qh", {i, j}, s2.qh(i, j));
    }
    for (int p = 0; p < k; ++p) set("B", {i, p}, s2.B(i, p));
    for (int t = 0; t < r; ++t) set("h", {i, t}, s2.h(i, t));
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) set("G", {j, p}, s2.G(j, p));
  }
  for (int t = 0; t < r; ++t) set("St", {t}, s2.St[static_cast<std::size_t>(t)]);
  return values;
}

Step1Solution decode_step1(const LinearModel& model, const Instance& inst, const Assignment& assignment,
                           std::vector<std::string>* warnings) {
  require_kind(model, "step1");
  std::vector<std::string> notes;
  const std::vector<int> values = detail::round_values(model, to_dense(model, assignment), notes);
  if (warnings) warnings->insert(warnings->end(), notes.begin(), notes.end());
  const int n = inst.outbound_trucks, k = inst.products, f = inst.destinations, r = inst.periods;
  const Names v{model};
  auto at = [&](const std::string& family, std::initializer_list<int> idx) {
    return values[static_cast<std::size_t>(v.get(family, idx))];
  };
  Step1Solution s1 = make_empty_step1(inst);
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) {
      s1.x(j, p) = at("x", {j, p});
      for (int d = 0; d < f; ++d) {
        s1.W(j, p, d) = at("W", {j, p, d});
        for (int t = 0; t < r; ++t) s1.U(j, p, d, t) = at("U", {j, p, d, t});
      }
    }
    for (int d = 0; d < f; ++d) s1.q(j, d) = at("q", {j, d});
    for (int t = 0; t < r; ++t) s1.y(j, t) = at("y", {j, t});
  }
  for (int p = 0; p < k; ++p) {
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) s1.V(p, d, t) = at("V", {p, d, t});
    }
  }
  return s1;
}

Step2Solution decode_step2(const LinearModel& model, const Instance& inst, const Assignment& assignment,
                           std::vector<std::string>* warnings) {
  require_kind(model, "step2");
  std::vector<std::string> notes;
  const std::vector<int> values = detail::round_values(model, to_dense(model, assignment), notes);
  if (warnings) warnings->insert(warnings->end(), notes.begin(), notes.end());
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products, r = inst.periods;
  const Names v{model};
  auto at = [&](const std::string& family, std::initializer_list<int> idx) {
    return values[static_cast<std::size_t>(v.get(family, idx))];
  };
  Step2Solution s2 = make_empty_step2(inst);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k; ++p) s2.A(i, j, p) = at("A", {i, j, p});
      for (int t = 0; t < r; ++t) s2.SB(i, j, t) = at("SB", {i, j, t});
      s2.qh(i, j) = at("qh", {i, j});
    }
    for (int p = 0; p < k; ++p) s2.B(i, p) = at("B", {i, p});
    for (int t = 0; t < r; ++t) s2.h(i, t) = at("h", {i, t});
  }
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < k; ++p) s2.G(j, p) = at("G", {j, p});
  }
  for (int t = 0; t < r; ++t) s2.St[static_cast<std::size_t>(t)] = at("St", {t});
  return s2;
}

LinearModel warm_start(const LinearModel& model, const Instance& inst, const Step1Solution& heur) {
  if (model.metadata().kind != "step1") throw WarmStartError("warm starts apply to the step-1 model only");
  if (model.metadata().fingerprint != fingerprint(inst)) throw WarmStartError("model was built for a different instance");
  Step1Solution start = heur;
  complete_step1(inst, start);
  const ValidationReport report = check_step1(inst, start);
  if (!report.feasible) throw WarmStartError("warm start rejected: " + report.summary());
  const std::vector<double> values = encode_step1(model, inst, start);
  const auto violated = model.violated_rows(values);
  if (!violated.empty()) {
    std::string list;
    for (const auto& row : violated) list += (list.empty() ? "" : ", ") + row;
    throw WarmStartError("warm start rejected: " + list);
  }
  LinearModel out = model;
  out.set_start(values);
  return out;
}

std::string start_listing(const LinearModel& model) {
  if (!model.start()) throw WarmStartError("model carries no start");
  return write_listing(model, *model.start(), {{"status", "start"}});
}

std::string to_string(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::exact_exact: return "exact-exact";
    case PipelineMode::warmstart: return "warmstart";
    case PipelineMode::hybrid: return "hybrid";
  }
  return "";
}

PipelineMode parse_mode(const std::string& text) {
  if (text == "exact-exact") return PipelineMode::exact_exact;
  if (text == "warmstart") return PipelineMode::warmstart;
  if (text == "hybrid") return PipelineMode::hybrid;
  throw ConfigurationError("unknown mode '" + text + "' (expected exact-exact, warmstart or hybrid)");
}

nlohmann::json to_json(const RunReport& rep, bool timing) {
  nlohmann::json steps = nlohmann::json::array();
  for (const StepReport& s : rep.steps) {
    nlohmann::json step = {{"name", s.name},           {"method", s.method}, {"status", s.status},
                           {"objective", s.objective}, {"gap", s.gap},       {"states", s.states}};
    step["bound"] = s.bound ? nlohmann::json(*s.bound) : nlohmann::json(nullptr);
    if (s.start_objective) step["start_objective"] = *s.start_objective;
    if (timing) step["seconds"] = s.seconds;
    steps.push_back(step);
  }
  nlohmann::json doc = {
      {"schema", kReportSchema},
      {"instance", rep.instance},
      {"fingerprint", rep.fingerprint},
      {"method", rep.method},
      {"status", rep.status},
      {"feasible", rep.feasible},
      {"objective",
       {{"objective", rep.objective.objective},
        {"waiting", rep.objective.waiting_total},
        {"penalty", rep.objective.penalty_total}}},
      {"violations", rep.violations},
      {"steps", steps},
      {"warnings", rep.warnings},
  };
  if (!rep.error.empty()) doc["error"] = rep.error;
  if (timing) doc["seconds"] = rep.seconds;
  return doc;
}

std::string dump_report(const RunReport& report, bool timing) { return to_json(report, timing).dump(2) + "\n"; }

void score_solution(const Instance& inst, const Solution& sol, RunReport& report) {
  report.objective = evaluate_objective(inst, sol);
  const ValidationReport check = validate_solution(inst, sol);
  report.feasible = check.feasible;
  report.violations.clear();
  for (const Violation& v : check.violations) {
    if (std::find(report.violations.begin(), report.violations.end(), v.family) == report.violations.end()) {
      report.violations.push_back(v.family);
    }
  }
  report.status = check.feasible ? "feasible" : "infeasible";
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

bool within_guard_rails(const Instance& inst) {
  try {
    check_guard_rails(inst);
    return true;
  } catch (const GuardRailError&) {
    return false;
  }
}

std::string oracle_status(bool proven) { return proven ? "optimal" : "incumbent"; }

void finish_step(StepReport& step) {
  if (step.status == "optimal") step.bound = step.objective;
  step.gap = step.bound ? gap_of(step.objective, *step.bound) : 0.0;
}

// Applies an external result's status to `step`; false if it has no solution.
bool external_status(const ExternalResult& res, StepReport& step) {
  step.method = "external";
  step.status = res.status;
  if (res.bound) step.bound = static_cast<std::int64_t>(std::ceil(*res.bound - 1e-6));
  return res.status == "optimal" || res.status == "incumbent";
}

}  // namespace

PipelineResult run_pipeline(const Instance& inst, PipelineMode mode, const PipelineLimits& limits,
                            const Backend& backend) {
  check_instance(inst);
  if (!(limits.step_seconds > 0) || !(limits.total_seconds > 0)) {
    throw ConfigurationError("time limits must be positive");
  }
  const bool tiny = backend.use_oracle && within_guard_rails(inst);
  if (mode != PipelineMode::hybrid && !tiny && !backend.external) {
    throw ConfigurationError("no exact backend for '" + inst.name +
                             "': it exceeds the oracle's guard rails and no external solver is configured");
  }
  const auto start = Clock::now();
  auto step_limit = [&] {
    return std::max(0.001, std::min(limits.step_seconds, limits.total_seconds - since(start)));
  };

  PipelineResult out;
  RunReport& rep = out.report;
  rep.instance = inst.name;
  rep.fingerprint = fingerprint(inst);
  rep.method = to_string(mode);
  out.solution = make_empty_solution(inst);
  out.step1 = make_empty_step1(inst);
  out.step2 = make_empty_step2(inst);
  auto fail = [&](const std::string& status, const std::string& message) {
    rep.status = status;
    rep.error = message;
    rep.seconds = since(start);
    return out;
  };

  StepReport st1;
  st1.name = "step1";
  auto t1 = Clock::now();
  Step1Solution heur;
  if (mode != PipelineMode::exact_exact) heur = run_heuristic(inst);
  if (mode == PipelineMode::hybrid) {
    out.step1 = heur;
    st1.method = "heuristic";
    st1.status = "heuristic";
  } else {
    LinearModel model = build_step1(inst);
    if (mode == PipelineMode::warmstart) {
      model = warm_start(model, inst, heur);
      st1.start_objective = step1_objective(heur);
    }
    if (tiny) {
      OracleCaps caps;
      caps.time_limit = step_limit();
      const Step1OracleResult res = solve_step1_tiny(inst, caps);
      out.step1 = res.solution;
      st1.method = "oracle";
      st1.status = oracle_status(res.proven_optimal);
      st1.states = res.states;
      if (st1.start_objective && *st1.start_objective < res.objective) out.step1 = heur;
    } else {
      const ExternalResult res = run_external(*backend.external, model, step_limit());
      if (external_status(res, st1)) {
        out.step1 = decode_step1(model, inst, res.values, &rep.warnings);
        complete_step1(inst, out.step1);
        recompute_step1_shortfall(inst, out.step1);
      } else if (mode == PipelineMode::warmstart && res.status == "timeout") {
        out.step1 = heur;
      } else {
        st1.seconds = since(t1);
        rep.steps.push_back(st1);
        return fail(res.status == "infeasible" ? "infeasible" : "error", "step 1: solver returned " + res.status);
      }
    }
  }
  st1.objective = step1_objective(out.step1);
  st1.seconds = since(t1);
  finish_step(st1);
  rep.steps.push_back(st1);
  const ValidationReport s1_check = check_step1(inst, out.step1);
  if (!s1_check.feasible) return fail("error", "step 1 plan is not feasible: " + s1_check.summary());

  StepReport st2;
  st2.name = "step2";
  auto t2 = Clock::now();
  bool have_step2 = false;
  if (tiny) {
    OracleCaps caps;
    caps.time_limit = step_limit();
    const Step2OracleResult res = solve_step2_tiny(inst, out.step1, caps);
    st2.method = "oracle";
    st2.states = res.states;
    st2.status = res.feasible ? oracle_status(res.proven_optimal) : "infeasible";
    have_step2 = res.feasible;
    out.step2 = res.solution;
  } else if (backend.external) {
    const LinearModel model = build_step2(inst, out.step1);
    const ExternalResult res = run_external(*backend.external, model, step_limit());
    have_step2 = external_status(res, st2);
    if (have_step2) {
      out.step2 = decode_step2(model, inst, res.values, &rep.warnings);
      complete_step2(inst, out.step1, out.step2);
    }
  } else {
    const Step2SearchResult res = solve_step2_search(inst, out.step1);
    st2.method = "search";
    have_step2 = res.feasible;
    st2.status = !res.feasible ? "infeasible" : res.objective.objective == res.lower_bound ? "optimal" : "incumbent";
    st2.bound = res.lower_bound;
    st2.states = res.accepted_moves;
    out.step2 = res.solution;
  }
  st2.seconds = since(t2);
  if (have_step2) st2.objective = step2_objective(inst, out.step1, out.step2).objective;
  finish_step(st2);
  rep.steps.push_back(st2);
  if (!have_step2) return fail("infeasible", "step 2 found no schedule within the storage cap");

  out.solution = assemble(inst, out.step1, out.step2);
  score_solution(inst, out.solution, rep);
  rep.seconds = since(start);
  return out;
}

}  // namespace xdock
