#include "xdock/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "xdock/errors.hpp"
#include "xdock/milp_builder.hpp"
#include "xdock/model_io.hpp"

namespace xdock {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
constexpr int kUnlimited = std::numeric_limits<int>::max();

class Budget {
 public:
  explicit Budget(const OracleCaps& caps) : caps_(caps), start_(Clock::now()) {}

  bool tick() {
    if (exhausted_) return false;
    ++states_;
    if (states_ > caps_.max_states) {
      exhausted_ = true;
    } else if ((states_ & 1023) == 0 &&
               std::chrono::duration<double>(Clock::now() - start_).count() > caps_.time_limit) {
      exhausted_ = true;
    }
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  std::int64_t states() const { return states_; }

 private:
  const OracleCaps& caps_;
  Clock::time_point start_;
  std::int64_t states_ = 0;
  bool exhausted_ = false;
};

// Shipments for a fixed docking schedule. Integrated mode penalizes uncovered
// demand per (p, d); step-2 mode penalizes unshipped supply per (i, p) and
// caps each (j, p) at the step-1 load.
class ShipSearch {
 public:
  enum class Mode { integrated, step2 };

  ShipSearch(const Instance& inst, Mode mode, const std::vector<int>& dock_in,
             const std::vector<int>& dock_out, const std::vector<int>& dest, const Grid<int, 2>* x,
             Budget& budget, bool prune)
      : inst_(inst), mode_(mode), dock_in_(dock_in), dock_out_(dock_out), budget_(budget), prune_(prune) {
    const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products, f = inst.destinations;
    rem_supply_ = inst.load;
    rem_cap_.assign(static_cast<std::size_t>(n), mode == Mode::integrated ? inst.capacity : kUnlimited);
    rem_pair_ = Grid<int, 2>({n, k}, kUnlimited);
    if (x) rem_pair_ = *x;
    rem_demand_ = Grid<int, 2>({k, f}, kUnlimited);
    if (mode == Mode::integrated) {
      for (int p = 0; p < k; ++p) {
        for (int d = 0; d < f; ++d) rem_demand_(p, d) = inst.total_demand(p, d);
      }
    }
    load_.assign(static_cast<std::size_t>(n), 0);
    flow_ = Grid<int, 2>({m, n});
    A_ = Grid<int, 3>({m, n, k});
    num_keys_ = mode == Mode::integrated ? k * f : m * k;

    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const int d = dest[static_cast<std::size_t>(j)];
        const int out = dock_out[static_cast<std::size_t>(j)];
        if (out == 0 || d < 0 || dock_in[static_cast<std::size_t>(i)] > out) continue;
        for (int p = 0; p < k; ++p) {
          if (inst.load(i, p) == 0) continue;
          if (mode == Mode::integrated) {
            if (inst.total_demand(p, d) == 0 || inst.jit_period(p, d) != out) continue;
          } else if (rem_pair_(j, p) == 0) {
            continue;
          }
          vars_.push_back({i, j, p, d, mode == Mode::integrated ? p * f + d : i * k + p});
        }
      }
    }
    // reach_[pos * keys + key]: most that variables pos.. can still ship for key.
    reach_.assign((vars_.size() + 1) * static_cast<std::size_t>(num_keys_), 0);
    for (std::size_t pos = vars_.size(); pos-- > 0;) {
      const Var& v = vars_[pos];
      for (int key = 0; key < num_keys_; ++key) {
        reach_[pos * num_keys_ + key] = reach_[(pos + 1) * num_keys_ + key];
      }
      reach_[pos * num_keys_ + v.key] += std::min({inst.load(v.i, v.p), rem_cap_[v.j], rem_pair_(v.j, v.p)});
    }
    unloaded_.assign(static_cast<std::size_t>(inst.periods), 0);
    for (int i = 0; i < m; ++i) {
      unloaded_[static_cast<std::size_t>(dock_in[static_cast<std::size_t>(i)] - 1)] += inst.truck_supply(i);
    }
  }

  // Best objective strictly below `limit`, or kInf. The first optimum met in
  // ascending (i, j, p) value order is kept, so ties resolve lexicographically.
  std::int64_t solve(std::int64_t limit, Grid<int, 3>& best) {
    limit_ = limit;
    best_obj_ = kInf;
    best_ = &best;
    if (prune_) {
      greedy_ = true;
      dfs(0);
      greedy_ = false;
      if (best_obj_ < kInf) limit_ = best_obj_ + 1;
    }
    if (!budget_.exhausted()) dfs(0);
    return best_obj_;
  }

 private:
  struct Var {
    int i, j, p, d, key;
  };

  int remaining(int key) const {
    if (mode_ == Mode::integrated) return rem_demand_(key / inst_.destinations, key % inst_.destinations);
    return rem_supply_(key / inst_.products, key % inst_.products);
  }

  std::int64_t penalty_units() const {
    std::int64_t total = 0;
    for (int key = 0; key < num_keys_; ++key) total += remaining(key);
    return total;
  }

  std::int64_t lower_bound(std::size_t pos) const {
    std::int64_t short_units = 0;
    for (int key = 0; key < num_keys_; ++key) {
      short_units += std::max(0, remaining(key) - reach_[pos * num_keys_ + key]);
    }
    return waiting_ + static_cast<std::int64_t>(inst_.penalty) * short_units;
  }

  bool storage_ok() const {
    std::int64_t level = 0;
    std::vector<std::int64_t> loaded(unloaded_.size(), 0);
    for (std::size_t j = 0; j < load_.size(); ++j) {
      if (dock_out_[j] > 0) loaded[static_cast<std::size_t>(dock_out_[j] - 1)] += load_[j];
    }
    for (std::size_t t = 0; t < unloaded_.size(); ++t) {
      level += unloaded_[t] - loaded[t];
      if (level < 0 || level > inst_.storage_cap()) return false;
    }
    return true;
  }

  void apply(const Var& v, int amount) {
    rem_supply_(v.i, v.p) -= amount;
    rem_cap_[static_cast<std::size_t>(v.j)] -= amount;
    rem_pair_(v.j, v.p) -= amount;
    if (mode_ == Mode::integrated) rem_demand_(v.p, v.d) -= amount;
    load_[static_cast<std::size_t>(v.j)] += amount;
    A_(v.i, v.j, v.p) += amount;
    if (amount > 0 && flow_(v.i, v.j)++ == 0) waiting_ += gap(v);
  }

  void undo(const Var& v, int amount) {
    rem_supply_(v.i, v.p) += amount;
    rem_cap_[static_cast<std::size_t>(v.j)] += amount;
    rem_pair_(v.j, v.p) += amount;
    if (mode_ == Mode::integrated) rem_demand_(v.p, v.d) += amount;
    load_[static_cast<std::size_t>(v.j)] -= amount;
    A_(v.i, v.j, v.p) -= amount;
    if (amount > 0 && --flow_(v.i, v.j) == 0) waiting_ -= gap(v);
  }

  int gap(const Var& v) const {
    return dock_out_[static_cast<std::size_t>(v.j)] - dock_in_[static_cast<std::size_t>(v.i)];
  }

  void dfs(std::size_t pos) {
    if (!budget_.tick()) return;
    if (prune_ && lower_bound(pos) >= limit_) return;
    if (pos == vars_.size()) {
      if (!storage_ok()) return;
      const std::int64_t obj = waiting_ + static_cast<std::int64_t>(inst_.penalty) * penalty_units();
      if (obj < limit_) {
        limit_ = obj;
        best_obj_ = obj;
        *best_ = A_;
      }
      return;
    }
    const Var& v = vars_[pos];
    int ub = std::min({rem_supply_(v.i, v.p), rem_cap_[static_cast<std::size_t>(v.j)], rem_pair_(v.j, v.p)});
    if (mode_ == Mode::integrated) ub = std::min(ub, rem_demand_(v.p, v.d));
    for (int amount = greedy_ ? ub : 0; amount <= ub; ++amount) {
      apply(v, amount);
      dfs(pos + 1);
      undo(v, amount);
      if (budget_.exhausted()) return;
    }
  }

  const Instance& inst_;
  Mode mode_;
  const std::vector<int>& dock_in_;
  const std::vector<int>& dock_out_;
  Budget& budget_;
  bool prune_;
  bool greedy_ = false;

  std::vector<Var> vars_;
  int num_keys_ = 0;
  std::vector<int> reach_;
  std::vector<std::int64_t> unloaded_;

  Grid<int, 2> rem_supply_;
  std::vector<int> rem_cap_;
  Grid<int, 2> rem_pair_;
  Grid<int, 2> rem_demand_;
  std::vector<int> load_;
  Grid<int, 2> flow_;
  Grid<int, 3> A_;
  std::int64_t waiting_ = 0;

  std::int64_t limit_ = kInf;
  std::int64_t best_obj_ = kInf;
  Grid<int, 3>* best_ = nullptr;
};

// Inbound docking rows in lexicographic order: a later period gives a
// smaller row, so periods are tried from r down to E_i.
class InboundEnumerator {
 public:
  InboundEnumerator(const Instance& inst, Budget& budget)
      : dock(static_cast<std::size_t>(inst.inbound_trucks), 0), inst_(inst), budget_(budget),
        count_(static_cast<std::size_t>(inst.periods), 0) {}

  template <typename Visit>
  void run(Visit&& visit) {
    rec(0, visit);
  }

  std::vector<int> dock;  // 1-based

 private:
  template <typename Visit>
  void rec(int i, Visit& visit) {
    if (!budget_.tick()) return;
    if (i == inst_.inbound_trucks) {
      visit();
      return;
    }
    for (int t = inst_.periods; t >= inst_.arrival[static_cast<std::size_t>(i)]; --t) {
      auto& used = count_[static_cast<std::size_t>(t - 1)];
      if (used == inst_.inbound_doors) continue;
      ++used;
      dock[static_cast<std::size_t>(i)] = t;
      rec(i + 1, visit);
      --used;
      if (budget_.exhausted()) return;
    }
  }

  const Instance& inst_;
  Budget& budget_;
  std::vector<int> count_;
};

int demand_at(const Instance& inst, int d, int t0) {
  int total = 0;
  for (int p = 0; p < inst.products; ++p) total += inst.demand(p, d, t0);
  return total;
}

class IntegratedOracle {
 public:
  IntegratedOracle(const Instance& inst, const OracleCaps& caps)
      : inst_(inst), caps_(caps), budget_(caps), inbound_(inst, budget_),
        dock_out_(static_cast<std::size_t>(inst.outbound_trucks), 0),
        dest_(static_cast<std::size_t>(inst.outbound_trucks), -1),
        out_count_(static_cast<std::size_t>(inst.periods), 0) {}

  OracleResult run() {
    inbound_.run([this] { rec_y(0); });
    OracleResult out;
    out.feasible = best_obj_ < kInf;
    out.objective = out.feasible ? best_obj_ : 0;
    out.solution = out.feasible ? best_ : make_empty_solution(inst_);
    out.proven_optimal = !budget_.exhausted();
    out.states = budget_.states();
    return out;
  }

 private:
  int y_key(int j) const {
    const int t = dock_out_[static_cast<std::size_t>(j)];
    return t == 0 ? 0 : inst_.periods - t + 1;
  }
  int q_key(int j) const {
    const int d = dest_[static_cast<std::size_t>(j)];
    return d < 0 ? 0 : inst_.destinations - d;
  }

  void rec_y(int j) {
    if (!budget_.tick()) return;
    if (j == inst_.outbound_trucks) {
      rec_q(0);
      return;
    }
    const auto sj = static_cast<std::size_t>(j);
    for (int t = 0; t <= inst_.periods; ++t) {
      // Lexicographic row order: idle, then periods r, r-1, ..., 1.
      const int dock = t == 0 ? 0 : inst_.periods - t + 1;
      if (dock > 0) {
        if (out_count_[static_cast<std::size_t>(dock - 1)] == inst_.outbound_doors) continue;
        if (caps_.prune) {
          bool wanted = false;
          for (int d = 0; d < inst_.destinations; ++d) wanted = wanted || demand_at(inst_, d, dock - 1) > 0;
          if (!wanted) continue;
        }
      }
      dock_out_[sj] = dock;
      if (j > 0) {
        if (caps_.sbc && dock < dock_out_[sj - 1]) continue;
        if (!caps_.sbc && caps_.reduce_symmetry && y_key(j) < y_key(j - 1)) continue;
      }
      if (dock > 0) ++out_count_[static_cast<std::size_t>(dock - 1)];
      rec_y(j + 1);
      if (dock > 0) --out_count_[static_cast<std::size_t>(dock - 1)];
      if (budget_.exhausted()) break;
    }
    dock_out_[sj] = 0;
  }

  void rec_q(int j) {
    if (!budget_.tick()) return;
    if (j == inst_.outbound_trucks) {
      evaluate();
      return;
    }
    const auto sj = static_cast<std::size_t>(j);
    const int dock = dock_out_[sj];
    for (int option = 0; option <= inst_.destinations; ++option) {
      const int d = option == 0 ? -1 : inst_.destinations - option;
      if (caps_.prune) {
        if (dock == 0 && d >= 0) continue;
        if (dock > 0 && (d < 0 || demand_at(inst_, d, dock - 1) == 0)) continue;
      }
      dest_[sj] = d;
      if (j > 0) {
        if (caps_.sbc && dock > 0 && dock == dock_out_[sj - 1] && d + 1 < dest_[sj - 1] + 1) continue;
        if (!caps_.sbc && caps_.reduce_symmetry && y_key(j) == y_key(j - 1) && q_key(j) < q_key(j - 1)) {
          continue;
        }
      }
      rec_q(j + 1);
      if (budget_.exhausted()) break;
    }
    dest_[sj] = -1;
  }

  // Uncovered demand that no shipment plan can avoid under this schedule.
  std::int64_t outer_bound() const {
    const int k = inst_.products, f = inst_.destinations, r = inst_.periods;
    std::int64_t short_units = 0;
    for (int d = 0; d < f; ++d) {
      for (int t = 1; t <= r; ++t) {
        int trucks = 0;
        for (int j = 0; j < inst_.outbound_trucks; ++j) {
          trucks += dock_out_[static_cast<std::size_t>(j)] == t && dest_[static_cast<std::size_t>(j)] == d;
        }
        std::int64_t due = 0, per_product = 0;
        for (int p = 0; p < k; ++p) {
          const int demand = inst_.total_demand(p, d);
          if (demand == 0 || inst_.jit_period(p, d) != t) continue;
          int supply = 0;
          for (int i = 0; i < inst_.inbound_trucks; ++i) {
            if (inbound_.dock[static_cast<std::size_t>(i)] <= t) supply += inst_.load(i, p);
          }
          due += demand;
          per_product += demand - std::min({demand, supply, inst_.capacity * trucks});
        }
        short_units += std::max(per_product, due - static_cast<std::int64_t>(inst_.capacity) * trucks);
      }
    }
    // Demand whose JIT period lies outside the horizon can never be served.
    for (int p = 0; p < k; ++p) {
      for (int d = 0; d < f; ++d) {
        const int jit = inst_.jit_period(p, d);
        if (jit < 1 || jit > r) short_units += inst_.total_demand(p, d);
      }
    }
    return static_cast<std::int64_t>(inst_.penalty) * short_units;
  }

  void evaluate() {
    if (caps_.prune && outer_bound() >= best_obj_) return;
    Grid<int, 3> A;
    ShipSearch search(inst_, ShipSearch::Mode::integrated, inbound_.dock, dock_out_, dest_, nullptr, budget_,
                      caps_.prune);
    const std::int64_t obj = search.solve(best_obj_, A);
    if (obj >= best_obj_) return;
    best_obj_ = obj;
    best_ = make_empty_solution(inst_);
    for (int i = 0; i < inst_.inbound_trucks; ++i) best_.h(i, inbound_.dock[static_cast<std::size_t>(i)] - 1) = 1;
    for (int j = 0; j < inst_.outbound_trucks; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      if (dock_out_[sj] > 0) best_.y(j, dock_out_[sj] - 1) = 1;
      if (dest_[sj] >= 0) best_.q(j, dest_[sj]) = 1;
      for (int i = 0; i < inst_.inbound_trucks; ++i) {
        bool linked = false;
        for (int p = 0; p < inst_.products; ++p) {
          if (A(i, j, p) == 0) continue;
          best_.S(i, j, p, dest_[sj]) = A(i, j, p);
          linked = true;
        }
        if (linked) best_.SB(i, j, inbound_.dock[static_cast<std::size_t>(i)] - 1) = 1;
      }
    }
    complete_solution(inst_, best_);
  }

  const Instance& inst_;
  const OracleCaps& caps_;
  Budget budget_;
  InboundEnumerator inbound_;
  std::vector<int> dock_out_;  // 0 idle
  std::vector<int> dest_;      // -1 none
  std::vector<int> out_count_;
  std::int64_t best_obj_ = kInf;
  Solution best_;
};

}  // namespace

void check_guard_rails(const Instance& inst) {
  check_instance(inst);
  auto refuse = [](const std::string& what) { throw GuardRailError("instance too large for the exhaustive search: " + what); };
  if (inst.inbound_trucks > 3) refuse("m > 3");
  if (inst.outbound_trucks > 4) refuse("n > 4");
  if (inst.periods > 3) refuse("r > 3");
  if (inst.products > 2) refuse("k > 2");
  if (inst.destinations > 2) refuse("f > 2");
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    if (inst.truck_supply(i) > 5) refuse("inbound truck " + std::to_string(i + 1) + " carries more than 5 pallets");
  }
}

OracleResult solve_exact_tiny(const Instance& inst, const OracleCaps& caps) {
  check_guard_rails(inst);
  return IntegratedOracle(inst, caps).run();
}

Step1OracleResult solve_step1_tiny(const Instance& inst, const OracleCaps& caps) {
  check_guard_rails(inst);
  const int n = inst.outbound_trucks, f = inst.destinations, r = inst.periods, C = inst.capacity;
  Budget budget(caps);
  // Option 0 is idle; option 1 + t * f + d docks at period t + 1 for d.
  const int options = 1 + r * f;
  std::vector<int> choice(static_cast<std::size_t>(n), 0), best_choice;
  std::vector<int> door(static_cast<std::size_t>(r), 0);
  Grid<int, 2> trucks({f, r});
  std::int64_t best = kInf;
  Grid<int, 2> rp({f, r});
  for (int d = 0; d < f; ++d) {
    for (int t = 0; t < r; ++t) rp(d, t) = demand_at(inst, d, t);
  }

  // For fixed docking, products split freely across the trucks of a (d, t)
  // group, so that group misses exactly max(0, RP - C * trucks) pallets.
  auto rec = [&](auto&& self, int j) -> void {
    if (!budget.tick()) return;
    if (j == n) {
      std::int64_t missed = 0;
      for (int d = 0; d < f; ++d) {
        for (int t = 0; t < r; ++t) missed += std::max(0, rp(d, t) - C * trucks(d, t));
      }
      if (missed < best) {
        best = missed;
        best_choice = choice;
      }
      return;
    }
    const int first = caps.reduce_symmetry && j > 0 ? choice[static_cast<std::size_t>(j - 1)] : 0;
    for (int option = first; option < options; ++option) {
      if (option > 0) {
        const int t = (option - 1) / f, d = (option - 1) % f;
        if (door[static_cast<std::size_t>(t)] == inst.outbound_doors) continue;
        if (caps.prune && rp(d, t) == 0) continue;
        ++door[static_cast<std::size_t>(t)];
        ++trucks(d, t);
        choice[static_cast<std::size_t>(j)] = option;
        self(self, j + 1);
        --door[static_cast<std::size_t>(t)];
        --trucks(d, t);
      } else {
        choice[static_cast<std::size_t>(j)] = 0;
        self(self, j + 1);
      }
      if (budget.exhausted()) return;
    }
  };
  rec(rec, 0);

  Step1OracleResult out;
  out.solution = make_empty_step1(inst);
  out.proven_optimal = !budget.exhausted();
  out.states = budget.states();
  if (best_choice.empty()) return out;
  out.objective = best;
  Step1Solution& s1 = out.solution;
  for (int j = 0; j < n; ++j) {
    const int option = best_choice[static_cast<std::size_t>(j)];
    if (option == 0) continue;
    s1.y(j, (option - 1) / f) = 1;
    s1.q(j, (option - 1) % f) = 1;
  }
  for (int t = 0; t < r; ++t) {
    for (int d = 0; d < f; ++d) {
      int j = 0, room = 0;
      for (int p = 0; p < inst.products; ++p) {
        int left = inst.demand(p, d, t);
        while (left > 0) {
          if (room == 0) {
            while (j < n && !(s1.y(j, t) && s1.q(j, d))) ++j;
            if (j == n) break;
            room = C;
          }
          const int amount = std::min(left, room);
          s1.x(j, p) += amount;
          left -= amount;
          room -= amount;
          if (room == 0) ++j;
        }
      }
    }
  }
  complete_step1(inst, s1);
  recompute_step1_shortfall(inst, s1);
  return out;
}

Step2OracleResult solve_step2_tiny(const Instance& inst, const Step1Solution& s1, const OracleCaps& caps) {
  check_guard_rails(inst);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks, k = inst.products;
  if (check_step1(inst, s1).feasible == false) throw MalformedSolutionError("step-1 solution is infeasible");
  std::vector<int> dock_out(static_cast<std::size_t>(n)), dest(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    dock_out[static_cast<std::size_t>(j)] = step1_dock(s1, j);
    dest[static_cast<std::size_t>(j)] = step1_destination(s1, j);
  }
  Budget budget(caps);
  InboundEnumerator inbound(inst, budget);
  std::int64_t best_obj = kInf;
  Step2Solution best;

  auto outer_bound = [&] {
    std::int64_t per_truck = 0, per_product = 0;
    for (int p = 0; p < k; ++p) {
      std::int64_t supply = 0, room = 0;
      for (int j = 0; j < n; ++j) room += s1.x(j, p);
      for (int i = 0; i < m; ++i) {
        std::int64_t reach = 0;
        for (int j = 0; j < n; ++j) {
          if (dock_out[static_cast<std::size_t>(j)] >= inbound.dock[static_cast<std::size_t>(i)]) reach += s1.x(j, p);
        }
        per_truck += std::max<std::int64_t>(0, inst.load(i, p) - reach);
        supply += inst.load(i, p);
      }
      per_product += std::max<std::int64_t>(0, supply - room);
    }
    return static_cast<std::int64_t>(inst.penalty) * std::max(per_truck, per_product);
  };

  inbound.run([&] {
    if (caps.prune && outer_bound() >= best_obj) return;
    Grid<int, 3> A;
    ShipSearch search(inst, ShipSearch::Mode::step2, inbound.dock, dock_out, dest, &s1.x, budget, caps.prune);
    const std::int64_t obj = search.solve(best_obj, A);
    if (obj >= best_obj) return;
    best_obj = obj;
    best = make_empty_step2(inst);
    best.A = A;
    for (int i = 0; i < m; ++i) {
      const int dock = inbound.dock[static_cast<std::size_t>(i)];
      best.h(i, dock - 1) = 1;
      for (int j = 0; j < n; ++j) {
        int shipped = 0;
        for (int p = 0; p < k; ++p) shipped += A(i, j, p);
        if (shipped > 0) best.SB(i, j, dock - 1) = 1;
      }
    }
    complete_step2(inst, s1, best);
  });

  Step2OracleResult out;
  out.feasible = best_obj < kInf;
  out.solution = out.feasible ? best : make_empty_step2(inst);
  if (out.feasible) out.objective = step2_objective(inst, s1, best);
  out.proven_optimal = !budget.exhausted();
  out.states = budget.states();
  return out;
}

ImportedSolution import_external_solution(const LinearModel& model, const Instance& inst,
                                          const std::string& listing) {
  const Listing parsed = parse_listing(listing);
  Assignment values = parsed.values;
  for (const auto& v : model.variables()) values.try_emplace(v.name, 0.0);
  DecodeResult decoded = decode_solution(model, inst, values);
  ImportedSolution out;
  out.solution = std::move(decoded.solution);
  out.warnings = std::move(decoded.warnings);
  out.report = validate_solution(inst, out.solution);
  return out;
}

}  // namespace xdock
