#include "xdock/step2_search.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/successive_shortest_path_nonnegative_weights.hpp>
#include <tuple>
#include <vector>

#include "xdock/errors.hpp"

namespace xdock {

namespace {

// Min-cost max-flow on a small network, solved with Boost's successive
// shortest paths.
class MinCostFlow {
 public:
  int add_node() { return static_cast<int>(boost::add_vertex(graph_)); }

  int add_arc(int from, int to, long capacity, long cost) {
    const auto e = boost::add_edge(static_cast<Vertex>(from), static_cast<Vertex>(to), graph_).first;
    const auto back = boost::add_edge(static_cast<Vertex>(to), static_cast<Vertex>(from), graph_).first;
    auto cap = boost::get(boost::edge_capacity, graph_);
    auto weight = boost::get(boost::edge_weight, graph_);
    auto rev = boost::get(boost::edge_reverse, graph_);
    cap[e] = capacity;
    cap[back] = 0;
    weight[e] = cost;
    weight[back] = -cost;
    rev[e] = back;
    rev[back] = e;
    arcs_.push_back(e);
    return static_cast<int>(arcs_.size()) - 1;
  }

  void solve(int source, int sink) {
    boost::successive_shortest_path_nonnegative_weights(graph_, static_cast<Vertex>(source),
                                                        static_cast<Vertex>(sink));
  }

  long flow(int arc) const {
    const auto e = arcs_[static_cast<std::size_t>(arc)];
    return boost::get(boost::edge_capacity, graph_)[e] - boost::get(boost::edge_residual_capacity, graph_)[e];
  }

 private:
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, long,
                      boost::property<boost::edge_residual_capacity_t, long,
                                      boost::property<boost::edge_reverse_t, Traits::edge_descriptor,
                                                      boost::property<boost::edge_weight_t, long>>>>>;
  using Vertex = Traits::vertex_descriptor;
  Graph graph_;
  std::vector<Traits::edge_descriptor> arcs_;
};

struct Search {
  const Instance& inst;
  const Step1Solution& s1;
  int m, n, k, r;
  std::vector<int> out_dock;

  Search(const Instance& instance, const Step1Solution& plan)
      : inst(instance),
        s1(plan),
        m(instance.inbound_trucks),
        n(instance.outbound_trucks),
        k(instance.products),
        r(instance.periods) {
    for (int j = 0; j < n; ++j) out_dock.push_back(step1_dock(s1, j));
  }

  // Fills every period's doors with the waiting trucks, earliest arrival first.
  std::vector<int> earliest_schedule() const {
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return inst.arrival[static_cast<std::size_t>(a)] < inst.arrival[static_cast<std::size_t>(b)];
    });
    std::vector<int> dock(static_cast<std::size_t>(m), 0);
    std::size_t next = 0;
    for (int t = 1; t <= r; ++t) {
      int free = inst.inbound_doors;
      while (free > 0 && next < order.size() && inst.arrival[static_cast<std::size_t>(order[next])] <= t) {
        dock[static_cast<std::size_t>(order[next++])] = t;
        --free;
      }
    }
    if (next < order.size()) return {};
    return dock;
  }

  // Shipments of product p under the given docking periods.
  void ship_product(int p, const std::vector<int>& dock, const std::vector<char>& forbidden, Grid<int, 3>& A) const {
    MinCostFlow net;
    const int source = net.add_node(), sink = net.add_node();
    std::vector<int> in_node(static_cast<std::size_t>(m), -1), out_node(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < m; ++i) {
      if (inst.load(i, p) == 0) continue;
      in_node[static_cast<std::size_t>(i)] = net.add_node();
      net.add_arc(source, in_node[static_cast<std::size_t>(i)], inst.load(i, p), 0);
    }
    for (int j = 0; j < n; ++j) {
      if (s1.x(j, p) == 0) continue;
      out_node[static_cast<std::size_t>(j)] = net.add_node();
      net.add_arc(out_node[static_cast<std::size_t>(j)], sink, s1.x(j, p), 0);
    }
    std::vector<std::tuple<int, int, int>> arcs;
    for (int i = 0; i < m; ++i) {
      if (in_node[static_cast<std::size_t>(i)] < 0) continue;
      const int di = dock[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        const int dj = out_dock[static_cast<std::size_t>(j)];
        if (out_node[static_cast<std::size_t>(j)] < 0 || dj < di || forbidden[static_cast<std::size_t>(i * n + j)]) {
          continue;
        }
        const int arc = net.add_arc(in_node[static_cast<std::size_t>(i)], out_node[static_cast<std::size_t>(j)],
                                    std::min(inst.load(i, p), s1.x(j, p)), dj - di);
        arcs.emplace_back(i, j, arc);
      }
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A(i, j, p) = 0;
    }
    net.solve(source, sink);
    for (const auto& [i, j, arc] : arcs) A(i, j, p) = static_cast<int>(net.flow(arc));
  }

  Grid<int, 3> ship(const std::vector<int>& dock, const std::vector<char>& forbidden) const {
    Grid<int, 3> A({m, n, k});
    for (int p = 0; p < k; ++p) ship_product(p, dock, forbidden, A);
    return A;
  }

  bool linked(const Grid<int, 3>& A, int i, int j) const {
    for (int p = 0; p < k; ++p) {
      if (A(i, j, p) > 0) return true;
    }
    return false;
  }

  // Latest docking periods the links allow, weighted by each truck's link
  // count, then as late as possible overall. Falls back to `current`.
  std::vector<int> retime(const Grid<int, 3>& A, const std::vector<int>& current) const {
    MinCostFlow net;
    const int source = net.add_node(), sink = net.add_node();
    std::vector<int> period_node;
    for (int t = 1; t <= r; ++t) {
      period_node.push_back(net.add_node());
      net.add_arc(period_node.back(), sink, inst.inbound_doors, 0);
    }
    const long tie = static_cast<long>(m) * r + 1;
    std::vector<std::vector<std::pair<int, int>>> arcs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const int node = net.add_node();
      net.add_arc(source, node, 1, 0);
      int deadline = r, links = 0;
      for (int j = 0; j < n; ++j) {
        if (!linked(A, i, j)) continue;
        deadline = std::min(deadline, out_dock[static_cast<std::size_t>(j)]);
        ++links;
      }
      for (int t = inst.arrival[static_cast<std::size_t>(i)]; t <= deadline; ++t) {
        const int arc = net.add_arc(node, period_node[static_cast<std::size_t>(t - 1)], 1,
                                    (r - t) * (links * tie + 1));
        arcs[static_cast<std::size_t>(i)].emplace_back(t, arc);
      }
    }
    net.solve(source, sink);
    std::vector<int> dock(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
      for (const auto& [t, arc] : arcs[static_cast<std::size_t>(i)]) {
        if (net.flow(arc) > 0) dock[static_cast<std::size_t>(i)] = t;
      }
      if (dock[static_cast<std::size_t>(i)] == 0) return current;
    }
    return dock;
  }

  Step2Solution build(const std::vector<int>& dock, const Grid<int, 3>& A) const {
    Step2Solution s2 = make_empty_step2(inst);
    s2.A = A;
    for (int i = 0; i < m; ++i) {
      const int di = dock[static_cast<std::size_t>(i)];
      s2.h(i, di - 1) = 1;
      for (int j = 0; j < n; ++j) {
        if (linked(A, i, j)) s2.SB(i, j, di - 1) = 1;
      }
    }
    complete_step2(inst, s1, s2);
    return s2;
  }

  bool storage_ok(const Step2Solution& s2) const {
    return std::all_of(s2.St.begin(), s2.St.end(), [&](int level) { return level <= inst.storage_cap(); });
  }
};

}  // namespace

Step2SearchResult solve_step2_search(const Instance& inst, const Step1Solution& s1,
                                     const Step2SearchOptions& options) {
  check_instance(inst);
  if (!check_step1(inst, s1).feasible) throw MalformedSolutionError("step-1 plan is not feasible");
  const Search search(inst, s1);
  const int m = inst.inbound_trucks, n = inst.outbound_trucks;
  Step2SearchResult out;

  std::vector<char> forbidden(static_cast<std::size_t>(m * n), 0);
  {
    const Grid<int, 3> relaxed = search.ship(inst.arrival, forbidden);
    out.lower_bound = static_cast<std::int64_t>(inst.penalty) * (inst.total_supply() - relaxed.sum());
  }
  const std::vector<int> earliest = search.earliest_schedule();
  if (earliest.empty()) {
    out.solution = make_empty_step2(inst);
    return out;
  }

  auto candidate = [&](const std::vector<char>& banned) {
    const Grid<int, 3> A = search.ship(earliest, banned);
    return search.build(search.retime(A, earliest), A);
  };
  Step2Solution best = candidate(forbidden);
  Step2Objective best_obj = step2_objective(inst, s1, best);
  bool best_ok = search.storage_ok(best);

  for (int round = 0; round < options.rounds; ++round) {
    std::vector<std::tuple<int, int, int>> links;  // (amount, i, j)
    for (int i = 0; i < m; ++i) {
      int di = 0;
      for (int t = 0; t < inst.periods; ++t) di += (t + 1) * best.h(i, t);
      for (int j = 0; j < n; ++j) {
        if (!search.linked(best.A, i, j) || search.out_dock[static_cast<std::size_t>(j)] == di) continue;
        int amount = 0;
        for (int p = 0; p < inst.products; ++p) amount += best.A(i, j, p);
        links.emplace_back(amount, i, j);
      }
    }
    std::sort(links.begin(), links.end());
    bool improved = false;
    for (const auto& [amount, i, j] : links) {
      if (!search.linked(best.A, i, j)) continue;
      std::vector<char> banned = forbidden;
      banned[static_cast<std::size_t>(i * n + j)] = 1;
      Step2Solution next = candidate(banned);
      const Step2Objective obj = step2_objective(inst, s1, next);
      const bool ok = search.storage_ok(next);
      if ((ok && !best_ok) || (ok == best_ok && obj.objective < best_obj.objective)) {
        best = std::move(next);
        best_obj = obj;
        best_ok = ok;
        forbidden = std::move(banned);
        improved = true;
        ++out.accepted_moves;
      }
    }
    if (!improved) break;
  }
  out.feasible = best_ok;
  out.solution = std::move(best);
  out.objective = best_obj;
  return out;
}

}  // namespace xdock
