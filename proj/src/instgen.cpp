#include "xdock/instgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "xdock/errors.hpp"

namespace xdock {

namespace {

struct DbDims {
  int inbound;
  int destinations;
};

constexpr std::array<DbDims, 22> kDatabases{{
    {5, 3},   {6, 4},   {7, 4},   {8, 5},   {9, 6},   {10, 7},  {12, 8},  {15, 9},
    {17, 10}, {20, 10}, {22, 12}, {25, 15}, {27, 15}, {30, 15}, {32, 18}, {35, 19},
    {40, 20}, {45, 23}, {50, 25}, {60, 30}, {70, 35}, {80, 40},
}};

void check_range(const Range& range, const char* what, int min_lo) {
  if (range.lo < min_lo || range.hi < range.lo) {
    throw ConfigurationError(std::string(what) + ": invalid range [" + std::to_string(range.lo) + ", " +
                             std::to_string(range.hi) + "]");
  }
}

int draw(std::mt19937_64& rng, const Range& range) { return uniform_int(rng, range.lo, range.hi); }

}  // namespace

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  const std::uint64_t threshold = (0 - span) % span;
  std::uint64_t value = rng();
  while (value < threshold) value = rng();
  return static_cast<int>(static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(value % span));
}

void check_config(const GeneratorConfig& c) {
  check_range(c.inbound, "inbound", 1);
  check_range(c.destinations, "destinations", 1);
  check_range(c.inbound_doors, "inbound_doors", 1);
  check_range(c.outbound_doors, "outbound_doors", 1);
  check_range(c.orders_per_destination, "orders_per_destination", 0);
  check_range(c.pallets_per_order, "pallets_per_order", 1);
  check_range(c.outbound_slack, "outbound_slack", 0);
  if (c.periods < 1 || c.products < 1 || c.capacity < 1 || c.penalty < 0) {
    throw ConfigurationError("periods, products and capacity must be positive, penalty non-negative");
  }
  if (c.orders_per_destination.hi > c.products) {
    throw ConfigurationError("a destination cannot order more distinct products than exist");
  }
  if (!(c.supply_surplus >= 0) || !std::isfinite(c.supply_surplus)) {
    throw ConfigurationError("supply_surplus must be a non-negative number");
  }
  if (c.max_attempts < 1 || c.max_outbound < 0) throw ConfigurationError("max_attempts must be positive");
}

Instance generate(const GeneratorConfig& config) {
  check_config(config);
  std::mt19937_64 rng(config.seed);
  const int m = draw(rng, config.inbound);
  const int f = draw(rng, config.destinations);
  const int id = draw(rng, config.inbound_doors);
  const int od = draw(rng, config.outbound_doors);
  const int k = config.products, r = config.periods, C = config.capacity;

  const std::int64_t supply_cap =
      config.storage_safe ? std::min<std::int64_t>(std::int64_t{m} * C, std::int64_t{id} * C) : std::int64_t{m} * C;
  if (std::int64_t{f} * config.orders_per_destination.lo * config.pallets_per_order.lo > supply_cap) {
    throw GenerationError("smallest possible demand exceeds the supply the inbound trucks can bring");
  }

  Instance inst = make_instance(m, 0, k, f, r, id, od, C, config.penalty);
  inst.name = config.name + "-s" + std::to_string(config.seed);
  int needed = 0;
  std::int64_t total = 0;
  bool accepted = false;
  for (int attempt = 0; attempt < config.max_attempts && !accepted; ++attempt) {
    inst.demand.fill(0);
    total = 0;
    for (int d = 0; d < f; ++d) {
      std::vector<int> products(static_cast<std::size_t>(k));
      std::iota(products.begin(), products.end(), 0);
      const int orders = draw(rng, config.orders_per_destination);
      for (int o = 0; o < orders; ++o) {
        const int pick = uniform_int(rng, o, k - 1);
        std::swap(products[static_cast<std::size_t>(o)], products[static_cast<std::size_t>(pick)]);
        const int p = products[static_cast<std::size_t>(o)];
        const int t = uniform_int(rng, 0, r - 1);
        const int pallets = draw(rng, config.pallets_per_order);
        inst.demand(p, d, t) = pallets;
        total += pallets;
      }
    }
    needed = 0;
    for (int d = 0; d < f; ++d) {
      for (int t = 0; t < r; ++t) {
        int rp = 0;
        for (int p = 0; p < k; ++p) rp += inst.demand(p, d, t);
        needed += (rp + C - 1) / C;
      }
    }
    accepted = total <= supply_cap &&
               (config.max_outbound == 0 || needed + config.outbound_slack.lo <= config.max_outbound);
  }
  if (!accepted) throw GenerationError("no demand draw fits the supply and truck limits");

  int n = needed + draw(rng, config.outbound_slack);
  if (config.max_outbound > 0) n = std::min(n, config.max_outbound);
  inst.outbound_trucks = n;

  // Pallets to bring in: the demand of every product plus a random surplus.
  std::vector<int> pallets;
  for (int p = 0; p < k; ++p) {
    int demand = 0;
    for (int d = 0; d < f; ++d) demand += inst.total_demand(p, d);
    pallets.insert(pallets.end(), static_cast<std::size_t>(demand), p);
  }
  const auto surplus = std::min<std::int64_t>(
      static_cast<std::int64_t>(std::ceil(config.supply_surplus * static_cast<double>(total))), supply_cap - total);
  for (std::int64_t s = 0; s < surplus; ++s) pallets.push_back(uniform_int(rng, 0, k - 1));
  for (std::size_t a = pallets.size(); a > 1; --a) {
    std::swap(pallets[a - 1], pallets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(a) - 1))]);
  }
  std::vector<int> room(static_cast<std::size_t>(m), C);
  for (std::size_t a = 0; a < pallets.size(); ++a) {
    int i = 0;
    if (a < static_cast<std::size_t>(m)) {
      i = static_cast<int>(a);
    } else {
      std::vector<int> open;
      for (int c = 0; c < m; ++c) {
        if (room[static_cast<std::size_t>(c)] > 0) open.push_back(c);
      }
      i = open[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(open.size()) - 1))];
    }
    --room[static_cast<std::size_t>(i)];
    ++inst.load(i, pallets[a]);
  }

  for (int i = 0; i < m; ++i) {
    int need = r;
    for (int p = 0; p < k; ++p) {
      if (inst.load(i, p) == 0) continue;
      for (int d = 0; d < f; ++d) {
        for (int t = 0; t < r; ++t) {
          if (inst.demand(p, d, t) > 0) need = std::min(need, t + 1);
        }
      }
    }
    inst.arrival[static_cast<std::size_t>(i)] = uniform_int(rng, 1, config.arrivals_before_need ? need : r);
  }
  // Every truck arriving at t or later needs a door in t..r; pull the latest
  // arrivals forward until that holds.
  if (m > id * r) throw GenerationError("more inbound trucks than door slots in the horizon");
  for (int t = r; t >= 1; --t) {
    auto late = [&] {
      int count = 0;
      for (int e : inst.arrival) count += e >= t;
      return count;
    };
    while (late() > id * (r - t + 1)) {
      int pick = -1;
      for (int i = 0; i < m; ++i) {
        const int e = inst.arrival[static_cast<std::size_t>(i)];
        if (e >= t && (pick < 0 || e >= inst.arrival[static_cast<std::size_t>(pick)])) pick = i;
      }
      --inst.arrival[static_cast<std::size_t>(pick)];
    }
  }
  check_instance(inst);
  return inst;
}

GeneratorConfig preset_database(int db) {
  if (db < 1 || db > static_cast<int>(kDatabases.size())) {
    throw ConfigurationError("unknown database " + std::to_string(db) + " (expected 1-22)");
  }
  const DbDims dims = kDatabases[static_cast<std::size_t>(db - 1)];
  GeneratorConfig config;
  config.name = "db" + std::to_string(db);
  config.inbound = {dims.inbound, dims.inbound};
  config.destinations = {dims.destinations, dims.destinations};
  config.inbound_doors = {dims.destinations, dims.destinations};
  config.outbound_doors = {dims.destinations, dims.destinations};
  return config;
}

GeneratorConfig tiny_config(std::uint64_t seed, int penalty) {
  GeneratorConfig config;
  config.name = "tiny";
  config.inbound = {1, 3};
  config.destinations = {1, 2};
  config.inbound_doors = {1, 2};
  config.outbound_doors = {1, 2};
  config.periods = 3;
  config.products = 2;
  config.capacity = 5;
  config.penalty = penalty;
  config.orders_per_destination = {1, 2};
  config.pallets_per_order = {1, 4};
  config.supply_surplus = 0.25;
  config.outbound_slack = {0, 1};
  config.max_outbound = 4;
  config.seed = seed;
  return config;
}

nlohmann::json to_json(const GeneratorConfig& c) {
  auto range = [](const Range& r) { return nlohmann::json::array({r.lo, r.hi}); };
  return {
      {"name", c.name},
      {"inbound", range(c.inbound)},
      {"destinations", range(c.destinations)},
      {"inbound_doors", range(c.inbound_doors)},
      {"outbound_doors", range(c.outbound_doors)},
      {"periods", c.periods},
      {"products", c.products},
      {"capacity", c.capacity},
      {"penalty", c.penalty},
      {"orders_per_destination", range(c.orders_per_destination)},
      {"pallets_per_order", range(c.pallets_per_order)},
      {"supply_surplus", c.supply_surplus},
      {"outbound_slack", range(c.outbound_slack)},
      {"arrivals_before_need", c.arrivals_before_need},
      {"storage_safe", c.storage_safe},
      {"max_outbound", c.max_outbound},
      {"max_attempts", c.max_attempts},
      {"seed", c.seed},
  };
}

GeneratorConfig config_from_json(const nlohmann::json& doc) {
  GeneratorConfig c;
  try {
    if (doc.contains("db")) c = preset_database(doc.at("db").get<int>());
    auto range = [&](const char* key, Range& out) {
      if (!doc.contains(key)) return;
      const auto& v = doc.at(key);
      if (v.is_number_integer()) {
        out = {v.get<int>(), v.get<int>()};
      } else {
        if (!v.is_array() || v.size() != 2) throw ConfigurationError(std::string(key) + ": expected [lo, hi]");
        out = {v[0].get<int>(), v[1].get<int>()};
      }
    };
    auto scalar = [&](const char* key, auto& out) {
      if (doc.contains(key)) doc.at(key).get_to(out);
    };
    scalar("name", c.name);
    range("inbound", c.inbound);
    range("destinations", c.destinations);
    range("inbound_doors", c.inbound_doors);
    range("outbound_doors", c.outbound_doors);
    scalar("periods", c.periods);
    scalar("products", c.products);
    scalar("capacity", c.capacity);
    scalar("penalty", c.penalty);
    range("orders_per_destination", c.orders_per_destination);
    range("pallets_per_order", c.pallets_per_order);
    scalar("supply_surplus", c.supply_surplus);
    range("outbound_slack", c.outbound_slack);
    scalar("arrivals_before_need", c.arrivals_before_need);
    scalar("storage_safe", c.storage_safe);
    scalar("max_outbound", c.max_outbound);
    scalar("max_attempts", c.max_attempts);
    scalar("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("generator config: ") + e.what());
  }
  check_config(c);
  return c;
}

}  // namespace xdock
