#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "json.hpp"
#include "xdock/instance.hpp"

namespace xdock {

struct Range {
  int lo = 0;
  int hi = 0;

  bool operator==(const Range&) const = default;
};

struct GeneratorConfig {
  std::string name = "generated";
  Range inbound{5, 5};
  Range destinations{3, 3};
  Range inbound_doors{3, 3};
  Range outbound_doors{3, 3};
  int periods = 5;
  int products = 5;
  int capacity = 10;
  int penalty = 100;

  // Each destination places distinct-product orders, each due in one period.
  Range orders_per_destination{1, 3};
  Range pallets_per_order{1, 3};
  double supply_surplus = 0.2;  // extra supply as a fraction of demand
  Range outbound_slack{0, 1};   // trucks beyond sum_t ZT_t
  bool arrivals_before_need = true;
  bool storage_safe = true;  // total supply <= ID * C
  int max_outbound = 0;      // 0 = unbounded
  int max_attempts = 100;    // demand redraws before giving up
  std::uint64_t seed = 1;

  bool operator==(const GeneratorConfig&) const = default;
};

/// Throws ConfigurationError on empty ranges or non-positive sizes.
void check_config(const GeneratorConfig& config);

/// Deterministic for a given config: mt19937_64 plus rejection sampling, so
/// the output does not depend on the standard library's distributions.
Instance generate(const GeneratorConfig& config);

/// Databases 1-22: m, f and ID = OD = f per database, r = k = 5, C = 10, PC = 100.
GeneratorConfig preset_database(int db);

/// Dimensions inside the exhaustive-search guard rails.
GeneratorConfig tiny_config(std::uint64_t seed, int penalty = 100);

/// Uniform integer in [lo, hi].
int uniform_int(std::mt19937_64& rng, int lo, int hi);

nlohmann::json to_json(const GeneratorConfig& config);
GeneratorConfig config_from_json(const nlohmann::json& doc);

}  // namespace xdock
