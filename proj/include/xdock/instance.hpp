#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xdock/grid.hpp"

namespace xdock {

inline constexpr std::string_view kInstanceSchema = "xdock-instance/1";

/// Cross-dock planning instance.
///
/// Trucks, products, destinations and periods are addressed with 0-based
/// indices. Period *values* (arrival times, docking periods) are 1-based, so
/// time index `t` of a grid is period `t + 1`.
struct Instance {
  std::string name;

  int inbound_trucks = 0;   // m
  int outbound_trucks = 0;  // n
  int products = 0;         // k
  int destinations = 0;     // f
  int periods = 0;          // r
  int inbound_doors = 0;    // ID
  int outbound_doors = 0;   // OD
  int capacity = 0;         // C, pallets per truck
  int penalty = 0;          // PC, cost per undelivered pallet

  std::vector<int> arrival;  // E_i, period 1..r
  Grid<int, 2> load;         // L(i, p)
  Grid<int, 3> demand;       // R(p, d, t)

  /// RB(p, d, t).
  int demand_indicator(int p, int d, int t) const { return demand(p, d, t) > 0 ? 1 : 0; }

  /// Sum of t * RB(p, d, t): the period an outbound truck carrying (p, d)
  /// must dock in. Zero when (p, d) has no demand.
  int jit_period(int p, int d) const;

  int total_demand(int p, int d) const;
  int truck_supply(int i) const;
  std::int64_t total_supply() const;
  std::int64_t total_requested() const;
  int storage_cap() const { return inbound_doors * capacity; }

  /// True when some (p, d) has demand in more than one period.
  bool has_multi_period_demand() const;
};

/// Builds an instance with all grids sized and zero-filled.
Instance make_instance(int m, int n, int k, int f, int r, int inbound_doors, int outbound_doors,
                       int capacity, int penalty);

/// Throws InstanceError when a hard invariant fails (shapes, ranges, per-truck
/// capacity, arrival periods).
void check_instance(const Instance& instance);

/// Soft findings, such as multi-period demand for one (p, d).
std::vector<std::string> instance_warnings(const Instance& instance);

nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

std::string dump_instance(const Instance& instance);
Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& instance, const std::string& path);

/// Stable 64-bit FNV-1a hash of the canonical JSON form, as 16 hex digits.
std::string fingerprint(const Instance& instance);

}  // namespace xdock
