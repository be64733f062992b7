#include "xdock/instance.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "grid_json.hpp"
#include "xdock/errors.hpp"

namespace xdock {

int Instance::jit_period(int p, int d) const {
  int period = 0;
  for (int t = 0; t < periods; ++t) period += (t + 1) * demand_indicator(p, d, t);
  return period;
}

int Instance::total_demand(int p, int d) const {
  int total = 0;
  for (int t = 0; t < periods; ++t) total += demand(p, d, t);
  return total;
}

int Instance::truck_supply(int i) const {
  int total = 0;
  for (int p = 0; p < products; ++p) total += load(i, p);
  return total;
}

std::int64_t Instance::total_supply() const { return load.sum(); }

std::int64_t Instance::total_requested() const { return demand.sum(); }

bool Instance::has_multi_period_demand() const {
  for (int p = 0; p < products; ++p) {
    for (int d = 0; d < destinations; ++d) {
      int due = 0;
      for (int t = 0; t < periods; ++t) due += demand_indicator(p, d, t);
      if (due > 1) return true;
    }
  }
  return false;
}

Instance make_instance(int m, int n, int k, int f, int r, int inbound_doors, int outbound_doors,
                       int capacity, int penalty) {
  Instance inst;
  inst.inbound_trucks = m;
  inst.outbound_trucks = n;
  inst.products = k;
  inst.destinations = f;
  inst.periods = r;
  inst.inbound_doors = inbound_doors;
  inst.outbound_doors = outbound_doors;
  inst.capacity = capacity;
  inst.penalty = penalty;
  inst.arrival.assign(static_cast<std::size_t>(m), 1);
  inst.load = Grid<int, 2>({m, k});
  inst.demand = Grid<int, 3>({k, f, r});
  return inst;
}

void check_instance(const Instance& inst) {
  auto fail = [](const std::string& msg) { throw InstanceError(msg); };
  if (inst.inbound_trucks < 0 || inst.outbound_trucks < 0 || inst.products < 0 ||
      inst.destinations < 0) {
    fail("negative dimension");
  }
  if (inst.periods < 1) fail("at least one period is required");
  if (inst.inbound_doors < 0 || inst.outbound_doors < 0) fail("negative door count");
  if (inst.capacity < 0 || inst.penalty < 0) fail("negative capacity or penalty");
  if (static_cast<int>(inst.arrival.size()) != inst.inbound_trucks) fail("E has wrong length");
  if (inst.load.dims() != Grid<int, 2>::Shape{inst.inbound_trucks, inst.products}) {
    fail("L has wrong shape");
  }
  if (inst.demand.dims() !=
      Grid<int, 3>::Shape{inst.products, inst.destinations, inst.periods}) {
    fail("R has wrong shape");
  }
  for (int i = 0; i < inst.inbound_trucks; ++i) {
    const int e = inst.arrival[static_cast<std::size_t>(i)];
    if (e < 1 || e > inst.periods) {
      fail("arrival of inbound truck " + std::to_string(i + 1) + " outside 1.." +
           std::to_string(inst.periods));
    }
    for (int p = 0; p < inst.products; ++p) {
      if (inst.load(i, p) < 0) fail("negative load");
    }
    if (inst.truck_supply(i) > inst.capacity) {
      fail("inbound truck " + std::to_string(i + 1) + " carries more than C pallets");
    }
  }
  for (int v : inst.demand.values()) {
    if (v < 0) fail("negative demand");
  }
}

std::vector<std::string> instance_warnings(const Instance& inst) {
  std::vector<std::string> out;
  for (int p = 0; p < inst.products; ++p) {
    for (int d = 0; d < inst.destinations; ++d) {
      int due = 0;
      for (int t = 0; t < inst.periods; ++t) due += inst.demand_indicator(p, d, t);
      if (due > 1) {
        out.push_back("multi-period demand for product " + std::to_string(p + 1) +
                      ", destination " + std::to_string(d + 1) +
                      ": JIT coupling uses the sum of due periods");
      }
    }
  }
  const int doors_total = inst.inbound_doors * inst.periods;
  if (inst.inbound_trucks > doors_total) {
    out.push_back("more inbound trucks than inbound door slots (m > ID * r)");
  }
  return out;
}

nlohmann::json to_json(const Instance& inst) {
  nlohmann::json doc;
  doc["schema"] = kInstanceSchema;
  if (!inst.name.empty()) doc["name"] = inst.name;
  doc["m"] = inst.inbound_trucks;
  doc["n"] = inst.outbound_trucks;
  doc["k"] = inst.products;
  doc["f"] = inst.destinations;
  doc["r"] = inst.periods;
  doc["ID"] = inst.inbound_doors;
  doc["OD"] = inst.outbound_doors;
  doc["C"] = inst.capacity;
  doc["PC"] = inst.penalty;
  doc["E"] = inst.arrival;
  doc["L"] = detail::grid_to_json(inst.load);
  doc["R"] = detail::grid_to_json(inst.demand);
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  try {
    if (doc.value("schema", std::string{}) != kInstanceSchema) {
      throw InstanceError("unsupported instance schema");
    }
    Instance inst = make_instance(doc.at("m").get<int>(), doc.at("n").get<int>(),
                                  doc.at("k").get<int>(), doc.at("f").get<int>(),
                                  doc.at("r").get<int>(), doc.at("ID").get<int>(),
                                  doc.at("OD").get<int>(), doc.at("C").get<int>(),
                                  doc.at("PC").get<int>());
    inst.name = doc.value("name", std::string{});
    inst.arrival = doc.at("E").get<std::vector<int>>();
    inst.load = detail::grid_from_json<2>(doc.at("L"), {inst.inbound_trucks, inst.products}, "L");
    inst.demand = detail::grid_from_json<3>(
        doc.at("R"), {inst.products, inst.destinations, inst.periods}, "R");
    check_instance(inst);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("instance JSON: ") + e.what());
  } catch (const DimensionError& e) {
    throw InstanceError(std::string("instance JSON: ") + e.what());
  }
}

std::string dump_instance(const Instance& inst) { return to_json(inst).dump(1) + "\n"; }

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError("instance file " + path + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write instance file " + path);
  out << dump_instance(inst);
}

std::string fingerprint(const Instance& inst) {
  nlohmann::json doc = to_json(inst);
  doc.erase("name");
  const std::string text = doc.dump();
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace xdock
