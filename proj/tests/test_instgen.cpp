#include <random>

#include "doctest.h"
#include "xdock/errors.hpp"
#include "xdock/heuristic.hpp"
#include "xdock/instgen.hpp"

using namespace xdock;

TEST_CASE("mt19937_64 golden value") {
  std::mt19937_64 rng;
  rng.discard(9999);
  CHECK(rng() == 9981545732273789042ULL);
}

TEST_CASE("uniform_int golden vector and range") {
  std::mt19937_64 rng(42);
  std::vector<int> draws;
  for (int a = 0; a < 8; ++a) draws.push_back(uniform_int(rng, 1, 6));
  CHECK(draws == std::vector<int>{1, 3, 5, 1, 6, 3, 5, 1});

  std::mt19937_64 wide(7);
  for (int a = 0; a < 1000; ++a) {
    const int v = uniform_int(wide, -3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
  CHECK(uniform_int(wide, 5, 5) == 5);
}

TEST_CASE("same seed, same instance bytes") {
  GeneratorConfig config = preset_database(5);
  config.seed = 7;
  CHECK(dump_instance(generate(config)) == dump_instance(generate(config)));
  GeneratorConfig other = config;
  other.seed = 8;
  CHECK(dump_instance(generate(config)) != dump_instance(generate(other)));
}

TEST_CASE("database presets") {
  const Instance db1 = generate(preset_database(1));
  CHECK(db1.inbound_trucks == 5);
  CHECK(db1.destinations == 3);
  CHECK(db1.inbound_doors == 3);
  CHECK(db1.outbound_doors == 3);
  CHECK(db1.periods == 5);
  CHECK(db1.products == 5);
  CHECK(db1.penalty == 100);
  CHECK(db1.capacity == 10);

  const GeneratorConfig db5 = preset_database(5);
  CHECK(db5.inbound == Range{9, 9});
  CHECK(db5.destinations == Range{6, 6});
  CHECK(db5.inbound_doors == Range{6, 6});
  CHECK(db5.outbound_doors == Range{6, 6});

  const Instance db22 = generate(preset_database(22));
  CHECK(db22.inbound_trucks == 80);
  CHECK(db22.destinations == 40);
  CHECK(generate(preset_database(12)).inbound_trucks == 25);
  CHECK(generate(preset_database(12)).destinations == 15);

  CHECK_THROWS_AS(preset_database(0), ConfigurationError);
  CHECK_THROWS_AS(preset_database(23), ConfigurationError);
}

TEST_CASE("invariant sweep over seeds") {
  for (int db : {0, 1, 12, 22}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      GeneratorConfig config = db == 0 ? tiny_config(seed) : preset_database(db);
      config.seed = seed;
      const Instance inst = generate(config);
      CAPTURE(db);
      CAPTURE(seed);
      REQUIRE_NOTHROW(check_instance(inst));
      CHECK(instance_warnings(inst).empty());
      CHECK(inst.total_supply() <= inst.storage_cap());
      CHECK(inst.outbound_trucks >= preprocess(inst).trucks_needed());
      for (int p = 0; p < inst.products; ++p) {
        int supply = 0, demand = 0;
        for (int i = 0; i < inst.inbound_trucks; ++i) supply += inst.load(i, p);
        for (int d = 0; d < inst.destinations; ++d) demand += inst.total_demand(p, d);
        CHECK(supply >= demand);
      }
      for (int t = 1; t <= inst.periods; ++t) {
        int late = 0;
        for (int e : inst.arrival) late += e >= t;
        CHECK(late <= inst.inbound_doors * (inst.periods - t + 1));
      }
    }
  }
}

TEST_CASE("configuration errors") {
  GeneratorConfig config;
  config.inbound = {3, 2};
  CHECK_THROWS_AS(generate(config), ConfigurationError);

  config = GeneratorConfig{};
  config.orders_per_destination = {1, 6};
  CHECK_THROWS_AS(generate(config), ConfigurationError);

  config = GeneratorConfig{};
  config.pallets_per_order = {20, 30};
  CHECK_THROWS_AS(generate(config), GenerationError);

  config = GeneratorConfig{};
  config.max_outbound = 1;
  config.orders_per_destination = {2, 2};
  CHECK_THROWS_AS(generate(config), GenerationError);
}

TEST_CASE("config JSON round trip and presets by id") {
  GeneratorConfig config = tiny_config(99, 3);
  CHECK(config_from_json(to_json(config)) == config);
  const GeneratorConfig db = config_from_json({{"db", 12}, {"seed", 5}});
  GeneratorConfig expected = preset_database(12);
  expected.seed = 5;
  CHECK(db == expected);
  CHECK(config_from_json({{"inbound", 4}}).inbound == Range{4, 4});
  CHECK_THROWS_AS(config_from_json({{"inbound", "x"}}), ConfigurationError);
}
