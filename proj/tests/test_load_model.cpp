#include <doctest.h>

#include "dlbmt/load_model.hpp"
#include "oracles.hpp"

using namespace dlbmt;

TEST_CASE("weights must be a convex combination") {
  CHECK_THROWS_AS(validate_weights({0.5, 0.5, 0.5}), InvalidWeights);
  CHECK_THROWS_AS(validate_weights({-0.1, 0.6, 0.5}), InvalidWeights);
  CHECK_NOTHROW(validate_weights({0.2, 0.3, 0.5}));
  CHECK_NOTHROW(validate_weights(Weights{})); // default thirds
}

TEST_CASE("switch_consumption basics") {
  CapacityVector cap{100, 100, 100};
  Weights w{};

  SUBCASE("equal ratios collapse to the ratio") {
    ResourceDemand d{60, 60, 60};
    CHECK(switch_consumption(d, cap, w) == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("zero demand gives zero") {
    CHECK(switch_consumption({}, cap, w) == 0.0);
  }
  SUBCASE("stated arithmetic example") {
    ResourceDemand d{60, 30, 30};
    CHECK(switch_consumption(d, cap, w) == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("per-component clamp keeps the result in [0,1]") {
    ResourceDemand d{500, 0, 0};
    CHECK(switch_consumption(d, cap, w) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    ResourceDemand all_over{500, 500, 500};
    CHECK(switch_consumption(all_over, cap, w) == doctest::Approx(1.0));
  }
}

TEST_CASE("consumption is monotone and halves under doubled capacity") {
  CapacityVector cap{200, 400, 800};
  CapacityVector doubled{400, 800, 1600};
  Weights w{0.5, 0.25, 0.25};
  oracle::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    ResourceDemand d{rng.real(0, 180), rng.real(0, 350), rng.real(0, 700)};
    double base = switch_consumption(d, cap, w);

    ResourceDemand more = d;
    more.mem += 5.0;
    CHECK(switch_consumption(more, cap, w) >= base);

    CHECK(switch_consumption(d, doubled, w) ==
          doctest::Approx(base / 2).epsilon(1e-12));

    // larger capacity never increases consumption
    CHECK(switch_consumption(d, doubled, w) <= base);
  }
}

TEST_CASE("controller_load: empty domain and clamping") {
  CapacityVector cap{100, 100, 100};
  Weights w{};
  CHECK(controller_load({}, cap, w) == 0.0);

  std::vector<ResourceDemand> heavy(5, ResourceDemand{90, 90, 90});
  CHECK(controller_load(heavy, cap, w) == 100.0);
}

TEST_CASE("worked load: consumptions 20/14/7/6 sum to 47, offset lifts to 76") {
  CapacityVector cap{2000, 2000, 2000};
  Weights w{};
  std::vector<ResourceDemand> demands{
      {400, 400, 400}, {280, 280, 280}, {140, 140, 140}, {120, 120, 120}};
  CHECK(controller_load(demands, cap, w) == doctest::Approx(47).epsilon(1e-9));
  CHECK(controller_load(demands, cap, w, 29.0) ==
        doctest::Approx(76).epsilon(1e-9));
}

TEST_CASE("controller_load equals the exact rational oracle") {
  oracle::Rng rng(42);
  Weights w{};
  for (int trial = 0; trial < 50; ++trial) {
    long long cap_c = rng.range(500, 4000);
    long long cap_m = rng.range(500, 4000);
    long long cap_b = rng.range(500, 4000);
    CapacityVector cap{static_cast<double>(cap_c), static_cast<double>(cap_m),
                       static_cast<double>(cap_b)};
    int n = rng.range(1, 8);
    std::vector<ResourceDemand> demands;
    oracle::Rational third = oracle::Rational::of(1, 3);
    oracle::Rational total = oracle::Rational::of(0);
    for (int i = 0; i < n; ++i) {
      long long dc = rng.range(0, 400);
      long long dm = rng.range(0, 400);
      long long db = rng.range(0, 400);
      demands.push_back({static_cast<double>(dc), static_cast<double>(dm),
                         static_cast<double>(db)});
      auto eps = third * oracle::Rational::of(dc, cap_c) +
                 third * oracle::Rational::of(dm, cap_m) +
                 third * oracle::Rational::of(db, cap_b);
      total = total + eps;
    }
    double expected = (total * oracle::Rational::of(100)).value();
    if (expected > 100.0) expected = 100.0;
    CHECK(controller_load(demands, cap, w) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("additivity below the clamp") {
  CapacityVector cap{1000, 1000, 1000};
  Weights w{};
  std::vector<ResourceDemand> demands{{100, 50, 20}, {30, 60, 90}, {5, 5, 5}};
  double sum = 0;
  for (const auto& d : demands) {
    sum += switch_consumption(d, cap, w);
  }
  CHECK(controller_load(demands, cap, w) ==
        doctest::Approx(sum * 100).epsilon(1e-12));
}

TEST_CASE("demand_at_tick arithmetic and zero cases") {
  WorkloadProfile profile;
  profile.rates["s1"] = 100.0;
  profile.rates["s0"] = 0.0;
  profile.unit_cost = {0.5, 0.4, 0.3};
  profile.jitter = 0.0;

  auto d = demand_at_tick(profile, "s1", 0);
  CHECK(d.cpu == doctest::Approx(50.0));
  CHECK(d.mem == doctest::Approx(40.0));
  CHECK(d.bw == doctest::Approx(30.0));

  auto z = demand_at_tick(profile, "s0", 17);
  CHECK(z.cpu == 0.0);
  CHECK(z.mem == 0.0);
  CHECK(z.bw == 0.0);

  CHECK_THROWS_AS(demand_at_tick(profile, "nope", 0), UnknownSwitch);
}

TEST_CASE("modulation schedule is piecewise constant with default 1") {
  WorkloadProfile profile;
  profile.rates["s1"] = 10.0;
  profile.unit_cost = {1, 0, 0};
  profile.modulation = {{0, 5, 2.0}, {5, 10, 0.5}};

  CHECK(demand_at_tick(profile, "s1", 0).cpu == doctest::Approx(20.0));
  CHECK(demand_at_tick(profile, "s1", 4).cpu == doctest::Approx(20.0));
  CHECK(demand_at_tick(profile, "s1", 5).cpu == doctest::Approx(5.0));
  CHECK(demand_at_tick(profile, "s1", 10).cpu == doctest::Approx(10.0));
}

TEST_CASE("jittered demand is reproducible and bounded") {
  WorkloadProfile profile;
  profile.rates["s3"] = 100.0;
  profile.rates["s4"] = 100.0;
  profile.unit_cost = {1, 1, 1};
  profile.jitter = 0.2;
  profile.seed = 42;

  auto first = demand_at_tick(profile, "s3", 7);
  auto second = demand_at_tick(profile, "s3", 7);
  CHECK(first.cpu == second.cpu);
  CHECK(first.mem == second.mem);
  CHECK(first.bw == second.bw);

  // different switch or tick draws a different jitter
  CHECK(demand_at_tick(profile, "s4", 7).cpu != first.cpu);
  CHECK(demand_at_tick(profile, "s3", 8).cpu != first.cpu);

  for (long tick = 0; tick < 200; ++tick) {
    double cpu = demand_at_tick(profile, "s3", tick).cpu;
    CHECK(cpu >= 80.0);
    CHECK(cpu <= 120.0);
  }

  // a different seed changes the stream
  WorkloadProfile other = profile;
  other.seed = 43;
  CHECK(demand_at_tick(other, "s3", 7).cpu != first.cpu);
}
