// Microbenchmarks for the hot paths: all-pairs BFS, demand generation,
// planning, and whole simulation ticks on the largest bundle.
#include <benchmark/benchmark.h>

#include "dlbmt/scenario.hpp"
#include "dlbmt/simulator.hpp"

namespace {

dlbmt::Scenario load_bundle(const char* name) {
  return dlbmt::load_scenario(std::string(DLBMT_BENCH_SCENARIO_DIR) + "/" +
                              name);
}

void BM_AllPairsHops(benchmark::State& state) {
  auto scenario = load_bundle("interroute.json");
  for (auto _ : state) {
    dlbmt::HopMatrix hops(scenario.graph);
    benchmark::DoNotOptimize(hops.at(0, scenario.graph.node_count() - 1));
  }
}
BENCHMARK(BM_AllPairsHops);

void BM_DemandGeneration(benchmark::State& state) {
  auto scenario = load_bundle("germany50.json");
  auto& profile = scenario.config.workload;
  profile.jitter = 0.1;
  long tick = 0;
  for (auto _ : state) {
    double sum = 0;
    for (const auto& sw : scenario.switches) {
      sum += dlbmt::demand_at_tick(profile, sw.id, tick).cpu;
    }
    benchmark::DoNotOptimize(sum);
    ++tick;
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(scenario.switches.size()));
}
BENCHMARK(BM_DemandGeneration);

void BM_PlanMigration(benchmark::State& state) {
  auto scenario = load_bundle("germany50.json");
  auto fleet = dlbmt::initialize_fleet(scenario);
  dlbmt::HopMatrix hops(scenario.graph);
  const auto& cfg = scenario.config;

  auto profile = cfg.workload;
  std::vector<dlbmt::ResourceDemand> demands(fleet.switches.size());
  for (size_t s = 0; s < demands.size(); ++s) {
    demands[s] = dlbmt::demand_at_tick(profile, fleet.switches[s].id, 0);
  }
  for (auto& c : fleet.controllers) {
    dlbmt::recompute_load(c, demands, cfg.weights);
    c.level = dlbmt::classify(c.load, cfg.thresholds);
  }
  // the hot controller in the bundle starts above the high-load bound
  int source = 0;
  for (size_t j = 0; j < fleet.controllers.size(); ++j) {
    if (fleet.controllers[j].level != dlbmt::LoadLevel::Normal) {
      source = static_cast<int>(j);
      break;
    }
  }
  for (auto _ : state) {
    auto plan = dlbmt::plan_migration(fleet, source, demands, hops,
                                      cfg.weights, cfg.thresholds, cfg.planner);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_PlanMigration);

void BM_SimulationRun(benchmark::State& state) {
  auto scenario = load_bundle("interroute.json");
  scenario.config.ticks = state.range(0);
  scenario.config.seed = 9;
  for (auto _ : state) {
    auto result = dlbmt::run(scenario);
    benchmark::DoNotOptimize(result.records.back().cum_messages);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulationRun)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
