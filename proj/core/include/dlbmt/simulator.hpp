#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlbmt/metrics.hpp"
#include "dlbmt/migration.hpp"

namespace dlbmt {

enum class Strategy { Dlbmt, SingleThreshold };

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& name);

struct ResponseTimeModel {
  double base_ms = 2.0;
  double exponent = 1.0;
};

struct ScenarioConfig {
  Strategy strategy = Strategy::Dlbmt;
  long ticks = 200;
  std::uint64_t seed = 0;
  Weights weights;
  ThresholdConfig thresholds;
  WorkloadProfile workload;
  PlannerConfig planner;
  ResponseTimeModel response;
  double single_threshold = 75.0; // baseline trigger, strict greater-than
  int balance_every_n_ticks = 1;
};

struct Scenario {
  std::string name;
  NetworkGraph graph;
  std::vector<ControllerSpec> controllers;
  std::vector<SwitchSpec> switches;
  ScenarioConfig config;
};

// One row of the emitted time series. Per-controller columns cover the
// controllers present at run start, in scenario order; controllers added
// mid-run only show up in the aggregate fields.
struct MetricsRecord {
  long tick = 0;
  std::vector<double> controller_loads;
  std::vector<LoadLevel> controller_levels;
  double mean_response_ms = 0.0;
  double imbalance = 0.0;
  double balancing_rate = 0.0;
  double cum_cost = 0.0;
  long cum_messages = 0;
  int migrations = 0;
  int active_controllers = 0;

  // accounting / diagnostics, not part of the CSV contract
  int level_changes = 0;
  int notifications = 0;
  int scale_actions = 0;
  int unsafe_migrations = 0;   // applied moves whose target left Idle/Normal
  double raw_load_pre = 0.0;   // sum of active raw loads before balancing
  double raw_load_post = 0.0;  // same sum after balancing
};

struct RunResult {
  std::vector<std::string> initial_controller_ids;
  std::vector<MetricsRecord> records;
  FleetState final_fleet;
  long total_migrations = 0;
  long total_messages = 0;
  long total_notifications = 0;
  long total_scale_actions = 0;
  long total_unsafe_migrations = 0;
  double total_cost = 0.0;
};

// Fleet at tick 0: sites resolved to node indices, initial domains assigned
// nearest-first, loads not yet computed.
FleetState initialize_fleet(const Scenario& scenario);

// Drives the tick loop: demands -> loads -> classification -> balancing ->
// metrics. Deterministic for a fixed (scenario, seed). Any module error
// aborts the run as RunError with tick context.
RunResult run(const Scenario& scenario);

struct RunSummary {
  std::string strategy;
  std::uint64_t seed = 0;
  long ticks = 0;
  double mean_response_ms = 0.0;
  double mean_imbalance = 0.0;
  double mean_balancing_rate = 0.0;
  long migrations = 0;
  double migration_cost = 0.0;
  long messages = 0;
  long notifications = 0;
  long scale_actions = 0;
  long unsafe_migrations = 0;
  int final_active_controllers = 0;
};

RunSummary summarize(const Scenario& scenario, const RunResult& result);

// CSV contract: tick, one load column per initial controller, mean_rt_ms,
// imbalance, balancing_rate, cum_cost, cum_msgs, migrations,
// active_controllers.
void write_csv(std::ostream& out, const RunResult& result);

void write_summary_json(std::ostream& out, const Scenario& scenario,
                        const RunResult& result);

// Single-threshold baseline rule: a source above the threshold sheds its
// highest-consumption switch to the least-loaded other active controller.
// No post-move filtering, no efficiency ranking, no scale actions.
std::optional<MigrationPlan>
baseline_single_threshold(const FleetState& fleet, int source_index,
                          const std::vector<ResourceDemand>& demands,
                          const HopMatrix& hops, const Weights& w,
                          double threshold);

} // namespace dlbmt
