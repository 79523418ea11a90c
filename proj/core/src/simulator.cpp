#include "dlbmt/simulator.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace dlbmt {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Dlbmt: return "dlbmt";
    case Strategy::SingleThreshold: return "single_threshold";
  }
  return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& name) {
  if (name == "dlbmt") {
    return Strategy::Dlbmt;
  }
  if (name == "single_threshold" || name == "single-threshold" ||
      name == "baseline") {
    return Strategy::SingleThreshold;
  }
  return std::nullopt;
}

std::optional<MigrationPlan>
baseline_single_threshold(const FleetState& fleet, int source_index,
                          const std::vector<ResourceDemand>& demands,
                          const HopMatrix& hops, const Weights& w,
                          double threshold) {
  const auto& source = fleet.controllers.at(source_index);
  if (!source.active || !(source.load > threshold) || source.domain.empty()) {
    return std::nullopt;
  }

  int best_switch = -1;
  double best_eps = -1.0;
  for (int s : source.domain) {
    double eps = switch_consumption(demands.at(s), source.capacity, w);
    if (eps > best_eps ||
        (eps == best_eps &&
         fleet.switches[s].id < fleet.switches[best_switch].id)) {
      best_switch = s;
      best_eps = eps;
    }
  }
  if (best_switch < 0 || best_eps <= 0.0) {
    return std::nullopt; // nothing worth shedding
  }

  int target = -1;
  for (size_t j = 0; j < fleet.controllers.size(); ++j) {
    const auto& c = fleet.controllers[j];
    if (!c.active || static_cast<int>(j) == source_index) {
      continue;
    }
    if (target < 0 || c.load < fleet.controllers[target].load ||
        (c.load == fleet.controllers[target].load &&
         c.id < fleet.controllers[target].id)) {
      target = static_cast<int>(j);
    }
  }
  if (target < 0) {
    return std::nullopt;
  }

  const auto& tgt = fleet.controllers[target];
  double eps_t = switch_consumption(demands.at(best_switch), tgt.capacity, w);
  MigrationPlan plan;
  plan.switch_index = best_switch;
  plan.switch_id = fleet.switches[best_switch].id;
  plan.source_id = source.id;
  plan.target_id = tgt.id;
  plan.eps_on_source = best_eps;
  plan.eps_on_target = eps_t;
  plan.cost = eps_t * 100.0 *
              std::max(hops.at(fleet.switches[best_switch].site, tgt.site), 1);
  double src_after = std::clamp(source.load - best_eps * 100.0, 0.0, 100.0);
  double tgt_after = std::min(100.0, tgt.load + eps_t * 100.0);
  double mean = 0.0;
  int k = 0;
  for (size_t j = 0; j < fleet.controllers.size(); ++j) {
    const auto& c = fleet.controllers[j];
    if (!c.active) continue;
    if (static_cast<int>(j) == source_index) mean += src_after;
    else if (static_cast<int>(j) == target) mean += tgt_after;
    else mean += c.load;
    ++k;
  }
  mean /= std::max(k, 1);
  plan.dc_after = imbalance_degree(src_after, tgt_after, mean);
  double mean_before = 0.0;
  for (const auto& c : fleet.controllers) {
    if (c.active) mean_before += c.load;
  }
  mean_before /= std::max(k, 1);
  plan.dc_before = imbalance_degree(source.load, tgt.load, mean_before);
  plan.efficiency = plan.cost > 0.0
                        ? std::abs(plan.dc_after - plan.dc_before) / plan.cost
                        : 0.0;
  return plan;
}

namespace {

struct TickCounters {
  int migrations = 0;
  int messages = 0;
  int notifications = 0;
  int level_changes = 0;
  int scale_actions = 0;
  int unsafe = 0;
  double cost = 0.0;
};

// Active controllers in descending-load order (ties to the lower id),
// snapshotted before any balancing action of this tick.
std::vector<int> balancing_order(const FleetState& fleet) {
  std::vector<int> order;
  for (size_t j = 0; j < fleet.controllers.size(); ++j) {
    if (fleet.controllers[j].active) {
      order.push_back(static_cast<int>(j));
    }
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const auto& cx = fleet.controllers[x];
    const auto& cy = fleet.controllers[y];
    if (cx.load != cy.load) return cx.load > cy.load;
    return cx.id < cy.id;
  });
  return order;
}

void account_apply(const FleetState& fleet, const MigrationPlan& plan,
                   const ApplyResult& applied, TickCounters& counters) {
  counters.migrations += 1;
  counters.messages += applied.messages;
  counters.notifications += applied.notifications;
  counters.level_changes += applied.level_changes;
  counters.cost += plan.cost;
  int ti = fleet.index_of(plan.target_id);
  LoadLevel level = fleet.controllers[ti].level;
  if (level == LoadLevel::HighLoad || level == LoadLevel::Overload) {
    counters.unsafe += 1;
  }
}

void dlbmt_pass(FleetState& fleet, const std::vector<ResourceDemand>& demands,
                const HopMatrix& hops, const NetworkGraph& graph,
                const ScenarioConfig& cfg, TickCounters& counters) {
  for (int idx : balancing_order(fleet)) {
    auto& source = fleet.controllers[idx];
    if (!source.active || source.level == LoadLevel::Normal) {
      continue;
    }

    if (source.level == LoadLevel::Idle) {
      if (fleet.active_count() < 2) {
        continue;
      }
      auto evacuation = try_shutdown_idle(fleet, idx, demands, hops,
                                          cfg.weights, cfg.thresholds);
      if (evacuation) {
        for (const auto& move : evacuation->migrations) {
          auto applied = apply_plan(fleet, move, demands, cfg.weights,
                                    cfg.thresholds, cfg.planner);
          account_apply(fleet, move, applied, counters);
        }
        power_off(fleet, idx);
        counters.scale_actions += 1;
      }
      continue;
    }

    // HighLoad or Overload source.
    auto plan = plan_migration(fleet, idx, demands, hops, cfg.weights,
                               cfg.thresholds, cfg.planner);
    if (plan) {
      auto applied = apply_plan(fleet, *plan, demands, cfg.weights,
                                cfg.thresholds, cfg.planner);
      account_apply(fleet, *plan, applied, counters);
      continue;
    }
    auto action = resolve_no_plan(fleet, idx);
    if (action.kind == ScaleActionKind::PowerOn) {
      auto applied = power_on(fleet, action.controller_id, cfg.thresholds);
      counters.notifications += applied.notifications;
      counters.level_changes += applied.level_changes;
      counters.scale_actions += 1;
    } else if (action.kind == ScaleActionKind::AddController) {
      add_controller(fleet, graph, hops, cfg.planner);
      counters.scale_actions += 1;
    }
  }
}

void baseline_pass(FleetState& fleet,
                   const std::vector<ResourceDemand>& demands,
                   const HopMatrix& hops, const ScenarioConfig& cfg,
                   TickCounters& counters) {
  for (int idx : balancing_order(fleet)) {
    auto& source = fleet.controllers[idx];
    if (!source.active || !(source.load > cfg.single_threshold)) {
      continue;
    }
    auto plan = baseline_single_threshold(fleet, idx, demands, hops,
                                          cfg.weights, cfg.single_threshold);
    if (plan) {
      auto applied =
          apply_plan(fleet, *plan, demands, cfg.weights, cfg.thresholds,
                     cfg.planner, /*enforce_target_level=*/false);
      account_apply(fleet, *plan, applied, counters);
    }
  }
}

double sum_active_raw(const FleetState& fleet) {
  double sum = 0.0;
  for (const auto& c : fleet.controllers) {
    if (c.active) {
      sum += c.raw_load;
    }
  }
  return sum;
}

} // namespace

FleetState initialize_fleet(const Scenario& scenario) {
  FleetState fleet;
  fleet.switches.reserve(scenario.switches.size());
  for (const auto& sw : scenario.switches) {
    fleet.switches.push_back({sw.id, scenario.graph.node_index(sw.site)});
  }
  for (const auto& spec : scenario.controllers) {
    ControllerState c;
    c.id = spec.id;
    c.site = scenario.graph.node_index(spec.site);
    c.capacity = spec.capacity;
    c.background = spec.background_load;
    c.active = spec.initially_active;
    fleet.controllers.push_back(std::move(c));
  }

  auto assignment = assign_initial_domains(scenario.graph,
                                           scenario.controllers,
                                           scenario.switches);
  fleet.owner.assign(fleet.switches.size(), -1);
  for (size_t s = 0; s < fleet.switches.size(); ++s) {
    int j = fleet.index_of(assignment.owner.at(fleet.switches[s].id));
    fleet.owner[s] = j;
    fleet.controllers[j].domain.insert(static_cast<int>(s));
  }
  fleet.check_domain_totality();
  return fleet;
}

RunResult run(const Scenario& scenario) {
  const auto& cfg = scenario.config;
  if (cfg.ticks < 1) {
    throw ValidationError("tick count must be >= 1");
  }
  validate_weights(cfg.weights);
  cfg.thresholds.validate();

  FleetState fleet = initialize_fleet(scenario);
  HopMatrix hops(scenario.graph);
  WorkloadProfile profile = cfg.workload;
  profile.seed = cfg.seed;

  RunResult result;
  for (const auto& c : fleet.controllers) {
    result.initial_controller_ids.push_back(c.id);
  }
  size_t initial_count = fleet.controllers.size();
  result.records.reserve(cfg.ticks);

  std::vector<ResourceDemand> demands(fleet.switches.size());
  double cum_cost = 0.0;
  long cum_messages = 0;

  for (long tick = 0; tick < cfg.ticks; ++tick) {
    try {
      for (size_t s = 0; s < fleet.switches.size(); ++s) {
        demands[s] = demand_at_tick(profile, fleet.switches[s].id, tick);
      }
      for (auto& c : fleet.controllers) {
        if (c.active) {
          recompute_load(c, demands, cfg.weights);
        }
      }
      double raw_pre = sum_active_raw(fleet);

      TickCounters counters;
      int active = fleet.active_count();
      for (auto& c : fleet.controllers) {
        if (!c.active) {
          continue;
        }
        auto upd = update_level(
            c, classify_stable(c.load, c.level, cfg.thresholds), active);
        counters.level_changes += upd.changed ? 1 : 0;
        counters.notifications += upd.notifications;
      }

      if (cfg.balance_every_n_ticks > 0 &&
          tick % cfg.balance_every_n_ticks == 0) {
        if (cfg.strategy == Strategy::Dlbmt) {
          dlbmt_pass(fleet, demands, hops, scenario.graph, cfg, counters);
        } else {
          baseline_pass(fleet, demands, hops, cfg, counters);
        }
      }

      cum_cost += counters.cost;
      cum_messages += counters.notifications +
                      static_cast<long>(counters.migrations) *
                          cfg.planner.migration_protocol_messages;

      MetricsRecord rec;
      rec.tick = tick;
      rec.controller_loads.reserve(initial_count);
      rec.controller_levels.reserve(initial_count);
      for (size_t j = 0; j < initial_count; ++j) {
        rec.controller_loads.push_back(fleet.controllers[j].load);
        rec.controller_levels.push_back(fleet.controllers[j].level);
      }
      std::vector<double> active_loads;
      std::vector<LoadLevel> active_levels;
      for (const auto& c : fleet.controllers) {
        if (c.active) {
          active_loads.push_back(c.load);
          active_levels.push_back(c.level);
        }
      }
      double rt = 0.0;
      for (double lr : active_loads) {
        rt += response_time_ms(lr, cfg.response.base_ms, cfg.response.exponent);
      }
      rec.mean_response_ms =
          active_loads.empty() ? 0.0 : rt / active_loads.size();
      rec.imbalance = network_imbalance(active_loads);
      rec.balancing_rate = balancing_rate(active_levels);
      rec.cum_cost = cum_cost;
      rec.cum_messages = cum_messages;
      rec.migrations = counters.migrations;
      rec.active_controllers = static_cast<int>(active_loads.size());
      rec.level_changes = counters.level_changes;
      rec.notifications = counters.notifications;
      rec.scale_actions = counters.scale_actions;
      rec.unsafe_migrations = counters.unsafe;
      rec.raw_load_pre = raw_pre;
      rec.raw_load_post = sum_active_raw(fleet);
      result.records.push_back(std::move(rec));

      result.total_migrations += counters.migrations;
      result.total_notifications += counters.notifications;
      result.total_scale_actions += counters.scale_actions;
      result.total_unsafe_migrations += counters.unsafe;
    } catch (const RunError&) {
      throw;
    } catch (const Error& e) {
      throw RunError("tick " + std::to_string(tick) + ": " + e.what());
    }
  }

  result.total_messages = cum_messages;
  result.total_cost = cum_cost;
  result.final_fleet = std::move(fleet);
  return result;
}

RunSummary summarize(const Scenario& scenario, const RunResult& result) {
  RunSummary s;
  s.strategy = to_string(scenario.config.strategy);
  s.seed = scenario.config.seed;
  s.ticks = static_cast<long>(result.records.size());
  double rt = 0.0, imb = 0.0, rate = 0.0;
  for (const auto& rec : result.records) {
    rt += rec.mean_response_ms;
    imb += rec.imbalance;
    rate += rec.balancing_rate;
  }
  if (!result.records.empty()) {
    double n = static_cast<double>(result.records.size());
    s.mean_response_ms = rt / n;
    s.mean_imbalance = imb / n;
    s.mean_balancing_rate = rate / n;
  }
  s.migrations = result.total_migrations;
  s.migration_cost = result.total_cost;
  s.messages = result.total_messages;
  s.notifications = result.total_notifications;
  s.scale_actions = result.total_scale_actions;
  s.unsafe_migrations = result.total_unsafe_migrations;
  s.final_active_controllers = result.final_fleet.active_count();
  return s;
}

void write_csv(std::ostream& out, const RunResult& result) {
  out << "tick";
  for (const auto& id : result.initial_controller_ids) {
    out << ",lr_" << id;
  }
  out << ",mean_rt_ms,imbalance,balancing_rate,cum_cost,cum_msgs,"
         "migrations,active_controllers\n";
  out << std::setprecision(12);
  for (const auto& rec : result.records) {
    out << rec.tick;
    for (double lr : rec.controller_loads) {
      out << ',' << lr;
    }
    out << ',' << rec.mean_response_ms << ',' << rec.imbalance << ','
        << rec.balancing_rate << ',' << rec.cum_cost << ',' << rec.cum_messages
        << ',' << rec.migrations << ',' << rec.active_controllers << '\n';
  }
}

namespace {

nlohmann::json summary_to_json(const Scenario& scenario,
                               const RunResult& result) {
  auto s = summarize(scenario, result);
  nlohmann::json final_loads = nlohmann::json::object();
  nlohmann::json final_levels = nlohmann::json::object();
  for (const auto& c : result.final_fleet.controllers) {
    if (c.active) {
      final_loads[c.id] = c.load;
      final_levels[c.id] = to_string(c.level);
    }
  }
  return nlohmann::json{
      {"scenario", scenario.name},
      {"strategy", s.strategy},
      {"seed", s.seed},
      {"ticks", s.ticks},
      {"means",
       {{"response_time_ms", s.mean_response_ms},
        {"imbalance", s.mean_imbalance},
        {"balancing_rate", s.mean_balancing_rate}}},
      {"totals",
       {{"migrations", s.migrations},
        {"migration_cost", s.migration_cost},
        {"messages", s.messages},
        {"notifications", s.notifications},
        {"scale_actions", s.scale_actions},
        {"unsafe_migrations", s.unsafe_migrations}}},
      {"final",
       {{"active_controllers", s.final_active_controllers},
        {"loads", final_loads},
        {"levels", final_levels}}}};
}

} // namespace

void write_summary_json(std::ostream& out, const Scenario& scenario,
                        const RunResult& result) {
  out << summary_to_json(scenario, result).dump(2) << '\n';
}

} // namespace dlbmt
