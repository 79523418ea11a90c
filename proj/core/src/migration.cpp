#include "dlbmt/migration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dlbmt/metrics.hpp"

namespace dlbmt {

namespace {

bool is_viable_target_level(LoadLevel level) {
  return level == LoadLevel::Idle || level == LoadLevel::Normal;
}

double mean_active_load(const FleetState& fleet) {
  double sum = 0.0;
  int n = 0;
  for (const auto& c : fleet.controllers) {
    if (c.active) {
      sum += c.load;
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

// Mean over active controllers with the source and target loads replaced by
// their projected values. Summed in controller-index order.
double mean_active_load_projected(const FleetState& fleet, int source_index,
                                  int target_index, double source_after,
                                  double target_after) {
  double sum = 0.0;
  int n = 0;
  for (size_t j = 0; j < fleet.controllers.size(); ++j) {
    const auto& c = fleet.controllers[j];
    if (!c.active) {
      continue;
    }
    if (static_cast<int>(j) == source_index) {
      sum += source_after;
    } else if (static_cast<int>(j) == target_index) {
      sum += target_after;
    } else {
      sum += c.load;
    }
    ++n;
  }
  return n > 0 ? sum / n : 0.0;
}

} // namespace

std::vector<MigrationCandidate>
select_candidates(const FleetState& fleet, int source_index,
                  const std::vector<ResourceDemand>& demands,
                  const HopMatrix& hops, const Weights& w) {
  const auto& source = fleet.controllers.at(source_index);
  if (source.domain.empty()) {
    return {};
  }

  std::vector<MigrationCandidate> all;
  all.reserve(source.domain.size());
  double psi_sum = 0.0;
  for (int s : source.domain) {
    double eps = switch_consumption(demands.at(s), source.capacity, w);
    int h = hops.at(fleet.switches[s].site, source.site);
    double psi = eps * 100.0 / std::max(h, 1);
    psi_sum += psi;
    all.push_back({s, fleet.switches[s].id, eps, psi});
  }
  double psi_mean = psi_sum / static_cast<double>(all.size());

  std::vector<MigrationCandidate> selected;
  for (const auto& cand : all) {
    if (cand.psi >= psi_mean) {
      selected.push_back(cand);
    }
  }
  std::sort(selected.begin(), selected.end(),
            [](const MigrationCandidate& x, const MigrationCandidate& y) {
              if (x.psi != y.psi) return x.psi > y.psi;
              return x.switch_id < y.switch_id;
            });
  return selected;
}

ProjectedLoads project_loads(const ControllerState& source,
                             const ControllerState& target, int switch_index,
                             const std::vector<ResourceDemand>& demands,
                             const Weights& w) {
  if (!source.domain.count(switch_index)) {
    throw SwitchNotInDomain("switch index " + std::to_string(switch_index) +
                            " not in domain of " + source.id);
  }
  if (!target.active || target.id == source.id) {
    throw InactiveTarget("target " + target.id + " not usable from " +
                         source.id);
  }
  ProjectedLoads out;
  out.eps_on_source = switch_consumption(demands.at(switch_index),
                                         source.capacity, w);
  out.eps_on_target = switch_consumption(demands.at(switch_index),
                                         target.capacity, w);
  out.source_after =
      std::clamp(source.load - out.eps_on_source * 100.0, 0.0, 100.0);
  out.target_after =
      std::clamp(target.load + out.eps_on_target * 100.0, 0.0, 100.0);
  return out;
}

double imbalance_degree(double lr_j, double lr_k, double lr_bar) {
  if (lr_bar <= 0.0) {
    return 0.0;
  }
  return (std::abs(lr_j - lr_bar) + std::abs(lr_k - lr_bar)) / (2.0 * lr_bar);
}

double migration_cost(double eps_on_target, int hops_to_target) {
  if (eps_on_target <= 0.0) {
    throw ZeroConsumption("migration cost undefined for zero consumption");
  }
  return eps_on_target * 100.0 * std::max(hops_to_target, 1);
}

Efficiency migration_efficiency(double dc_before, double dc_after,
                                double cost) {
  return {std::abs(dc_after - dc_before) / cost, dc_after < dc_before};
}

std::optional<MigrationPlan>
plan_migration(const FleetState& fleet, int source_index,
               const std::vector<ResourceDemand>& demands,
               const HopMatrix& hops, const Weights& w,
               const ThresholdConfig& thresholds, const PlannerConfig& cfg) {
  const auto& source = fleet.controllers.at(source_index);
  if (!source.active || source.level == LoadLevel::Normal) {
    return std::nullopt;
  }

  auto candidates = select_candidates(fleet, source_index, demands, hops, w);
  if (candidates.empty()) {
    return std::nullopt;
  }

  double fleet_mean_before = mean_active_load(fleet);
  bool fleet_scope = cfg.dc_mean_scope == PlannerConfig::DcMeanScope::Fleet;

  std::vector<MigrationPlan> retained;
  for (const auto& cand : candidates) {
    std::optional<MigrationPlan> best;
    for (size_t t = 0; t < fleet.controllers.size(); ++t) {
      const auto& target = fleet.controllers[t];
      if (!target.active || static_cast<int>(t) == source_index ||
          !is_viable_target_level(target.level)) {
        continue;
      }
      auto proj =
          project_loads(source, target, cand.switch_index, demands, w);
      if (proj.eps_on_target <= 0.0) {
        continue; // a zero-demand switch is never a useful migration
      }
      if (!is_viable_target_level(classify(proj.target_after, thresholds))) {
        continue;
      }

      double mean_after =
          fleet_scope
              ? mean_active_load_projected(fleet, source_index,
                                           static_cast<int>(t),
                                           proj.source_after,
                                           proj.target_after)
              : (proj.source_after + proj.target_after) / 2.0;
      double mean_before =
          fleet_scope ? fleet_mean_before : (source.load + target.load) / 2.0;

      MigrationPlan plan;
      plan.switch_index = cand.switch_index;
      plan.switch_id = cand.switch_id;
      plan.source_id = source.id;
      plan.target_id = target.id;
      plan.eps_on_source = proj.eps_on_source;
      plan.eps_on_target = proj.eps_on_target;
      plan.dc_after =
          imbalance_degree(proj.source_after, proj.target_after, mean_after);
      plan.dc_before = imbalance_degree(source.load, target.load, mean_before);
      plan.cost = migration_cost(
          proj.eps_on_target,
          hops.at(fleet.switches[cand.switch_index].site, target.site));
      plan.efficiency =
          migration_efficiency(plan.dc_before, plan.dc_after, plan.cost).theta;

      bool better =
          !best || plan.dc_after < best->dc_after ||
          (plan.dc_after == best->dc_after &&
           (plan.cost < best->cost ||
            (plan.cost == best->cost && plan.target_id < best->target_id)));
      if (better) {
        best = plan;
      }
    }
    if (best) {
      retained.push_back(*best);
    }
  }

  // Final pick over improving pairs only.
  bool want_max =
      cfg.efficiency_direction == PlannerConfig::EfficiencyDirection::Max;
  const MigrationPlan* chosen = nullptr;
  for (const auto& plan : retained) {
    if (!(plan.dc_after < plan.dc_before)) {
      continue;
    }
    if (!chosen) {
      chosen = &plan;
      continue;
    }
    bool better;
    if (plan.efficiency != chosen->efficiency) {
      better = want_max ? plan.efficiency > chosen->efficiency
                        : plan.efficiency < chosen->efficiency;
    } else if (plan.cost != chosen->cost) {
      better = plan.cost < chosen->cost;
    } else {
      better = plan.switch_id < chosen->switch_id;
    }
    if (better) {
      chosen = &plan;
    }
  }
  if (!chosen) {
    return std::nullopt;
  }
  return *chosen;
}

ScaleAction resolve_no_plan(const FleetState& fleet, int source_index) {
  const auto& source = fleet.controllers.at(source_index);
  if (source.level != LoadLevel::Overload) {
    return {ScaleActionKind::None, {}};
  }
  const ControllerState* spare = nullptr;
  for (const auto& c : fleet.controllers) {
    if (!c.active && (!spare || c.id < spare->id)) {
      spare = &c;
    }
  }
  if (spare) {
    return {ScaleActionKind::PowerOn, spare->id};
  }
  return {ScaleActionKind::AddController, {}};
}

std::optional<EvacuationPlan>
try_shutdown_idle(const FleetState& fleet, int source_index,
                  const std::vector<ResourceDemand>& demands,
                  const HopMatrix& hops, const Weights& w,
                  const ThresholdConfig& thresholds) {
  const auto& source = fleet.controllers.at(source_index);
  if (!source.active || source.level != LoadLevel::Idle) {
    return std::nullopt;
  }
  if (fleet.active_count() < 2) {
    throw LastActiveController("cannot shut down " + source.id +
                               ": it is the only active controller");
  }

  // Receivers and their projected loads as placements accumulate.
  std::vector<int> receivers;
  std::map<int, double> projected;
  for (size_t j = 0; j < fleet.controllers.size(); ++j) {
    const auto& c = fleet.controllers[j];
    if (c.active && static_cast<int>(j) != source_index) {
      receivers.push_back(static_cast<int>(j));
      projected[static_cast<int>(j)] = c.load;
    }
  }

  auto fleet_imbalance = [&](int replaced, double value) {
    std::vector<double> loads;
    loads.reserve(receivers.size());
    for (int j : receivers) {
      loads.push_back(j == replaced ? value : projected[j]);
    }
    return network_imbalance(loads);
  };

  // Largest consumption first, ties to the lower switch id.
  struct Item {
    int switch_index;
    double eps;
  };
  std::vector<Item> order;
  for (int s : source.domain) {
    order.push_back({s, switch_consumption(demands.at(s), source.capacity, w)});
  }
  std::sort(order.begin(), order.end(), [&](const Item& x, const Item& y) {
    if (x.eps != y.eps) return x.eps > y.eps;
    return fleet.switches[x.switch_index].id < fleet.switches[y.switch_index].id;
  });

  EvacuationPlan plan;
  plan.power_off_id = source.id;
  for (const auto& item : order) {
    int best = -1;
    double best_dc = 0.0;
    double best_after = 0.0;
    double best_eps = 0.0;
    for (int j : receivers) {
      const auto& target = fleet.controllers[j];
      double eps_t =
          switch_consumption(demands.at(item.switch_index), target.capacity, w);
      double after = std::min(100.0, projected[j] + eps_t * 100.0);
      if (!is_viable_target_level(classify(after, thresholds))) {
        continue;
      }
      double dc = fleet_imbalance(j, after);
      if (best < 0 || dc < best_dc ||
          (dc == best_dc && target.id < fleet.controllers[best].id)) {
        best = j;
        best_dc = dc;
        best_after = after;
        best_eps = eps_t;
      }
    }
    if (best < 0) {
      return std::nullopt; // domain does not fit anywhere
    }

    MigrationPlan move;
    move.switch_index = item.switch_index;
    move.switch_id = fleet.switches[item.switch_index].id;
    move.source_id = source.id;
    move.target_id = fleet.controllers[best].id;
    move.eps_on_source = item.eps;
    move.eps_on_target = best_eps;
    move.dc_before = fleet_imbalance(-1, 0.0);
    move.dc_after = best_dc;
    int h = hops.at(fleet.switches[item.switch_index].site,
                    fleet.controllers[best].site);
    move.cost = best_eps * 100.0 * std::max(h, 1); // 0 for idle switches
    move.efficiency = move.cost > 0.0
                          ? std::abs(move.dc_after - move.dc_before) / move.cost
                          : 0.0;
    plan.migrations.push_back(move);
    projected[best] = best_after;
  }
  return plan;
}

ApplyResult apply_plan(FleetState& fleet, const MigrationPlan& plan,
                       const std::vector<ResourceDemand>& demands,
                       const Weights& w, const ThresholdConfig& thresholds,
                       const PlannerConfig& cfg, bool enforce_target_level) {
  int si = fleet.index_of(plan.source_id);
  int ti = fleet.index_of(plan.target_id);
  if (si < 0 || ti < 0 || si == ti) {
    throw StalePlanError("plan references unknown controllers");
  }
  auto& src = fleet.controllers[si];
  auto& tgt = fleet.controllers[ti];
  if (!src.active || !tgt.active) {
    throw StalePlanError("plan endpoint no longer active");
  }
  if (!src.domain.count(plan.switch_index)) {
    throw StalePlanError("switch " + plan.switch_id + " no longer owned by " +
                         plan.source_id);
  }
  if (enforce_target_level) {
    auto proj = project_loads(src, tgt, plan.switch_index, demands, w);
    if (!is_viable_target_level(classify(proj.target_after, thresholds))) {
      throw StalePlanError("target " + plan.target_id +
                           " would leave the viable band");
    }
  }

  src.domain.erase(plan.switch_index);
  tgt.domain.insert(plan.switch_index);
  fleet.owner[plan.switch_index] = ti;
  recompute_load(src, demands, w);
  recompute_load(tgt, demands, w);

  int active = fleet.active_count();
  ApplyResult result;
  auto src_update =
      update_level(src, classify_stable(src.load, src.level, thresholds), active);
  auto tgt_update =
      update_level(tgt, classify_stable(tgt.load, tgt.level, thresholds), active);
  result.notifications = src_update.notifications + tgt_update.notifications;
  result.level_changes = (src_update.changed ? 1 : 0) + (tgt_update.changed ? 1 : 0);
  result.messages = cfg.migration_protocol_messages;

  fleet.check_domain_totality();
  return result;
}

ApplyResult power_on(FleetState& fleet, const std::string& controller_id,
                     const ThresholdConfig& thresholds) {
  int idx = fleet.index_of(controller_id);
  if (idx < 0) {
    throw ValidationError("cannot power on unknown controller " + controller_id);
  }
  auto& c = fleet.controllers[idx];
  if (c.active) {
    throw ValidationError("controller already active: " + controller_id);
  }
  c.active = true;
  c.raw_load = c.background;
  c.load = std::min(100.0, c.raw_load);
  ApplyResult result;
  auto update = update_level(c, classify_stable(c.load, c.level, thresholds),
                             fleet.active_count());
  result.notifications = update.notifications;
  result.level_changes = update.changed ? 1 : 0;
  return result;
}

void power_off(FleetState& fleet, int controller_index) {
  auto& c = fleet.controllers.at(controller_index);
  if (!c.domain.empty()) {
    throw ValidationError("cannot power off " + c.id +
                          " with a non-empty domain");
  }
  c.active = false;
  c.load = 0.0;
  c.raw_load = 0.0;
  c.level = LoadLevel::Idle;
}

std::string add_controller(FleetState& fleet, const NetworkGraph& graph,
                           const HopMatrix& hops, const PlannerConfig& cfg) {
  // Farthest-first placement relative to the active sites.
  int best_node = 0;
  int best_dist = -1;
  for (int v = 0; v < graph.node_count(); ++v) {
    int nearest = std::numeric_limits<int>::max();
    for (const auto& c : fleet.controllers) {
      if (c.active) {
        nearest = std::min(nearest, hops.at(v, c.site));
      }
    }
    if (nearest > best_dist) {
      best_dist = nearest;
      best_node = v;
    }
  }

  std::string id;
  for (size_t n = fleet.controllers.size() + 1;; ++n) {
    id = "c" + std::to_string(n);
    if (fleet.index_of(id) < 0) {
      break;
    }
  }

  ControllerState c;
  c.id = id;
  c.site = best_node;
  c.capacity = cfg.default_new_controller_capacity.value_or(
      fleet.controllers.front().capacity);
  c.active = true;
  c.level = LoadLevel::Idle;
  fleet.controllers.push_back(std::move(c));
  return id;
}

} // namespace dlbmt
