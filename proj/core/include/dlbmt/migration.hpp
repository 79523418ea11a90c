#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlbmt/fleet.hpp"

namespace dlbmt {

// A switch worth moving away from its controller: its consumption beats the
// domain's mean consumption-to-distance ratio.
struct MigrationCandidate {
  int switch_index = -1;
  std::string switch_id;
  double eps_on_source = 0.0; // consumption fraction against source capacity
  double psi = 0.0;           // eps * 100 / max(hops to source, 1)
};

// A fully evaluated (switch, source, target) move.
struct MigrationPlan {
  int switch_index = -1;
  std::string switch_id;
  std::string source_id;
  std::string target_id;
  double eps_on_source = 0.0;
  double eps_on_target = 0.0;
  double dc_before = 0.0;
  double dc_after = 0.0;
  double cost = 0.0;       // f = eps_on_target * 100 * max(hops, 1)
  double efficiency = 0.0; // theta = |dc_after - dc_before| / f
};

enum class ScaleActionKind { None, PowerOn, AddController };

struct ScaleAction {
  ScaleActionKind kind = ScaleActionKind::None;
  std::string controller_id; // set for PowerOn
};

struct PlannerConfig {
  enum class DcMeanScope { Fleet, Pair };
  enum class EfficiencyDirection { Max, Min };

  DcMeanScope dc_mean_scope = DcMeanScope::Fleet;
  EfficiencyDirection efficiency_direction = EfficiencyDirection::Max;
  int migration_protocol_messages = 6;
  // Capacity given to controllers created by AddController. Unset means
  // "capacity of the first controller in the scenario".
  std::optional<CapacityVector> default_new_controller_capacity;
};

// --- planning primitives ------------------------------------------------

// psi >= mean(psi) filter over the source domain, sorted by descending psi
// (ties by ascending switch id). Empty domain yields an empty list.
std::vector<MigrationCandidate>
select_candidates(const FleetState& fleet, int source_index,
                  const std::vector<ResourceDemand>& demands,
                  const HopMatrix& hops, const Weights& w);

struct ProjectedLoads {
  double source_after = 0.0; // LR*_source, clamped
  double target_after = 0.0; // LR*_target, clamped
  double eps_on_source = 0.0;
  double eps_on_target = 0.0;
};

// Loads of both ends after hypothetically moving `switch_index`. Consumption
// is evaluated against each side's own capacity.
ProjectedLoads project_loads(const ControllerState& source,
                             const ControllerState& target, int switch_index,
                             const std::vector<ResourceDemand>& demands,
                             const Weights& w);

// Degree of load imbalance between two controllers against a mean load.
// Defined as 0 when the mean is 0 (an all-idle fleet is balanced).
double imbalance_degree(double lr_j, double lr_k, double lr_bar);

// f = eps_on_target * 100 * max(hops, 1). Throws ZeroConsumption when the
// switch consumes nothing; such moves are excluded upstream.
double migration_cost(double eps_on_target, int hops_to_target);

struct Efficiency {
  double theta = 0.0;
  bool improving = false; // dc_after < dc_before
};

Efficiency migration_efficiency(double dc_before, double dc_after, double cost);

// --- the planner ----------------------------------------------------------

// One best (switch, target) pair for a source at Idle/HighLoad/Overload:
//   1. candidate switches from select_candidates;
//   2. targets: other active controllers currently at Idle/Normal;
//   3. drop targets that would leave Idle/Normal after the move;
//   4. per switch keep the target with the least post-move imbalance degree
//      (ties: lower cost, then lower target id);
//   5. over all retained pairs return the one with maximum improving
//      efficiency (ties: lower cost, then lower switch id).
// Returns nothing when no pair survives; that is a valid outcome.
std::optional<MigrationPlan>
plan_migration(const FleetState& fleet, int source_index,
               const std::vector<ResourceDemand>& demands,
               const HopMatrix& hops, const Weights& w,
               const ThresholdConfig& thresholds, const PlannerConfig& cfg);

// Escalation when no pair exists: sources at Idle/HighLoad do nothing;
// an Overload source powers on the lowest-id inactive controller, or asks
// for a new one when no spare exists.
ScaleAction resolve_no_plan(const FleetState& fleet, int source_index);

// Full evacuation of an idle controller: places every owned switch, largest
// consumption first, each on the target whose post-placement fleet imbalance
// is least, requiring every receiving controller to finish at Idle/Normal.
// Succeeds only when the whole domain fits. Throws LastActiveController when
// the source is the only active controller.
struct EvacuationPlan {
  std::vector<MigrationPlan> migrations;
  std::string power_off_id;
};

std::optional<EvacuationPlan>
try_shutdown_idle(const FleetState& fleet, int source_index,
                  const std::vector<ResourceDemand>& demands,
                  const HopMatrix& hops, const Weights& w,
                  const ThresholdConfig& thresholds);

// --- state transitions ------------------------------------------------

struct ApplyResult {
  int notifications = 0;
  int messages = 0;
  int level_changes = 0;
};

// Moves the switch atomically, recomputes both ends' loads and levels, and
// accounts the protocol message burst. `enforce_target_level` re-checks the
// Idle/Normal target guarantee and throws StalePlanError on violation; the
// single-threshold baseline applies its plans without that re-check.
ApplyResult apply_plan(FleetState& fleet, const MigrationPlan& plan,
                       const std::vector<ResourceDemand>& demands,
                       const Weights& w, const ThresholdConfig& thresholds,
                       const PlannerConfig& cfg,
                       bool enforce_target_level = true);

// Activates an existing powered-off controller (empty domain, background
// load only).
ApplyResult power_on(FleetState& fleet, const std::string& controller_id,
                     const ThresholdConfig& thresholds);

// Deactivates a controller whose domain has been evacuated.
void power_off(FleetState& fleet, int controller_index);

// Creates a brand-new active controller at the node maximizing the minimum
// hop distance to the sites of active controllers. Returns its id.
std::string add_controller(FleetState& fleet, const NetworkGraph& graph,
                           const HopMatrix& hops, const PlannerConfig& cfg);

} // namespace dlbmt
