#pragma once

#include <set>
#include <string>
#include <vector>

#include "dlbmt/load_model.hpp"
#include "dlbmt/threshold.hpp"
#include "dlbmt/topology.hpp"

namespace dlbmt {

// Mutable per-controller record driven by the simulation loop.
// Invariant: inactive controllers have an empty domain and load 0.
struct ControllerState {
  std::string id;
  int site = -1; // node index in the scenario graph
  CapacityVector capacity;
  double background = 0.0;
  bool active = false;
  double load = 0.0;     // LR, clamped to [0,100]
  double raw_load = 0.0; // background + 100 * domain consumption, unclamped
  LoadLevel level = LoadLevel::Idle;
  std::set<int> domain;  // switch indices, ascending
};

struct RuntimeSwitch {
  std::string id;
  int site = -1;
};

// Whole-fleet mutable state: controllers plus the switch->controller map.
// `owner[s]` and `controllers[j].domain` are kept in lockstep.
struct FleetState {
  std::vector<ControllerState> controllers;
  std::vector<RuntimeSwitch> switches;
  std::vector<int> owner; // switch index -> controller index

  int active_count() const;
  int index_of(const std::string& controller_id) const; // -1 if absent

  // Domain-totality invariant: every switch owned by exactly one active
  // controller, owner[] consistent with domains. Throws ValidationError.
  void check_domain_totality() const;
};

// Recomputes raw/clamped load of one controller from this tick's demands.
// Summation runs in ascending switch-index order (deterministic).
void recompute_load(ControllerState& c,
                    const std::vector<ResourceDemand>& demands,
                    const Weights& w);

struct LevelUpdate {
  bool changed = false;
  int notifications = 0; // one message to each other active controller
};

// Replaces the controller's level if it differs; a change is announced to
// the other active_count-1 controllers.
LevelUpdate update_level(ControllerState& c, LoadLevel new_level,
                         int active_count);

} // namespace dlbmt
