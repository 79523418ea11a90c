#include "dlbmt/fleet.hpp"

#include <algorithm>

namespace dlbmt {

int FleetState::active_count() const {
  int n = 0;
  for (const auto& c : controllers) {
    n += c.active ? 1 : 0;
  }
  return n;
}

int FleetState::index_of(const std::string& controller_id) const {
  for (size_t i = 0; i < controllers.size(); ++i) {
    if (controllers[i].id == controller_id) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

void FleetState::check_domain_totality() const {
  if (owner.size() != switches.size()) {
    throw ValidationError("owner table size mismatch");
  }
  for (size_t s = 0; s < owner.size(); ++s) {
    int j = owner[s];
    if (j < 0 || j >= static_cast<int>(controllers.size())) {
      throw ValidationError("switch " + switches[s].id + " has no owner");
    }
    const auto& c = controllers[j];
    if (!c.active) {
      throw ValidationError("switch " + switches[s].id +
                            " owned by inactive controller " + c.id);
    }
    if (!c.domain.count(static_cast<int>(s))) {
      throw ValidationError("owner table and domain of " + c.id +
                            " disagree on switch " + switches[s].id);
    }
  }
  size_t domain_total = 0;
  for (const auto& c : controllers) {
    if (!c.active && !c.domain.empty()) {
      throw ValidationError("inactive controller " + c.id +
                            " has a non-empty domain");
    }
    domain_total += c.domain.size();
  }
  if (domain_total != switches.size()) {
    throw ValidationError("domains do not partition the switch set");
  }
}

void recompute_load(ControllerState& c,
                    const std::vector<ResourceDemand>& demands,
                    const Weights& w) {
  double total = 0.0;
  for (int s : c.domain) {
    total += switch_consumption(demands[s], c.capacity, w);
  }
  c.raw_load = c.background + total * 100.0;
  c.load = std::min(100.0, c.raw_load);
}

LevelUpdate update_level(ControllerState& c, LoadLevel new_level,
                         int active_count) {
  if (new_level == c.level) {
    return {false, 0};
  }
  c.level = new_level;
  return {true, active_count > 0 ? active_count - 1 : 0};
}

} // namespace dlbmt
