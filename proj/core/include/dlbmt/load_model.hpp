#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dlbmt/errors.hpp"

namespace dlbmt {

// Per-tick resource consumption a switch imposes on its controller.
struct ResourceDemand {
  double cpu = 0.0;
  double mem = 0.0;
  double bw = 0.0;
};

// Per-tick capacity of one controller. All components strictly positive.
struct CapacityVector {
  double cpu = 0.0;
  double mem = 0.0;
  double bw = 0.0;
};

// Blend coefficients for the cpu/mem/bw ratios. Must sum to 1.
struct Weights {
  double a = 1.0 / 3.0;
  double b = 1.0 / 3.0;
  double c = 1.0 / 3.0;
};

void validate_weights(const Weights& w);           // throws InvalidWeights
void validate_capacity(const CapacityVector& cap); // throws ValidationError

// Fraction of the controller's blended capacity consumed by one switch.
// Each component ratio is clamped to [0,1] before blending, so the result
// stays in [0,1] even when a single demand exceeds capacity.
double switch_consumption(const ResourceDemand& d, const CapacityVector& cap,
                          const Weights& w);

// Sum of switch_consumption over a domain (unitless, unclamped).
double domain_consumption(std::span<const ResourceDemand> demands,
                          const CapacityVector& cap, const Weights& w);

// Controller load percentage: background + 100 * domain_consumption,
// clamped to [0,100]. The unclamped value is the "raw" load.
double controller_load(std::span<const ResourceDemand> demands,
                       const CapacityVector& cap, const Weights& w,
                       double background = 0.0);

// Piecewise-constant rate multiplier over [from_tick, to_tick).
struct ModulationStep {
  long from_tick = 0;
  long to_tick = 0;
  double multiplier = 1.0;
};

// Deterministic per-switch packet-in workload. `rates` holds the request
// rate of every switch in the scenario; a switch missing from it is unknown.
struct WorkloadProfile {
  std::map<std::string, double> rates;
  ResourceDemand unit_cost;            // resource units per request
  std::vector<ModulationStep> modulation;
  double jitter = 0.0;                 // in [0,1)
  std::uint64_t seed = 0;
};

double modulation_at(const WorkloadProfile& profile, long tick);

// demand = rate * modulation(tick) * unit_cost * (1 + u), u drawn uniformly
// from [-jitter, +jitter] by a generator keyed only on (seed, switch, tick).
// Identical inputs always yield identical demand, on any platform.
ResourceDemand demand_at_tick(const WorkloadProfile& profile,
                              const std::string& switch_id, long tick);

} // namespace dlbmt
