#include "dlbmt/load_model.hpp"

#include <algorithm>
#include <cmath>

namespace dlbmt {

void validate_weights(const Weights& w) {
  if (w.a < 0 || w.b < 0 || w.c < 0) {
    throw InvalidWeights("weights must be non-negative");
  }
  if (std::abs(w.a + w.b + w.c - 1.0) > 1e-9) {
    throw InvalidWeights("weights must sum to 1");
  }
}

void validate_capacity(const CapacityVector& cap) {
  if (!(cap.cpu > 0) || !(cap.mem > 0) || !(cap.bw > 0)) {
    throw ValidationError("capacity components must be strictly positive");
  }
}

namespace {

double clamped_ratio(double demand, double capacity) {
  return std::min(1.0, demand / capacity);
}

} // namespace

double switch_consumption(const ResourceDemand& d, const CapacityVector& cap,
                          const Weights& w) {
  validate_weights(w);
  return w.a * clamped_ratio(d.cpu, cap.cpu) +
         w.b * clamped_ratio(d.mem, cap.mem) +
         w.c * clamped_ratio(d.bw, cap.bw);
}

double domain_consumption(std::span<const ResourceDemand> demands,
                          const CapacityVector& cap, const Weights& w) {
  double total = 0.0;
  for (const auto& d : demands) {
    total += switch_consumption(d, cap, w);
  }
  return total;
}

double controller_load(std::span<const ResourceDemand> demands,
                       const CapacityVector& cap, const Weights& w,
                       double background) {
  return std::min(100.0, background + domain_consumption(demands, cap, w) * 100.0);
}

double modulation_at(const WorkloadProfile& profile, long tick) {
  for (const auto& step : profile.modulation) {
    if (tick >= step.from_tick && tick < step.to_tick) {
      return step.multiplier;
    }
  }
  return 1.0;
}

namespace {

// Stable across platforms: FNV-1a over the id bytes, splitmix64 finalizers
// over (seed, id hash, tick). std::hash is deliberately not used here.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform draw in [-1, 1), keyed only on (seed, switch, tick).
double unit_draw(std::uint64_t seed, const std::string& switch_id, long tick) {
  std::uint64_t x = splitmix64(seed ^ fnv1a(switch_id));
  x = splitmix64(x ^ static_cast<std::uint64_t>(tick));
  double u01 = static_cast<double>(x >> 11) * 0x1.0p-53;
  return 2.0 * u01 - 1.0;
}

} // namespace

ResourceDemand demand_at_tick(const WorkloadProfile& profile,
                              const std::string& switch_id, long tick) {
  auto it = profile.rates.find(switch_id);
  if (it == profile.rates.end()) {
    throw UnknownSwitch("no workload rate for switch: " + switch_id);
  }
  double rate = it->second * modulation_at(profile, tick);
  if (profile.jitter > 0.0) {
    rate *= 1.0 + profile.jitter * unit_draw(profile.seed, switch_id, tick);
  }
  return ResourceDemand{rate * profile.unit_cost.cpu,
                        rate * profile.unit_cost.mem,
                        rate * profile.unit_cost.bw};
}

} // namespace dlbmt
