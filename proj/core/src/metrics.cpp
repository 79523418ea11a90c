#include "dlbmt/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace dlbmt {

double response_time_ms(double lr, double base_ms, double exponent) {
  double utilization = std::min(lr, 99.9) / 100.0;
  return base_ms / std::pow(1.0 - utilization, exponent);
}

double network_imbalance(std::span<const double> active_loads) {
  if (active_loads.empty()) {
    return 0.0;
  }
  double mean = 0.0;
  for (double lr : active_loads) {
    mean += lr;
  }
  mean /= static_cast<double>(active_loads.size());
  if (mean <= 0.0) {
    return 0.0;
  }
  double deviation = 0.0;
  for (double lr : active_loads) {
    deviation += std::abs(lr - mean) / mean;
  }
  return deviation / static_cast<double>(active_loads.size());
}

double balancing_rate(std::span<const LoadLevel> active_levels) {
  if (active_levels.empty()) {
    return 0.0;
  }
  auto normal = std::count(active_levels.begin(), active_levels.end(),
                           LoadLevel::Normal);
  return static_cast<double>(normal) /
         static_cast<double>(active_levels.size());
}

} // namespace dlbmt
