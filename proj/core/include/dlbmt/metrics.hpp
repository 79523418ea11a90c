#pragma once

#include <span>

#include "dlbmt/threshold.hpp"

namespace dlbmt {

// Utilization-saturation curve: base / (1 - min(lr,99.9)/100)^exponent.
// Strictly increasing in lr; equals base at lr == 0.
double response_time_ms(double lr, double base_ms, double exponent);

// Fleet-wide imbalance: mean absolute deviation of active-controller loads
// from their mean, normalized by the mean. 0 when all loads are 0.
double network_imbalance(std::span<const double> active_loads);

// Fraction of active controllers sitting at Normal level.
double balancing_rate(std::span<const LoadLevel> active_levels);

} // namespace dlbmt
