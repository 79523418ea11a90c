#include "dlbmt/threshold.hpp"

#include <cmath>

namespace dlbmt {

const char* to_string(LoadLevel level) {
  switch (level) {
    case LoadLevel::Idle: return "idle";
    case LoadLevel::Normal: return "normal";
    case LoadLevel::HighLoad: return "high";
    case LoadLevel::Overload: return "overload";
  }
  return "?";
}

void ThresholdConfig::validate() const {
  for (size_t i = 1; i < bounds.size(); ++i) {
    if (!(bounds[i - 1] < bounds[i])) {
      throw ValidationError("thresholds must be strictly ascending");
    }
  }
  if (bounds.front() <= 0 || bounds.back() != 100.0) {
    throw ValidationError("thresholds must lie in (0,100] and end at 100");
  }
  if (hysteresis < 0) {
    throw ValidationError("hysteresis must be non-negative");
  }
}

LoadLevel classify(double lr, const ThresholdConfig& q) {
  if (lr < 0.0 || lr > 100.0) {
    throw OutOfRange("load out of [0,100]: " + std::to_string(lr));
  }
  for (size_t i = 0; i < q.bounds.size(); ++i) {
    if (lr < q.bounds[i]) {
      return static_cast<LoadLevel>(i + 1);
    }
  }
  return LoadLevel::Overload; // lr == 100: no strict bound above it
}

LoadLevel classify_stable(double lr, LoadLevel current,
                          const ThresholdConfig& q) {
  LoadLevel next = classify(lr, q);
  if (q.hysteresis <= 0.0 || next == current) {
    return next;
  }
  // Band edge of the would-be level adjacent to the current one.
  int cur = static_cast<int>(current);
  int cand = static_cast<int>(next);
  double edge = (cand > cur) ? q.bounds[cand - 2] : q.bounds[cand - 1];
  if (std::abs(lr - edge) < q.hysteresis) {
    return current;
  }
  return next;
}

} // namespace dlbmt
