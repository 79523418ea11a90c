#pragma once

#include <array>
#include <string>

#include "dlbmt/errors.hpp"

namespace dlbmt {

// Controller load bands. Values follow the level index used throughout:
// Idle [0,Q0), Normal [Q0,Q1), HighLoad [Q1,Q2), Overload [Q2,100].
enum class LoadLevel : int {
  Idle = 1,
  Normal = 2,
  HighLoad = 3,
  Overload = 4,
};

const char* to_string(LoadLevel level);

struct ThresholdConfig {
  // Ascending level upper bounds; last element must be 100.
  std::array<double, 4> bounds{25.0, 50.0, 75.0, 100.0};
  // Optional dead band around the crossed boundary; 0 disables it.
  double hysteresis = 0.0;

  void validate() const; // throws ValidationError
};

// First level whose upper bound exceeds lr (strict less-than). lr == 100
// maps to Overload. Pure and total on [0,100]; throws OutOfRange outside.
LoadLevel classify(double lr, const ThresholdConfig& q);

// classify() with the hysteresis band applied against the current level:
// a change is suppressed while lr is within `hysteresis` of the boundary
// it would cross. With hysteresis == 0 this is exactly classify().
LoadLevel classify_stable(double lr, LoadLevel current, const ThresholdConfig& q);

} // namespace dlbmt
