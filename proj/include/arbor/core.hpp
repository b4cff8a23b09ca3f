#pragma once

#include <vector>

#include "arbor/value.hpp"

namespace arbor {

/// Forward map selection. Shortcut sends odd d to (3d+1)/2 in a single step;
/// classic sends odd d to 3d+1. Both halve even d.
enum class MapVariant { kShortcut, kClassic };

inline constexpr u64 kDefaultStepLimit = u64{1} << 16;

/// One application of the chosen map. d must be >= 1.
Value step(const Value& d, MapVariant variant);

/// t applications of the chosen map; t = 0 returns d unchanged.
Value iterate(Value d, u64 t, MapVariant variant);

/// Forward orbit of a start value, recorded until 1 is reached or the step
/// limit trips. values.front() is the start; peak is the maximum attained,
/// start included.
struct Trajectory {
  Value start;
  std::vector<Value> values;
  bool terminated = false;
  u64 steps = 0;
  Value peak;
};

Trajectory trajectory(const Value& d, MapVariant variant,
                      u64 step_limit = kDefaultStepLimit);

/// The ascent formula for odd D: (3/2)^n (D+1) - 1, computed exactly.
/// Requires 2^n to divide D+1; equals n shortcut steps from D whenever the
/// first n-1 iterates are odd.
Value odd_ascent(const Value& D, unsigned n);

}  // namespace arbor
