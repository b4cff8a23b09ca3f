#pragma once

#include <vector>

#include "arbor/core.hpp"

namespace arbor::kernel {

/// Per-start result of running the forward map to 1 (or to the early-exit
/// threshold). peak includes the start itself.
struct Outcome {
  u64 steps = 0;
  u128 peak = 0;
  bool converged = false;
};

struct Request {
  u128 lo = 1;
  u128 hi = 1;
  MapVariant variant = MapVariant::kShortcut;
  u64 step_limit = kDefaultStepLimit;
  u128 assume_below = 0;  // values dropping under this count as converged; 0 disables
};

/// Order-independent aggregate over a range of starts. Ties on steps or peak
/// resolve toward the smaller start, so any merge order and any sharding of
/// the range produce identical aggregates.
struct Accumulator {
  u64 scanned = 0;
  u64 max_steps = 0;
  u128 max_steps_start = 0;  // 0 marks "nothing noted yet"
  u128 max_peak = 0;
  u128 max_peak_start = 0;
  std::vector<u128> failures;

  void note(u128 start, const Outcome& o);
  void merge(const Accumulator& other);
  void finalize();  // sorts failures ascending
};

/// A kernel sweeps [lo, hi], notes every start into the accumulator, and
/// when per_start is non-null also records Outcome at index start - lo
/// (caller sizes the buffer). Throws OverflowError if an orbit leaves the
/// 128-bit range.
using Fn = void (*)(const Request&, Accumulator&, Outcome* per_start);

/// Packed lanes hand values at or above this bound to the scalar path, which
/// keeps lane arithmetic and comparisons inside safe 64-bit territory.
inline constexpr u64 kLaneEvictBound = u64{1} << 61;

Fn scalar_fn();

bool simd_supported();
const char* simd_name();  // "avx2", "neon", or "none"
Fn simd_fn();             // nullptr when unsupported

Fn best_fn();
const char* best_name();

/// Scalar continuation used by lane eviction and resumable sweeps.
Outcome resume_scalar(u128 v, u64 steps, u128 peak, const Request& req);

}  // namespace arbor::kernel
