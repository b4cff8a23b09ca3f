#pragma once

#include <string>
#include <vector>

#include "arbor/core.hpp"

namespace arbor {

struct VerifyOptions {
  MapVariant variant = MapVariant::kShortcut;
  u64 step_limit = kDefaultStepLimit;
  unsigned shards = 1;
  /// Treat an orbit dropping below lo as converged. Valid when [1, lo) is
  /// already verified; the threshold is the whole sweep's lo in every shard,
  /// so per-start outcomes do not depend on the sharding.
  bool assume_below = false;
  bool force_scalar = false;
};

struct VerifyReport {
  Value lo;
  Value hi;
  MapVariant variant = MapVariant::kShortcut;
  u64 step_limit = 0;
  unsigned shards = 1;
  std::string kernel;
  bool all_converged = false;
  u64 checked = 0;
  u64 max_steps = 0;
  Value max_steps_start;
  Value max_peak;
  Value max_peak_start;
  std::vector<Value> failures;  // ascending
  double elapsed_seconds = 0.0;
};

/// Sweeps [lo, hi], iterating every start to 1 (or below lo when the assume
/// option is on). Shards split the range contiguously across threads; the
/// merged aggregates are identical for every shard count.
VerifyReport batch_verify(const Value& lo, const Value& hi,
                          const VerifyOptions& opts);

}  // namespace arbor
