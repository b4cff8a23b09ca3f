#include <algorithm>

#include "arbor/kernels.hpp"

namespace arbor::kernel {

namespace {

constexpr u128 kOddStepCeiling = (kU128Max - 1) / 3;

}  // namespace

void Accumulator::note(u128 start, const Outcome& o) {
  ++scanned;
  if (!o.converged) failures.push_back(start);
  if (max_steps_start == 0 || o.steps > max_steps ||
      (o.steps == max_steps && start < max_steps_start)) {
    max_steps = o.steps;
    max_steps_start = start;
  }
  if (max_peak_start == 0 || o.peak > max_peak ||
      (o.peak == max_peak && start < max_peak_start)) {
    max_peak = o.peak;
    max_peak_start = start;
  }
}

void Accumulator::merge(const Accumulator& other) {
  scanned += other.scanned;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  if (other.max_steps_start != 0) {
    if (max_steps_start == 0 || other.max_steps > max_steps ||
        (other.max_steps == max_steps && other.max_steps_start < max_steps_start)) {
      max_steps = other.max_steps;
      max_steps_start = other.max_steps_start;
    }
  }
  if (other.max_peak_start != 0) {
    if (max_peak_start == 0 || other.max_peak > max_peak ||
        (other.max_peak == max_peak && other.max_peak_start < max_peak_start)) {
      max_peak = other.max_peak;
      max_peak_start = other.max_peak_start;
    }
  }
}

void Accumulator::finalize() { std::sort(failures.begin(), failures.end()); }

Outcome resume_scalar(u128 v, u64 steps, u128 peak, const Request& req) {
  const bool shortcut = req.variant == MapVariant::kShortcut;
  const bool assume = req.assume_below != 0;
  // Effective 64-bit threshold for the fast segment; the outer loop
  // re-checks the exact 128-bit rule whenever the segment exits.
  const u64 ab64 = assume
                       ? static_cast<u64>(std::min<u128>(req.assume_below, kLaneEvictBound))
                       : 0;
  for (;;) {
    if (v == 1) return Outcome{steps, peak, true};
    if (assume && v < req.assume_below) return Outcome{steps, peak, true};
    if (steps >= req.step_limit) return Outcome{steps, peak, false};
    if (v < kLaneEvictBound) {
      u64 x = static_cast<u64>(v);
      u64 pk = 0;
      while (x != 1 && x < kLaneEvictBound && steps < req.step_limit &&
             !(assume && x < ab64)) {
        if (x & 1) {
          u64 t = 3 * x + 1;
          x = shortcut ? t >> 1 : t;
        } else {
          x >>= 1;
        }
        ++steps;
        if (x > pk) pk = x;
      }
      v = x;
      if (pk > peak) peak = pk;
    } else {
      if ((v & 1) != 0) {
        if (v > kOddStepCeiling)
          throw OverflowError("orbit left the 128-bit range");
        u128 t = 3 * v + 1;
        v = shortcut ? t >> 1 : t;
      } else {
        v >>= 1;
      }
      ++steps;
      if (v > peak) peak = v;
    }
  }
}

namespace {

void scalar_kernel(const Request& req, Accumulator& acc, Outcome* per_start) {
  for (u128 start = req.lo; start <= req.hi; ++start) {
    Outcome o = resume_scalar(start, 0, start, req);
    acc.note(start, o);
    if (per_start) per_start[static_cast<std::size_t>(start - req.lo)] = o;
    if (start == kU128Max) break;
  }
}

}  // namespace

Fn scalar_fn() { return &scalar_kernel; }

}  // namespace arbor::kernel
