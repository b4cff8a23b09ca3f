#include "arbor/kernels.hpp"

#if defined(ARBOR_HAVE_NEON)

#include <arm_neon.h>

#include <algorithm>

namespace arbor::kernel {

namespace {

constexpr int kLanes = 2;

/// Two 64-bit lanes; unsigned compares are native here, the eviction bound
/// only keeps 3v+1 inside 64 bits. Mirrors the packed x86 sweep lane for
/// lane: clamped lane-side thresholds, exact re-checks on retirement.
template <bool kShortcut>
void sweep_lanes(const Request& req, u64 lane_lo, u64 lane_hi, Accumulator& acc,
                 Outcome* per_start) {
  const bool assume = req.assume_below != 0;
  const u64 ab64 = assume ? static_cast<u64>(std::min<u128>(
                                req.assume_below, kLaneEvictBound))
                          : 0;
  const u64 lane_limit = std::min(req.step_limit, u64{1} << 62);

  u64 vals[kLanes];
  u64 stepsArr[kLanes];
  u64 peaksArr[kLanes];
  u64 activeArr[kLanes];
  u64 starts[kLanes];
  bool active[kLanes] = {false, false};

  u64 cursor = lane_lo;
  bool exhausted = lane_lo > lane_hi;
  int live = 0;

  auto refill = [&](int lane) {
    if (!exhausted) {
      starts[lane] = cursor;
      vals[lane] = cursor;
      stepsArr[lane] = 0;
      peaksArr[lane] = cursor;
      active[lane] = true;
      ++live;
      if (cursor == lane_hi)
        exhausted = true;
      else
        ++cursor;
    } else {
      vals[lane] = 1;
      active[lane] = false;
    }
  };

  auto retire = [&](int lane) {
    u64 x = vals[lane];
    Outcome o;
    if (x == 1) {
      o = Outcome{stepsArr[lane], peaksArr[lane], true};
    } else if (assume && x < req.assume_below) {
      o = Outcome{stepsArr[lane], peaksArr[lane], true};
    } else if (stepsArr[lane] >= req.step_limit) {
      o = Outcome{stepsArr[lane], peaksArr[lane], false};
    } else {
      o = resume_scalar(x, stepsArr[lane], peaksArr[lane], req);
    }
    acc.note(starts[lane], o);
    if (per_start)
      per_start[static_cast<std::size_t>(starts[lane] - req.lo)] = o;
    active[lane] = false;
    --live;
    refill(lane);
  };

  for (int lane = 0; lane < kLanes; ++lane) refill(lane);

  const uint64x2_t one = vdupq_n_u64(1);
  const uint64x2_t evict = vdupq_n_u64(kLaneEvictBound);
  const uint64x2_t limit = vdupq_n_u64(lane_limit);
  const uint64x2_t ab_vec = vdupq_n_u64(ab64);

  uint64x2_t v = vld1q_u64(vals);
  uint64x2_t st = vld1q_u64(stepsArr);
  uint64x2_t pk = vld1q_u64(peaksArr);
  auto load_active = [&] {
    for (int lane = 0; lane < kLanes; ++lane)
      activeArr[lane] = active[lane] ? ~u64{0} : 0;
    return vld1q_u64(activeArr);
  };
  uint64x2_t activev = load_active();

  while (live > 0) {
    uint64x2_t done = vceqq_u64(v, one);
    uint64x2_t over = vcgeq_u64(v, evict);
    uint64x2_t spent = vcgeq_u64(st, limit);
    uint64x2_t below = assume ? vcltq_u64(v, ab_vec) : vdupq_n_u64(0);
    uint64x2_t stop = vandq_u64(
        vorrq_u64(vorrq_u64(done, over), vorrq_u64(spent, below)), activev);
    if (vgetq_lane_u64(stop, 0) != 0 || vgetq_lane_u64(stop, 1) != 0) {
      vst1q_u64(vals, v);
      vst1q_u64(stepsArr, st);
      vst1q_u64(peaksArr, pk);
      u64 stopArr[kLanes];
      vst1q_u64(stopArr, stop);
      for (int lane = 0; lane < kLanes; ++lane)
        if (stopArr[lane] != 0) retire(lane);
      if (live == 0) break;
      v = vld1q_u64(vals);
      st = vld1q_u64(stepsArr);
      pk = vld1q_u64(peaksArr);
      activev = load_active();
    }

    uint64x2_t oddmask = vceqq_u64(vandq_u64(v, one), one);
    uint64x2_t t = vaddq_u64(vaddq_u64(v, v), vaddq_u64(v, one));  // 3v + 1
    uint64x2_t odd_next = kShortcut ? vshrq_n_u64(t, 1) : t;
    uint64x2_t even_next = vshrq_n_u64(v, 1);
    uint64x2_t next = vbslq_u64(oddmask, odd_next, even_next);
    v = vbslq_u64(activev, next, v);
    st = vaddq_u64(st, vandq_u64(activev, one));
    uint64x2_t higher = vandq_u64(vcgtq_u64(v, pk), activev);
    pk = vbslq_u64(higher, v, pk);
  }
}

template <bool kShortcut>
void sweep(const Request& req, Accumulator& acc, Outcome* per_start) {
  u128 lane_hi_wide = std::min<u128>(req.hi, u128{kLaneEvictBound} - 1);
  if (req.lo <= lane_hi_wide)
    sweep_lanes<kShortcut>(req, static_cast<u64>(req.lo),
                           static_cast<u64>(lane_hi_wide), acc, per_start);
  for (u128 start = std::max<u128>(req.lo, kLaneEvictBound); start <= req.hi;
       ++start) {
    Outcome o = resume_scalar(start, 0, start, req);
    acc.note(start, o);
    if (per_start) per_start[static_cast<std::size_t>(start - req.lo)] = o;
    if (start == kU128Max) break;
  }
}

void neon_kernel(const Request& req, Accumulator& acc, Outcome* per_start) {
  if (req.variant == MapVariant::kShortcut)
    sweep<true>(req, acc, per_start);
  else
    sweep<false>(req, acc, per_start);
}

}  // namespace

Fn neon_kernel_fn() { return &neon_kernel; }

}  // namespace arbor::kernel

#endif  // ARBOR_HAVE_NEON
