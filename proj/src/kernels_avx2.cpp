#include "arbor/kernels.hpp"

#if defined(ARBOR_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>

namespace arbor::kernel {

namespace {

constexpr int kLanes = 4;

/// Four 64-bit lanes. Lane values stay below 2^63 (starts sit below 2^61 and
/// one step at most triples before the eviction check fires), so signed
/// comparisons are exact throughout. Lane-side step limit and assume
/// thresholds may be clamped; the retire path re-checks the exact rules and
/// hands anything unresolved to the scalar continuation.
template <bool kShortcut>
void sweep_lanes(const Request& req, u64 lane_lo, u64 lane_hi, Accumulator& acc,
                 Outcome* per_start) {
  const bool assume = req.assume_below != 0;
  const u64 ab64 = assume ? static_cast<u64>(std::min<u128>(
                                req.assume_below, kLaneEvictBound))
                          : 0;
  const u64 lane_limit = std::min(req.step_limit, u64{1} << 62);

  alignas(32) u64 vals[kLanes];
  alignas(32) u64 stepsArr[kLanes];
  alignas(32) u64 peaksArr[kLanes];
  alignas(32) u64 activeArr[kLanes];
  u64 starts[kLanes];
  bool active[kLanes] = {false, false, false, false};

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
      vals[lane] = 1;  // idle lanes coast harmlessly between 1 and 2
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

  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i evict_edge
      = _mm256_set1_epi64x(static_cast<long long>(kLaneEvictBound - 1));
  const __m256i limit_edge
      = _mm256_set1_epi64x(static_cast<long long>(lane_limit - 1));
  const __m256i ab_vec = _mm256_set1_epi64x(static_cast<long long>(ab64));

  __m256i v = _mm256_load_si256(reinterpret_cast<const __m256i*>(vals));
  __m256i st = _mm256_load_si256(reinterpret_cast<const __m256i*>(stepsArr));
  __m256i pk = _mm256_load_si256(reinterpret_cast<const __m256i*>(peaksArr));
  auto load_active = [&] {
    for (int lane = 0; lane < kLanes; ++lane)
      activeArr[lane] = active[lane] ? ~u64{0} : 0;
    return _mm256_load_si256(reinterpret_cast<const __m256i*>(activeArr));
  };
  __m256i activev = load_active();

  while (live > 0) {
    __m256i done = _mm256_cmpeq_epi64(v, one);
    __m256i over = _mm256_cmpgt_epi64(v, evict_edge);
    __m256i spent = _mm256_cmpgt_epi64(st, limit_edge);
    __m256i below = assume ? _mm256_cmpgt_epi64(ab_vec, v)
                           : _mm256_setzero_si256();
    __m256i stop = _mm256_and_si256(
        _mm256_or_si256(_mm256_or_si256(done, over),
                        _mm256_or_si256(spent, below)),
        activev);
    if (_mm256_movemask_epi8(stop) != 0) {
      _mm256_store_si256(reinterpret_cast<__m256i*>(vals), v);
      _mm256_store_si256(reinterpret_cast<__m256i*>(stepsArr), st);
      _mm256_store_si256(reinterpret_cast<__m256i*>(peaksArr), pk);
      alignas(32) u64 stopArr[kLanes];
      _mm256_store_si256(reinterpret_cast<__m256i*>(stopArr), stop);
      for (int lane = 0; lane < kLanes; ++lane)
        if (stopArr[lane] != 0) retire(lane);
      if (live == 0) break;
      v = _mm256_load_si256(reinterpret_cast<const __m256i*>(vals));
      st = _mm256_load_si256(reinterpret_cast<const __m256i*>(stepsArr));
      pk = _mm256_load_si256(reinterpret_cast<const __m256i*>(peaksArr));
      activev = load_active();
    }

    __m256i oddmask = _mm256_cmpeq_epi64(_mm256_and_si256(v, one), one);
    __m256i t = _mm256_add_epi64(_mm256_add_epi64(v, v),
                                 _mm256_add_epi64(v, one));  // 3v + 1
    __m256i odd_next = kShortcut ? _mm256_srli_epi64(t, 1) : t;
    __m256i even_next = _mm256_srli_epi64(v, 1);
    __m256i next = _mm256_blendv_epi8(even_next, odd_next, oddmask);
    v = _mm256_blendv_epi8(v, next, activev);
    st = _mm256_add_epi64(st, _mm256_and_si256(activev, one));
    __m256i higher = _mm256_and_si256(_mm256_cmpgt_epi64(v, pk), activev);
    pk = _mm256_blendv_epi8(pk, v, higher);
  }
}

template <bool kShortcut>
void sweep(const Request& req, Accumulator& acc, Outcome* per_start) {
  u128 lane_hi_wide = std::min<u128>(req.hi, u128{kLaneEvictBound} - 1);
  if (req.lo <= lane_hi_wide)
    sweep_lanes<kShortcut>(req, static_cast<u64>(req.lo),
                           static_cast<u64>(lane_hi_wide), acc, per_start);
  // Starts at or above the lane bound run on the scalar path directly.
  for (u128 start = std::max<u128>(req.lo, kLaneEvictBound); start <= req.hi;
       ++start) {
    Outcome o = resume_scalar(start, 0, start, req);
    acc.note(start, o);
    if (per_start) per_start[static_cast<std::size_t>(start - req.lo)] = o;
    if (start == kU128Max) break;
  }
}

void avx2_kernel(const Request& req, Accumulator& acc, Outcome* per_start) {
  if (req.variant == MapVariant::kShortcut)
    sweep<true>(req, acc, per_start);
  else
    sweep<false>(req, acc, per_start);
}

}  // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2"); }
Fn avx2_kernel_fn() { return &avx2_kernel; }

}  // namespace arbor::kernel

#endif  // ARBOR_HAVE_AVX2
