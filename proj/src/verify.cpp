#include "arbor/verify.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

#include "arbor/kernels.hpp"

namespace arbor {

namespace {

/// Arbitrary-precision sweep used when bigint mode is on: same aggregation
/// rules as the packed kernels, Value arithmetic throughout.
struct ValueAccumulator {
  u64 scanned = 0;
  u64 max_steps = 0;
  Value max_steps_start;
  Value max_peak;
  Value max_peak_start;
  std::vector<Value> failures;

  void note(const Value& start, u64 steps, const Value& peak, bool converged) {
    ++scanned;
    if (!converged) failures.push_back(start);
    if (max_steps_start.is_zero() || steps > max_steps ||
        (steps == max_steps && start < max_steps_start)) {
      max_steps = steps;
      max_steps_start = start;
    }
    if (max_peak_start.is_zero() || peak > max_peak ||
        (peak == max_peak && start < max_peak_start)) {
      max_peak = peak;
      max_peak_start = start;
    }
  }

  void merge(const ValueAccumulator& other) {
    scanned += other.scanned;
    failures.insert(failures.end(), other.failures.begin(),
                    other.failures.end());
    if (!other.max_steps_start.is_zero() &&
        (max_steps_start.is_zero() || other.max_steps > max_steps ||
         (other.max_steps == max_steps &&
          other.max_steps_start < max_steps_start))) {
      max_steps = other.max_steps;
      max_steps_start = other.max_steps_start;
    }
    if (!other.max_peak_start.is_zero() &&
        (max_peak_start.is_zero() || other.max_peak > max_peak ||
         (other.max_peak == max_peak &&
          other.max_peak_start < max_peak_start))) {
      max_peak = other.max_peak;
      max_peak_start = other.max_peak_start;
    }
  }
};

void value_sweep(const Value& lo, const Value& hi, const Value& assume_below,
                 MapVariant variant, u64 step_limit, ValueAccumulator& acc) {
  const Value one{1};
  const bool assume = !assume_below.is_zero();
  for (Value start = lo; start <= hi; start += one) {
    Value v = start;
    Value peak = start;
    u64 steps = 0;
    bool converged = false;
    for (;;) {
      if (v == one || (assume && v < assume_below)) {
        converged = true;
        break;
      }
      if (steps >= step_limit) break;
      v = step(v, variant);
      ++steps;
      if (v > peak) peak = v;
    }
    acc.note(start, steps, peak, converged);
  }
}

}  // namespace

VerifyReport batch_verify(const Value& lo, const Value& hi,
                          const VerifyOptions& opts) {
  if (lo.is_zero()) throw DomainError("verify requires lo >= 1");
  if (hi < lo) throw DomainError("verify requires lo <= hi");
  if (opts.shards < 1) throw DomainError("verify requires shards >= 1");
  if (opts.step_limit < 1) throw DomainError("verify requires step_limit >= 1");

  VerifyReport report;
  report.lo = lo;
  report.hi = hi;
  report.variant = opts.variant;
  report.step_limit = opts.step_limit;

  auto t0 = std::chrono::steady_clock::now();

  if (!bigint_enabled()) {
    kernel::Fn fn = opts.force_scalar ? kernel::scalar_fn() : kernel::best_fn();
    report.kernel = opts.force_scalar ? "scalar" : kernel::best_name();

    u128 lo128 = lo.as_u128();
    u128 hi128 = hi.as_u128();
    u128 width = hi128 - lo128 + 1;
    u128 shard_count = std::min<u128>(opts.shards, width);
    report.shards = static_cast<unsigned>(shard_count);

    std::vector<kernel::Accumulator> accs(static_cast<std::size_t>(shard_count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(shard_count));
    std::vector<std::thread> workers;
    for (u128 i = 0; i < shard_count; ++i) {
      u128 s_lo = lo128 + width / shard_count * i +
                  std::min<u128>(i, width % shard_count);
      u128 s_len = width / shard_count + (i < width % shard_count ? 1 : 0);
      kernel::Request req;
      req.lo = s_lo;
      req.hi = s_lo + s_len - 1;
      req.variant = opts.variant;
      req.step_limit = opts.step_limit;
      req.assume_below = opts.assume_below ? lo128 : 0;
      std::size_t idx = static_cast<std::size_t>(i);
      workers.emplace_back([fn, req, &accs, &errors, idx] {
        try {
          fn(req, accs[idx], nullptr);
        } catch (...) {
          errors[idx] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);

    kernel::Accumulator total;
    for (auto& a : accs) total.merge(a);
    total.finalize();

    report.all_converged = total.failures.empty();
    report.checked = total.scanned;
    report.max_steps = total.max_steps;
    report.max_steps_start = Value(total.max_steps_start);
    report.max_peak = Value(total.max_peak);
    report.max_peak_start = Value(total.max_peak_start);
    report.failures.reserve(total.failures.size());
    for (u128 f : total.failures) report.failures.emplace_back(f);
  } else {
    report.kernel = "bigint";
    Value width = hi - lo + Value(1);
    u64 shard_count = opts.shards;
    if (width < Value(u64{shard_count})) shard_count = width.as_u64();
    report.shards = static_cast<unsigned>(shard_count);
    Value assume = opts.assume_below ? lo : Value(0);

    std::vector<ValueAccumulator> accs(shard_count);
    std::vector<std::exception_ptr> errors(shard_count);
    std::vector<std::thread> workers;
    auto [base, extra] = width.divmod_u64(shard_count);
    Value s_lo = lo;
    for (u64 i = 0; i < shard_count; ++i) {
      Value s_len = base + Value(i < extra ? u64{1} : u64{0});
      Value s_hi = s_lo + s_len - Value(1);
      std::size_t idx = static_cast<std::size_t>(i);
      workers.emplace_back([s_lo, s_hi, assume, &opts, &accs, &errors, idx] {
        try {
          value_sweep(s_lo, s_hi, assume, opts.variant, opts.step_limit,
                      accs[idx]);
        } catch (...) {
          errors[idx] = std::current_exception();
        }
      });
      s_lo = s_hi + Value(1);
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);

    ValueAccumulator total;
    for (auto& a : accs) total.merge(a);
    std::sort(total.failures.begin(), total.failures.end());

    report.all_converged = total.failures.empty();
    report.checked = total.scanned;
    report.max_steps = total.max_steps;
    report.max_steps_start = total.max_steps_start;
    report.max_peak = total.max_peak;
    report.max_peak_start = total.max_peak_start;
    report.failures = std::move(total.failures);
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace arbor
