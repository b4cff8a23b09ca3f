#include "arbor/core.hpp"

namespace arbor {

Value step(const Value& d, MapVariant variant) {
  if (d.is_zero()) throw DomainError("step requires d >= 1");
  if (d.is_even()) return d >> 1;
  Value t = d * Value(3) + Value(1);
  if (variant == MapVariant::kShortcut) t >>= 1;
  return t;
}

Value iterate(Value d, u64 t, MapVariant variant) {
  if (d.is_zero()) throw DomainError("iterate requires d >= 1");
  for (u64 i = 0; i < t; ++i) d = step(d, variant);
  return d;
}

Trajectory trajectory(const Value& d, MapVariant variant, u64 step_limit) {
  if (d.is_zero()) throw DomainError("trajectory requires d >= 1");
  if (step_limit == 0) throw DomainError("step_limit must be >= 1");
  Trajectory t;
  t.start = d;
  t.peak = d;
  t.values.push_back(d);
  const Value one{1};
  while (t.values.back() != one && t.steps < step_limit) {
    Value next = step(t.values.back(), variant);
    if (next > t.peak) t.peak = next;
    t.values.push_back(std::move(next));
    ++t.steps;
  }
  t.terminated = t.values.back() == one;
  return t;
}

Value odd_ascent(const Value& D, unsigned n) {
  if (D.is_zero()) throw DomainError("odd_ascent requires D >= 1");
  if (D.is_even()) throw DomainError("odd_ascent requires an odd value");
  Value m = D + Value(1);
  if (n > 0 && m.trailing_zero_bits() < n)
    throw DomainError("2^n does not divide D+1");
  return (m >> n) * pow3(n) - Value(1);
}

}  // namespace arbor
