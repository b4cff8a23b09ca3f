#include "arbor/decompose.hpp"

namespace arbor {

namespace {

/// Strips factors of 3, returning the count. v must be >= 1.
unsigned strip_threes(Value& v) {
  unsigned count = 0;
  for (;;) {
    auto [q, r] = v.divmod_u64(3);
    if (r != 0) return count;
    v = std::move(q);
    ++count;
  }
}

}  // namespace

const char* odd_class_name(OddClass cls) {
  switch (cls) {
    case OddClass::kM1: return "M1";
    case OddClass::kM3: return "M3";
    case OddClass::kM5: return "M5";
  }
  throw DomainError("invalid odd class");
}

OddDecomposition decompose_odd(const Value& D) {
  if (D.is_zero()) throw DomainError("decompose_odd requires D >= 1");
  if (D.is_even()) throw DomainError("decompose_odd requires an odd value");
  Value m = D + Value(1);
  unsigned n = m.trailing_zero_bits();
  Value h = m >> n;
  unsigned v3 = strip_threes(h);
  return OddDecomposition{n, n + v3, std::move(h)};
}

Value compose_odd(const OddDecomposition& dec) {
  if (dec.n < 1 || dec.N < dec.n)
    throw DomainError("compose_odd requires 1 <= n <= N");
  if (dec.h.is_zero() || dec.h.is_even())
    throw DomainError("compose_odd requires odd h >= 1");
  if (dec.h.mod3() == 0) throw DomainError("compose_odd requires 3 coprime h");
  return (pow3(dec.N - dec.n) * dec.h << dec.n) - Value(1);
}

std::optional<ParentDecomposition> decompose_even_parent(const Value& T) {
  if (T.is_zero() || T.is_odd())
    throw DomainError("decompose_even_parent requires an even value");
  if (T.mod3() != 2) return std::nullopt;
  Value h = T + Value(1);
  unsigned N = strip_threes(h);
  return ParentDecomposition{N, std::move(h)};
}

Value compose_parent(const ParentDecomposition& dec) {
  if (dec.N < 1) throw DomainError("compose_parent requires N >= 1");
  if (dec.h.is_zero() || dec.h.is_even())
    throw DomainError("compose_parent requires odd h >= 1");
  if (dec.h.mod3() == 0)
    throw DomainError("compose_parent requires 3 coprime h");
  return pow3(dec.N) * dec.h - Value(1);
}

OddClassification classify_odd(const Value& p) {
  if (p.is_zero()) throw DomainError("classify_odd requires p >= 1");
  if (p.is_even()) throw DomainError("classify_odd requires an odd value");
  unsigned r = p.mod6();
  OddClass cls = r == 5 ? OddClass::kM1 : (r == 3 ? OddClass::kM3 : OddClass::kM5);
  Value a = (p + Value(u64{6 - r})).divmod_u64(6).quotient;
  return OddClassification{cls, std::move(a)};
}

EvenForm classify_even(const Value& E) {
  if (E.is_zero() || E.is_odd())
    throw DomainError("classify_even requires an even value");
  OddPart part = odd_part(E);
  OddClassification cls = classify_odd(part.odd);
  bool capable = (cls.cls == OddClass::kM1 && part.exponent % 2 == 0) ||
                 (cls.cls == OddClass::kM5 && part.exponent % 2 == 1);
  return EvenForm{std::move(cls), part.exponent, capable};
}

OddPart odd_part(const Value& x) {
  if (x.is_zero()) throw DomainError("odd_part requires x >= 1");
  unsigned e = x.trailing_zero_bits();
  return OddPart{x >> e, e};
}

}  // namespace arbor
