#pragma once

#include <optional>

#include "arbor/value.hpp"

namespace arbor {

/// Unique factorization of an odd value D: D + 1 = 2^n * 3^(N-n) * h with
/// h odd and coprime to 3. n is the 2-adic valuation of D+1; it marks how
/// many ascent steps D sits above its even parent.
struct OddDecomposition {
  unsigned n = 1;
  unsigned N = 1;
  Value h;
};

/// Factorization of a parent-capable even value T: T + 1 = 3^N * h with
/// h odd and coprime to 3. Exists exactly when T is 2 mod 3.
struct ParentDecomposition {
  unsigned N = 1;
  Value h;
};

/// Residue class of an odd value: M1 = 6a-1, M3 = 6a-3, M5 = 6a-5.
/// M3 values are the flowers: nothing odd sits above them.
enum class OddClass { kM1, kM3, kM5 };

const char* odd_class_name(OddClass cls);

struct OddClassification {
  OddClass cls = OddClass::kM5;
  Value a;
};

/// An even value split as odd_part * 2^b. parent_capable follows the parity
/// rule: (M1 odd part and b even) or (M5 odd part and b odd), which is the
/// same as the value being 2 mod 3.
struct EvenForm {
  OddClassification odd_class;
  unsigned b = 1;
  bool parent_capable = false;
};

/// D odd -> {n, N, h}. Rejects even input.
OddDecomposition decompose_odd(const Value& D);

/// {n, N, h} -> 2^n 3^(N-n) h - 1. Validates the field invariants.
Value compose_odd(const OddDecomposition& dec);

/// T even -> {N, h} when T is 2 mod 3, nullopt otherwise ("not-parent").
/// Rejects odd input.
std::optional<ParentDecomposition> decompose_even_parent(const Value& T);

/// {N, h} -> 3^N h - 1. Validates the field invariants.
Value compose_parent(const ParentDecomposition& dec);

/// The unique (class, a) with p in {6a-1, 6a-3, 6a-5}. Rejects even input.
OddClassification classify_odd(const Value& p);

/// Odd part, exponent, class, and parent capability of an even value.
EvenForm classify_even(const Value& E);

struct OddPart {
  Value odd;
  unsigned exponent = 0;
};

/// x = odd * 2^exponent with odd odd. Defined for every x >= 1.
OddPart odd_part(const Value& x);

}  // namespace arbor
