#pragma once

#include <optional>
#include <vector>

#include "arbor/core.hpp"
#include "arbor/decompose.hpp"
#include "arbor/subtree.hpp"

namespace arbor {

enum class ExponentParity { kOdd, kEven };

/// Exponent parity demanded by an odd value's class when stacking a main
/// child above it: M1 takes odd exponents (b = 2m+1), M5 even (b = 2m).
/// M3 is a flower and admits none (nullopt).
std::optional<ExponentParity> next_exponent_parity(const Value& p);

/// Main children stacked row by row above an odd base G. Row j holds
/// values[j] = (2^exponents[j] * prev - 1) / 3 with prev the previous row
/// (the base for j = 0); every division is exact by construction.
struct MainChildChain {
  Value base;
  std::vector<unsigned> exponents;
  std::vector<Value> values;
};

/// Builds the chain from row indices m (each >= 1). Each m is widened to an
/// exponent of the parity demanded by the previous row's class. Throws if
/// the base is a flower or a flower interrupts the chain.
MainChildChain mc_chain(const Value& G, const std::vector<unsigned>& m);

/// The closed form over raw exponents b1..bJ:
/// (2^(b1+..+bJ) G - sum_{u=1..J} 3^(u-1) 2^(b_{u+1}+..+b_J)) / 3^J.
/// The division is exact precisely when the exponent vector is valid.
Value mc_closed_form(const Value& G, const std::vector<unsigned>& b);

/// True iff every row iterates back down to the previous one in exactly its
/// exponent's number of shortcut steps.
bool verify_descent(const MainChildChain& chain);

/// Exact comparison main_child(params) >= compose_parent(params) / 2^b,
/// evaluated by cross-multiplication. Holds for every valid input; equality
/// needs N = h = 1 with 2^b matching the parent.
bool grandparent_inequality(const ParentDecomposition& params, unsigned b);

}  // namespace arbor
