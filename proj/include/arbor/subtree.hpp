#pragma once

#include <optional>
#include <vector>

#include "arbor/core.hpp"
#include "arbor/decompose.hpp"

namespace arbor {

/// An even parent T = 3^N h - 1 with its N odd children in decreasing order:
/// children[i-1] = 2^i 3^(N-i) h - 1. children.front() is the main child,
/// the last odd value before the parent.
struct EvenSubTree {
  Value parent;
  ParentDecomposition params;
  std::vector<Value> children;
  Value main_child;
};

/// An odd parent p with even children p*2^b for b = 1..count.
/// productive[i] marks children that are parent-capable.
struct OddSubTree {
  Value parent;
  OddClassification cls;
  std::vector<Value> children;
  std::vector<bool> productive;
};

/// Recovers the whole even sub-tree from any member: an odd child or the
/// parent-capable even parent itself. Rejects evens that are not parents.
EvenSubTree even_subtree_from_member(const Value& x);

/// True iff each child steps to the previous one and the first child steps
/// to the parent under the shortcut map.
bool children_chain_check(const EvenSubTree& st);

/// The child with n = 1: 2 * 3^(N-1) h - 1, equal to (2T - 1) / 3.
Value main_child(const ParentDecomposition& params);

/// The first `count` even children of odd p with productivity flags.
OddSubTree odd_subtree(const Value& p, unsigned count);

/// The odd value stepping directly to even e: (2e - 1) / 3 when e is
/// 2 mod 3, nullopt otherwise. Rejects odd input.
std::optional<Value> direct_odd_predecessor(const Value& e);

/// The odd value reached from parent-capable T by repeated halving.
Value grandparent_of_parent(const Value& T);

}  // namespace arbor
