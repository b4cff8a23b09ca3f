#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/decompose.hpp"

namespace arbor {

inline constexpr unsigned kMaxTreeDepth = 65534;

/// Bounds for reverse expansion; the full tree is infinite, so expansion
/// stops when any bound trips.
struct ExpansionPolicy {
  Value value_bound;
  unsigned depth_bound = kMaxTreeDepth;
  u64 node_bound = ~u64{0};
  /// Storage tuning: bounds up to this use a flat depth array, larger ones a
  /// hash map. Results are identical either way.
  u64 dense_limit = u64{1} << 26;
};

enum class EdgeKind { kOddSubtree, kEvenSubtree, kCycleBack };

const char* edge_kind_name(EdgeKind kind);

/// The reverse tree grown from root 1. Parent edges are a function of the
/// value alone: an even child halves to its parent, an odd child points at
/// the even parent of its sub-tree, and the root carries the single marked
/// back-edge 1 -> 2 closing the ignored 1-2 loop. Only depths are stored.
class TreeGraph {
 public:
  struct ParentEdge {
    Value parent;
    EdgeKind kind;
  };

  bool contains(const Value& v) const;
  unsigned depth_of(const Value& v) const;  // rejects absent values
  /// nullopt for the root; every other contained value has exactly one.
  std::optional<ParentEdge> parent_edge(const Value& child) const;
  bool has_back_edge() const { return contains(Value(2)); }

  u64 node_count() const { return node_count_; }
  u64 edge_count() const;  // tree edges plus the back-edge
  unsigned max_depth() const { return max_depth_; }
  const Value& value_bound() const { return value_bound_; }
  /// Values a second expansion path tried to add; empty on a sound build.
  const std::vector<Value>& duplicates() const { return duplicates_; }
  bool bounds_hit() const { return bounds_hit_; }

  /// Visits every node in ascending value order.
  void for_each_node(
      const std::function<void(u64 value, unsigned depth)>& fn) const;

 private:
  friend TreeGraph build_tree(const ExpansionPolicy& policy);

  static constexpr u16 kAbsent = 0xFFFF;

  bool lookup(u64 v, unsigned& depth_out) const;

  u64 bound_ = 0;
  Value value_bound_;
  bool dense_ = true;
  std::vector<u16> depth_dense_;
  std::unordered_map<u64, u16> depth_sparse_;
  std::vector<u64> sorted_nodes_;  // sparse mode only
  u64 node_count_ = 0;
  unsigned max_depth_ = 0;
  bool back_edge_ = false;
  bool bounds_hit_ = false;
  std::vector<Value> duplicates_;
};

/// Breadth-first reverse expansion from 1 under the policy's bounds.
/// Every node doubles into its even child; every parent-capable even node
/// adds its odd sub-tree children; child 1 of parent 2 becomes the marked
/// back-edge instead of a node.
TreeGraph build_tree(const ExpansionPolicy& policy);

/// Values a second expansion path reached; expected empty.
std::vector<Value> audit_uniqueness(const TreeGraph& tree);

struct CoverageAudit {
  std::vector<Value> missing;  // integers in [1, M] absent from the tree
  /// False when the tree's value bound is below the forward-peak bound of
  /// [1, M]; missing values are then expected rather than violations.
  bool value_bound_adequate = false;
  Value required_bound;
};

CoverageAudit audit_coverage(const TreeGraph& tree, const Value& M);

/// Maximum forward-orbit peak over all starts in [1, M]: the smallest
/// adequate tree value bound for full coverage of [1, M].
Value forward_peak_bound(const Value& M);

struct GrandchildEntry {
  unsigned j = 0;  // index of the productive child
  unsigned i = 0;  // position within that child's sub-tree
  Value value;
};

/// Odd grandchildren above G: for the first productive_count productive
/// children of G, every odd child of each. Rejects flowers.
std::vector<GrandchildEntry> grandchild_block(const Value& G,
                                              unsigned productive_count);

/// Deterministic DOT rendering: parent-capable evens filled black, other
/// evens gray, odds unfilled, the back-edge dashed.
std::string render_dot(const TreeGraph& tree);

/// Canonical JSON: ascending node array {value, parity, class, depth} and
/// ascending-by-child edge array {child, parent, kind}. Byte-stable for a
/// given tree.
void export_json(const TreeGraph& tree, std::ostream& os);
std::string export_json(const TreeGraph& tree);

}  // namespace arbor
