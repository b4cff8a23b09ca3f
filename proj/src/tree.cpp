#include "arbor/tree.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "arbor/core.hpp"
#include "arbor/subtree.hpp"

namespace arbor {

namespace {

constexpr u64 kBuildCap = u64{1} << 62;  // keeps 2v and parent math exact

/// Even parent of odd v (the value 3^N h - 1 over v's factorization),
/// computed by trading factors of 2 for factors of 3 in v + 1.
u64 even_parent_of_odd(u64 v) {
  u64 t = v + 1;
  while ((t & 1) == 0) t = t / 2 * 3;
  return t - 1;
}

const char* odd_class_name_u64(u64 odd) {
  switch (odd % 6) {
    case 5: return "M1";
    case 3: return "M3";
    default: return "M5";
  }
}

}  // namespace

const char* edge_kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kOddSubtree: return "odd-subtree";
    case EdgeKind::kEvenSubtree: return "even-subtree";
    case EdgeKind::kCycleBack: return "cycle-back";
  }
  throw DomainError("invalid edge kind");
}

bool TreeGraph::lookup(u64 v, unsigned& depth_out) const {
  if (v < 1 || v > bound_) return false;
  if (dense_) {
    u16 d = depth_dense_[v];
    if (d == kAbsent) return false;
    depth_out = d;
    return true;
  }
  auto it = depth_sparse_.find(v);
  if (it == depth_sparse_.end()) return false;
  depth_out = it->second;
  return true;
}

bool TreeGraph::contains(const Value& v) const {
  if (v.is_zero() || !v.fits_u64()) return false;
  unsigned d;
  return lookup(v.as_u64(), d);
}

unsigned TreeGraph::depth_of(const Value& v) const {
  unsigned d;
  if (v.is_zero() || !v.fits_u64() || !lookup(v.as_u64(), d))
    throw DomainError("value " + v.str() + " is not in the tree");
  return d;
}

std::optional<TreeGraph::ParentEdge> TreeGraph::parent_edge(
    const Value& child) const {
  if (!contains(child))
    throw DomainError("value " + child.str() + " is not in the tree");
  u64 v = child.as_u64();
  if (v == 1) return std::nullopt;
  if ((v & 1) == 0)
    return ParentEdge{Value(v / 2), EdgeKind::kOddSubtree};
  return ParentEdge{Value(even_parent_of_odd(v)), EdgeKind::kEvenSubtree};
}

u64 TreeGraph::edge_count() const {
  return node_count_ - 1 + (back_edge_ ? 1 : 0);
}

void TreeGraph::for_each_node(
    const std::function<void(u64, unsigned)>& fn) const {
  if (dense_) {
    for (u64 v = 1; v <= bound_; ++v)
      if (depth_dense_[v] != kAbsent) fn(v, depth_dense_[v]);
  } else {
    for (u64 v : sorted_nodes_) fn(v, depth_sparse_.at(v));
  }
}

TreeGraph build_tree(const ExpansionPolicy& policy) {
  if (policy.value_bound.is_zero())
    throw DomainError("value_bound must be >= 1");
  if (policy.depth_bound < 1) throw DomainError("depth_bound must be >= 1");
  if (policy.node_bound < 1) throw DomainError("node_bound must be >= 1");
  if (!policy.value_bound.fits_u64() || policy.value_bound.as_u64() > kBuildCap)
    throw DomainError("value_bound exceeds the supported in-memory range");

  TreeGraph g;
  g.bound_ = policy.value_bound.as_u64();
  g.value_bound_ = policy.value_bound;
  g.dense_ = g.bound_ + 1 <= policy.dense_limit;
  if (g.dense_) g.depth_dense_.assign(g.bound_ + 1, TreeGraph::kAbsent);
  const unsigned depth_bound = std::min(policy.depth_bound, kMaxTreeDepth);

  std::deque<std::pair<u64, unsigned>> queue;
  auto add = [&](u64 v, unsigned depth) {
    if (g.dense_)
      g.depth_dense_[v] = static_cast<u16>(depth);
    else
      g.depth_sparse_.emplace(v, static_cast<u16>(depth));
    ++g.node_count_;
    if (depth > g.max_depth_) g.max_depth_ = depth;
    queue.emplace_back(v, depth);
  };
  auto present = [&](u64 v) {
    unsigned d;
    return g.lookup(v, d);
  };
  // One generation attempt per candidate; a repeat lands in duplicates_.
  auto offer = [&](u64 v, unsigned depth) {
    if (v == 1) {
      g.back_edge_ = true;
      return true;
    }
    if (present(v)) {
      g.duplicates_.emplace_back(v);
      return true;
    }
    if (g.node_count_ >= policy.node_bound) {
      g.bounds_hit_ = true;
      return false;
    }
    add(v, depth);
    return true;
  };

  add(1, 0);
  while (!queue.empty() && !g.bounds_hit_) {
    auto [v, depth] = queue.front();
    queue.pop_front();
    if (depth + 1 > depth_bound) {
      g.bounds_hit_ = true;
      break;
    }
    if (2 * v <= g.bound_ && !offer(2 * v, depth + 1)) break;
    if ((v & 1) == 0 && (v + 1) % 3 == 0) {
      u64 t = v + 1;
      bool stopped = false;
      while ((t % 3) == 0) {
        t = t / 3 * 2;
        if (!offer(t - 1, depth + 1)) {
          stopped = true;
          break;
        }
      }
      if (stopped) break;
    }
  }

  if (!g.dense_) {
    g.sorted_nodes_.reserve(g.depth_sparse_.size());
    for (const auto& [v, d] : g.depth_sparse_) g.sorted_nodes_.push_back(v);
    std::sort(g.sorted_nodes_.begin(), g.sorted_nodes_.end());
  }
  std::sort(g.duplicates_.begin(), g.duplicates_.end());
  return g;
}

std::vector<Value> audit_uniqueness(const TreeGraph& tree) {
  return tree.duplicates();
}

Value forward_peak_bound(const Value& M) {
  if (M.is_zero()) throw DomainError("forward_peak_bound requires M >= 1");
  Value best{1};
  const Value one{1};
  for (Value d{1}; d <= M; d += one) {
    Trajectory t = trajectory(d, MapVariant::kShortcut);
    if (!t.terminated)
      throw DomainError("orbit of " + d.str() + " exceeded the step limit");
    if (t.peak > best) best = t.peak;
  }
  return best;
}

CoverageAudit audit_coverage(const TreeGraph& tree, const Value& M) {
  if (M.is_zero()) throw DomainError("audit_coverage requires M >= 1");
  CoverageAudit audit;
  audit.required_bound = forward_peak_bound(M);
  audit.value_bound_adequate = tree.value_bound() >= audit.required_bound;
  const Value one{1};
  for (Value d{1}; d <= M; d += one)
    if (!tree.contains(d)) audit.missing.push_back(d);
  return audit;
}

std::vector<GrandchildEntry> grandchild_block(const Value& G,
                                              unsigned productive_count) {
  if (productive_count < 1)
    throw DomainError("grandchild_block requires productive_count >= 1");
  OddClassification cls = classify_odd(G);
  if (cls.cls == OddClass::kM3)
    throw DomainError("flower " + G.str() + " has no productive children");
  std::vector<GrandchildEntry> entries;
  for (unsigned j = 1; j <= productive_count; ++j) {
    unsigned b = cls.cls == OddClass::kM1 ? 2 * j : 2 * j - 1;
    EvenSubTree st = even_subtree_from_member(G << b);
    for (unsigned i = 1; i <= st.params.N; ++i)
      entries.push_back(GrandchildEntry{j, i, st.children[i - 1]});
  }
  return entries;
}

namespace {

/// Buffered canonical writer; plain decimal via to_chars, LF only.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) { buf_.reserve(kFlush + 64); }
  ~JsonWriter() { flush(); }

  void text(const char* s) {
    buf_.append(s);
    maybe_flush();
  }
  void number(u64 v) {
    char tmp[20];
    auto [p, ec] = std::to_chars(tmp, tmp + sizeof(tmp), v);
    (void)ec;
    buf_.append(tmp, p);
    maybe_flush();
  }
  void flush() {
    os_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }

 private:
  static constexpr std::size_t kFlush = std::size_t{1} << 20;
  void maybe_flush() {
    if (buf_.size() >= kFlush) flush();
  }
  std::ostream& os_;
  std::string buf_;
};

void write_node(JsonWriter& w, u64 v, unsigned depth, bool first) {
  w.text(first ? "{\"value\":" : ",{\"value\":");
  w.number(v);
  w.text(",\"parity\":");
  w.text((v & 1) ? "\"odd\"" : "\"even\"");
  w.text(",\"class\":\"");
  u64 odd = v;
  while ((odd & 1) == 0) odd >>= 1;
  w.text(odd_class_name_u64(odd));
  w.text("\",\"depth\":");
  w.number(depth);
  w.text("}");
}

void write_edge(JsonWriter& w, u64 child, u64 parent, EdgeKind kind,
                bool first) {
  w.text(first ? "{\"child\":" : ",{\"child\":");
  w.number(child);
  w.text(",\"parent\":");
  w.number(parent);
  w.text(",\"kind\":\"");
  w.text(edge_kind_name(kind));
  w.text("\"}");
}

}  // namespace

void export_json(const TreeGraph& tree, std::ostream& os) {
  JsonWriter w(os);
  w.text("{\"nodes\":[");
  bool first = true;
  tree.for_each_node([&](u64 v, unsigned depth) {
    write_node(w, v, depth, first);
    first = false;
  });
  w.text("],\"edges\":[");
  first = true;
  if (tree.has_back_edge()) {
    write_edge(w, 1, 2, EdgeKind::kCycleBack, first);
    first = false;
  }
  tree.for_each_node([&](u64 v, unsigned) {
    if (v == 1) return;
    EdgeKind kind = (v & 1) == 0 ? EdgeKind::kOddSubtree : EdgeKind::kEvenSubtree;
    u64 parent = (v & 1) == 0 ? v / 2 : even_parent_of_odd(v);
    write_edge(w, v, parent, kind, first);
    first = false;
  });
  w.text("]}\n");
  w.flush();
}

std::string export_json(const TreeGraph& tree) {
  std::ostringstream os;
  export_json(tree, os);
  return os.str();
}

std::string render_dot(const TreeGraph& tree) {
  std::string out;
  out += "digraph reverse_tree {\n";
  out += "  node [shape=circle];\n";
  tree.for_each_node([&](u64 v, unsigned) {
    out += "  \"";
    out += std::to_string(v);
    out += "\"";
    if ((v & 1) == 0) {
      if ((v + 1) % 3 == 0)
        out += " [style=filled, fillcolor=black, fontcolor=white]";
      else
        out += " [style=filled, fillcolor=gray]";
    }
    out += ";\n";
  });
  tree.for_each_node([&](u64 v, unsigned) {
    if (v == 1) return;
    u64 parent = (v & 1) == 0 ? v / 2 : even_parent_of_odd(v);
    out += "  \"";
    out += std::to_string(v);
    out += "\" -> \"";
    out += std::to_string(parent);
    out += "\";\n";
  });
  if (tree.has_back_edge()) out += "  \"1\" -> \"2\" [style=dashed];\n";
  out += "}\n";
  return out;
}

}  // namespace arbor
