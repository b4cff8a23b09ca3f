#include "arbor/subtree.hpp"

namespace arbor {

EvenSubTree even_subtree_from_member(const Value& x) {
  if (x.is_zero()) throw DomainError("sub-tree member must be >= 1");
  ParentDecomposition params;
  if (x.is_odd()) {
    OddDecomposition dec = decompose_odd(x);
    params = ParentDecomposition{dec.N, std::move(dec.h)};
  } else {
    auto p = decompose_even_parent(x);
    if (!p) throw DomainError("even value " + x.str() + " is not parent-capable");
    params = std::move(*p);
  }
  EvenSubTree st;
  st.parent = compose_parent(params);
  st.children.reserve(params.N);
  for (unsigned i = 1; i <= params.N; ++i)
    st.children.push_back(compose_odd(OddDecomposition{i, params.N, params.h}));
  st.main_child = st.children.front();
  st.params = std::move(params);
  return st;
}

bool children_chain_check(const EvenSubTree& st) {
  if (st.children.empty()) return false;
  for (std::size_t i = st.children.size(); i-- > 1;) {
    if (step(st.children[i], MapVariant::kShortcut) != st.children[i - 1])
      return false;
  }
  return step(st.children.front(), MapVariant::kShortcut) == st.parent;
}

Value main_child(const ParentDecomposition& params) {
  return compose_odd(OddDecomposition{1, params.N, params.h});
}

OddSubTree odd_subtree(const Value& p, unsigned count) {
  if (p.is_zero()) throw DomainError("odd_subtree requires p >= 1");
  if (p.is_even()) throw DomainError("odd_subtree requires an odd parent");
  if (count < 1) throw DomainError("odd_subtree requires count >= 1");
  OddSubTree st;
  st.parent = p;
  st.cls = classify_odd(p);
  st.children.reserve(count);
  st.productive.reserve(count);
  Value c = p;
  for (unsigned b = 1; b <= count; ++b) {
    c <<= 1;
    st.children.push_back(c);
    st.productive.push_back(classify_even(c).parent_capable);
  }
  return st;
}

std::optional<Value> direct_odd_predecessor(const Value& e) {
  if (e.is_zero() || e.is_odd())
    throw DomainError("direct_odd_predecessor requires an even value");
  if (e.mod3() != 2) return std::nullopt;
  return ((e << 1) - Value(1)).exact_div(Value(3));
}

Value grandparent_of_parent(const Value& T) {
  if (T.is_zero() || T.is_odd())
    throw DomainError("grandparent_of_parent requires an even value");
  if (T.mod3() != 2)
    throw DomainError("even value " + T.str() + " is not parent-capable");
  return odd_part(T).odd;
}

}  // namespace arbor
