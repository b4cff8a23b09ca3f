#include "arbor/chains.hpp"

namespace arbor {

std::optional<ExponentParity> next_exponent_parity(const Value& p) {
  switch (classify_odd(p).cls) {
    case OddClass::kM1: return ExponentParity::kOdd;
    case OddClass::kM5: return ExponentParity::kEven;
    case OddClass::kM3: return std::nullopt;
  }
  throw DomainError("invalid odd class");
}

MainChildChain mc_chain(const Value& G, const std::vector<unsigned>& m) {
  MainChildChain chain;
  chain.base = G;
  chain.exponents.reserve(m.size());
  chain.values.reserve(m.size());
  const Value* prev = &G;
  for (unsigned mi : m) {
    if (mi < 1) throw DomainError("chain indices must be >= 1");
    auto parity = next_exponent_parity(*prev);
    if (!parity)
      throw DomainError("flower " + prev->str() + " has no main child");
    unsigned b = *parity == ExponentParity::kOdd ? 2 * mi + 1 : 2 * mi;
    Value next = ((*prev << b) - Value(1)).exact_div(Value(3));
    chain.exponents.push_back(b);
    chain.values.push_back(std::move(next));
    prev = &chain.values.back();
  }
  return chain;
}

Value mc_closed_form(const Value& G, const std::vector<unsigned>& b) {
  if (G.is_zero() || G.is_even())
    throw DomainError("mc_closed_form requires an odd base");
  unsigned total = 0;
  for (unsigned bi : b) {
    if (bi < 1) throw DomainError("exponents must be >= 1");
    total += bi;
  }
  Value acc = G << total;
  unsigned suffix = total;
  for (std::size_t u = 1; u <= b.size(); ++u) {
    suffix -= b[u - 1];
    acc -= pow3(static_cast<unsigned>(u - 1)) << suffix;
  }
  return acc.exact_div(pow3(static_cast<unsigned>(b.size())));
}

bool verify_descent(const MainChildChain& chain) {
  const Value* prev = &chain.base;
  for (std::size_t j = 0; j < chain.values.size(); ++j) {
    if (iterate(chain.values[j], chain.exponents[j], MapVariant::kShortcut) !=
        *prev)
      return false;
    prev = &chain.values[j];
  }
  return true;
}

bool grandparent_inequality(const ParentDecomposition& params, unsigned b) {
  if (b < 1) throw DomainError("grandparent_inequality requires b >= 1");
  return (main_child(params) << b) >= compose_parent(params);
}

}  // namespace arbor
