#include "arbor/cycles.hpp"

#include <algorithm>
#include <set>

namespace arbor {

TrivialCycleSearch search_trivial_cycles(unsigned b_max, unsigned n_max) {
  if (b_max < 1 || n_max < 1)
    throw DomainError("cycle search bounds must be >= 1");
  TrivialCycleSearch result;
  for (unsigned b = 1; b <= b_max; ++b) {
    Value numerator = pow2(b) - Value(1);
    for (unsigned n = 1; n <= n_max; ++n) {
      ++result.pairs_scanned;
      Value p2 = pow2(b + n);
      Value p3 = pow3(n);
      if (p2 <= p3) continue;
      ++result.positive_denominators;
      Value den = p2 - p3;
      if (!numerator.divisible_by(den)) continue;
      Value k = numerator.exact_div(den);
      if (k.is_even()) continue;
      Value child = (k << n) - Value(1);
      Value parent = child << b;
      if (iterate(child, n, MapVariant::kShortcut) != parent) continue;
      result.solutions.push_back(
          CycleSolution{b, n, std::move(k), std::move(child), std::move(parent)});
    }
  }
  return result;
}

EmpiricalCycleSearch search_cycles_empirical(const Value& limit,
                                             u64 step_limit) {
  if (limit.is_zero()) throw DomainError("cycle scan requires limit >= 1");
  if (step_limit == 0) throw DomainError("step_limit must be >= 1");
  EmpiricalCycleSearch result;
  std::set<Value> reported;
  const Value one{1};
  std::vector<Value> path;
  for (Value d{1}; d <= limit; d += one) {
    path.clear();
    path.push_back(d);
    Value v = d;
    bool resolved = false;
    for (u64 s = 0; s < step_limit; ++s) {
      v = step(v, MapVariant::kShortcut);
      if (v < d) {
        resolved = true;
        break;
      }
      auto hit = std::find(path.begin(), path.end(), v);
      if (hit != path.end()) {
        std::vector<Value> cycle(hit, path.end());
        bool through_one = std::find(cycle.begin(), cycle.end(), one) != cycle.end();
        if (!through_one) {
          auto min_it = std::min_element(cycle.begin(), cycle.end());
          std::rotate(cycle.begin(), min_it, cycle.end());
          if (reported.insert(cycle.front()).second)
            result.cycles.push_back(FoundCycle{d, std::move(cycle)});
        }
        resolved = true;
        break;
      }
      path.push_back(v);
    }
    if (!resolved) result.step_limit_hit.push_back(d);
  }
  return result;
}

}  // namespace arbor
