#pragma once

#include <vector>

#include "arbor/core.hpp"

namespace arbor {

/// A solution of (2^(b+n) - 3^n) k = 2^b - 1 with k odd, realized by the
/// dynamics: child = 2^n k - 1 ascends to parent = 2^b * child in n shortcut
/// steps and the parent halves back down to the child.
struct CycleSolution {
  unsigned b = 0;
  unsigned n = 0;
  Value k;
  Value child;
  Value parent;
};

struct TrivialCycleSearch {
  std::vector<CycleSolution> solutions;
  u64 pairs_scanned = 0;
  u64 positive_denominators = 0;
};

/// Enumerates all (b, n) with 1 <= b <= b_max, 1 <= n <= n_max, keeping the
/// pairs whose denominator 2^(b+n) - 3^n is positive, divides 2^b - 1
/// exactly, and yields odd k. Every returned solution has been validated
/// against the dynamics.
TrivialCycleSearch search_trivial_cycles(unsigned b_max, unsigned n_max);

/// A forward-orbit cycle that does not pass through 1, canonicalized to
/// begin at its minimum element. start is the first scan origin that
/// exposed it.
struct FoundCycle {
  Value start;
  std::vector<Value> values;
};

struct EmpiricalCycleSearch {
  std::vector<FoundCycle> cycles;
  std::vector<Value> step_limit_hit;
};

/// Scans every start d <= limit under the shortcut map with revisit
/// detection. Orbits are abandoned once they drop below their start, since
/// smaller starts were scanned already; a cycle is therefore always caught
/// from its own minimum. Starts that exhaust step_limit are reported.
EmpiricalCycleSearch search_cycles_empirical(const Value& limit,
                                             u64 step_limit);

}  // namespace arbor
