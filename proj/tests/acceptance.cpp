// Acceptance gate: one self-contained check per release criterion, each
// timed against a pinned budget. Exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <streambuf>
#include <string>
#include <vector>

#include "arbor/chains.hpp"
#include "arbor/core.hpp"
#include "arbor/cycles.hpp"
#include "arbor/decompose.hpp"
#include "arbor/subtree.hpp"
#include "arbor/tree.hpp"
#include "arbor/value.hpp"
#include "arbor/verify.hpp"

namespace {

using namespace arbor;

#define EXPECT(cond, detail)                                       \
  do {                                                             \
    if (!(cond)) {                                                 \
      std::ostringstream why_os;                                   \
      why_os << detail;                                            \
      why = why_os.str();                                          \
      return false;                                                \
    }                                                              \
  } while (0)

bool values_equal(const std::vector<Value>& got, const std::vector<u64>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i] != Value(want[i])) return false;
  }
  return true;
}

std::string render_values(const std::vector<Value>& vs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i != 0) os << ',';
    os << vs[i];
  }
  return os.str();
}

// Worked examples, frozen bit-exactly.
bool crit_golden_examples(std::string& why) {
  OddDecomposition d = decompose_odd(Value(359));
  EXPECT(d.n == 3 && d.N == 5 && d.h == Value(5),
         "359 factored as n=" << d.n << " N=" << d.N << " h=" << d.h);

  EvenSubTree st = even_subtree_from_member(Value(359));
  EXPECT(st.parent == Value(1214), "parent of 359 = " << st.parent);
  EXPECT(values_equal(st.children, {809, 539, 359, 239, 159}),
         "children of 1214 = " << render_values(st.children));

  EvenSubTree st80 = even_subtree_from_member(Value(80));
  EXPECT(values_equal(st80.children, {53, 35, 23, 15}),
         "children of 80 = " << render_values(st80.children));

  Value climbed = iterate(Value(31), 5, MapVariant::kShortcut);
  EXPECT(climbed == Value(242), "iterate(31,5) = " << climbed);

  const std::vector<std::pair<u64, std::vector<u64>>> chain_rows = {
      {5, {13, 53, 213, 853}},
      {13, {17, 69, 277, 1109}},
      {277, {369, 1477, 5909, 23637}},
  };
  for (const auto& [base, expected] : chain_rows) {
    for (unsigned m = 1; m <= 4; ++m) {
      MainChildChain c = mc_chain(Value(base), {m});
      EXPECT(c.values.size() == 1 && c.values[0] == Value(expected[m - 1]),
             "chain row above " << base << " at m=" << m << " = "
                                << c.values.back());
    }
  }

  std::vector<GrandchildEntry> g = grandchild_block(Value(1), 4);
  std::vector<Value> gv;
  for (const GrandchildEntry& e : g) gv.push_back(e.value);
  EXPECT(values_equal(gv, {1, 5, 3, 21, 85}),
         "grandchildren of 1 = " << render_values(gv));
  EXPECT(g.size() == 5 && g[0].j == 1 && g[1].j == 2 && g[2].j == 2 &&
             g[3].j == 3 && g[4].j == 4,
         "grandchild rows of 1 misnumbered");
  return true;
}

// For every odd start below a million: the ascent to the even parent takes
// exactly n steps, the intermediate iterates are odd, and the closed-form
// ascent matches plain iteration at every prefix.
bool crit_odd_ascent_sweep(std::string& why) {
  for (u64 d = 1; d < 1000000; d += 2) {
    Value start(d);
    OddDecomposition dec = decompose_odd(start);
    Value parent = compose_parent(ParentDecomposition{dec.N, dec.h});
    Value v = start;
    for (unsigned k = 1; k <= dec.n; ++k) {
      v = step(v, MapVariant::kShortcut);
      if (k < dec.n) {
        EXPECT(v.is_odd(), "iterate " << k << " of " << d << " is even: " << v);
      }
      Value a = odd_ascent(start, k);
      EXPECT(a == v, "ascent of " << d << " at k=" << k << ": " << a
                                  << " != iterate " << v);
    }
    EXPECT(v == parent, "iterate " << dec.n << " of " << d << " = " << v
                                   << ", parent form gives " << parent);
  }
  return true;
}

// Parent capability of an even value: the parity-form rule, the residue
// test, and decomposition success must agree everywhere below a million.
bool crit_even_capability_sweep(std::string& why) {
  for (u64 e = 2; e < 1000000; e += 2) {
    Value x(e);
    bool by_form = classify_even(x).parent_capable;
    bool by_residue = e % 3 == 2;
    bool by_decompose = decompose_even_parent(x).has_value();
    EXPECT(by_form == by_residue && by_residue == by_decompose,
           e << ": form=" << by_form << " residue=" << by_residue
             << " decompose=" << by_decompose);
  }
  return true;
}

// The child-equals-own-grandparent equation has exactly one solution in the
// scanned exponent box, and no empirical cycle exists below a million.
bool crit_cycle_searches(std::string& why) {
  TrivialCycleSearch res = search_trivial_cycles(60, 60);
  EXPECT(res.solutions.size() == 1,
         res.solutions.size() << " solutions, expected 1");
  const CycleSolution& s = res.solutions[0];
  EXPECT(s.b == 1 && s.n == 1 && s.k == Value(1) && s.child == Value(1) &&
             s.parent == Value(2),
         "solution b=" << s.b << " n=" << s.n << " k=" << s.k
                       << " child=" << s.child << " parent=" << s.parent);

  EmpiricalCycleSearch emp = search_cycles_empirical(Value(1000000), 100000);
  EXPECT(emp.cycles.empty(), emp.cycles.size() << " empirical cycles found");
  EXPECT(emp.step_limit_hit.empty(),
         emp.step_limit_hit.size() << " starts exhausted the step budget");
  return true;
}

// Every parent-capable even value dominates its own odd part through the
// main child: main_child * 2^b >= parent, equality only at parent 2.
bool crit_grandparent_dominance(std::string& why) {
  u64 checked = 0;
  for (u64 t = 2; t < 1000000; t += 6) {  // even values congruent 2 mod 3
    Value parent(t);
    std::optional<ParentDecomposition> p = decompose_even_parent(parent);
    EXPECT(p.has_value(), t << " unexpectedly not parent-capable");
    unsigned b = parent.trailing_zero_bits();
    EXPECT(grandparent_inequality(*p, b),
           "dominance fails at parent " << t);
    bool tight = (main_child(*p) << b) == parent;
    EXPECT(tight == (t == 2),
           "equality at parent " << t << " (expected only at 2)");
    ++checked;
  }
  EXPECT(checked == u64{166667}, "checked " << checked << " parents");
  return true;
}

// Chain grid over all odd non-flower bases below one thousand: recursive
// and closed-form constructions agree, every row descends back in exactly
// its exponent's steps, and chains grow strictly in every index and in the
// base within a fixed exponent pattern.
bool crit_chain_grid(std::string& why) {
  auto try_final = [](u64 g,
                      const std::vector<unsigned>& ms) -> std::optional<Value> {
    try {
      MainChildChain c = mc_chain(Value(g), ms);
      return c.values.back();
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };

  std::map<std::vector<unsigned>, std::pair<u64, Value>> last_by_exponents;
  u64 checked = 0;
  for (u64 g = 1; g <= 999; g += 2) {
    if (g % 3 == 0) continue;
    std::vector<std::vector<unsigned>> grid = {{}};
    for (unsigned len = 1; len <= 3; ++len) {
      std::vector<std::vector<unsigned>> next;
      for (const auto& prefix : grid) {
        for (unsigned m = 1; m <= 3; ++m) {
          auto ms = prefix;
          ms.push_back(m);
          next.push_back(ms);
        }
      }
      grid = next;
      for (const auto& ms : next) {
        MainChildChain chain;
        try {
          chain = mc_chain(Value(g), ms);
        } catch (const DomainError&) {
          continue;  // a flower interrupted this vector
        }
        ++checked;
        Value closed = mc_closed_form(Value(g), chain.exponents);
        EXPECT(closed == chain.values.back(),
               "closed form above " << g << " = " << closed << ", recursion "
                                    << chain.values.back());
        EXPECT(verify_descent(chain), "descent fails above " << g);

        for (std::size_t i = 0; i < ms.size(); ++i) {
          auto bumped = ms;
          ++bumped[i];
          if (std::optional<Value> other = try_final(g, bumped)) {
            EXPECT(*other > chain.values.back(),
                   "no growth above " << g << " when index " << i + 1
                                      << " increases");
          }
        }

        auto [it, fresh] = last_by_exponents.try_emplace(
            chain.exponents, g, chain.values.back());
        if (!fresh) {
          EXPECT(it->second.second < chain.values.back(),
                 "no growth in base at " << g << " vs " << it->second.first
                                         << " for a shared exponent pattern");
          it->second = {g, chain.values.back()};
        }
      }
    }
  }
  EXPECT(checked > 5000, "grid only exercised " << checked << " chains");
  return true;
}

// Byte-compares a stream against a reference file without storing it.
class CompareBuf : public std::streambuf {
 public:
  explicit CompareBuf(const std::string& path) : ref_(path, std::ios::binary) {}

  bool ok() const { return equal_ && ref_.is_open(); }
  bool exhausted() { return ref_.peek() == std::ifstream::traits_type::eof(); }

 protected:
  int_type overflow(int_type c) override {
    if (c == traits_type::eof()) return c;
    char got = traits_type::to_char_type(c);
    char want = 0;
    if (!ref_.get(want) || want != got) equal_ = false;
    return c;
  }

  std::streamsize xsputn(const char* s, std::streamsize n) override {
    buf_.resize(static_cast<std::size_t>(n));
    if (!ref_.read(buf_.data(), n) || ref_.gcount() != n ||
        !std::equal(buf_.begin(), buf_.end(), s)) {
      equal_ = false;
    }
    return n;
  }

 private:
  std::ifstream ref_;
  std::vector<char> buf_;
  bool equal_ = true;
};

// Full tree for complete coverage of 1..10^4: bound at the forward peak,
// audit uniqueness and coverage, and demand a byte-identical export across
// two independent builds.
bool crit_tree_audits(std::string& why) {
  Value bound = forward_peak_bound(Value(10000));
  EXPECT(bound == Value(13557212), "forward peak bound = " << bound);

  const std::string ref_path = "/tmp/arbor_acceptance_export.json";
  ExpansionPolicy policy;
  policy.value_bound = bound;
  {
    TreeGraph tree = build_tree(policy);
    std::vector<Value> dups = audit_uniqueness(tree);
    EXPECT(dups.empty(), dups.size() << " duplicate expansions");
    CoverageAudit cov = audit_coverage(tree, Value(10000));
    EXPECT(cov.value_bound_adequate,
           "bound " << bound << " below required " << cov.required_bound);
    EXPECT(cov.missing.empty(), cov.missing.size() << " values uncovered");
    std::ofstream out(ref_path, std::ios::binary);
    EXPECT(out.good(), "cannot write " << ref_path);
    export_json(tree, out);
    EXPECT(out.good(), "export to " << ref_path << " failed");
  }
  bool identical = false;
  {
    TreeGraph tree = build_tree(policy);
    CompareBuf cmp(ref_path);
    std::ostream os(&cmp);
    export_json(tree, os);
    identical = cmp.ok() && cmp.exhausted();
  }
  std::remove(ref_path.c_str());
  EXPECT(identical, "two exports differ");
  return true;
}

// Whole-range convergence sweep to ten million, identical aggregates for
// one and for eight shards.
bool crit_batch_verify(std::string& why) {
  VerifyOptions opts;
  opts.shards = 1;
  VerifyReport one = batch_verify(Value(1), Value(10000000), opts);
  opts.shards = 8;
  VerifyReport eight = batch_verify(Value(1), Value(10000000), opts);

  EXPECT(one.all_converged && one.failures.empty(),
         one.failures.size() << " non-converging starts with 1 shard");
  EXPECT(eight.all_converged && eight.failures.empty(),
         eight.failures.size() << " non-converging starts with 8 shards");
  EXPECT(one.checked == u64{10000000} && eight.checked == u64{10000000},
         "checked " << one.checked << " / " << eight.checked);
  EXPECT(one.max_steps == eight.max_steps &&
             one.max_steps_start == eight.max_steps_start &&
             one.max_peak == eight.max_peak &&
             one.max_peak_start == eight.max_peak_start,
         "aggregates differ between shard counts");
  EXPECT(one.max_steps == 429 && one.max_steps_start == Value(8400511),
         "max steps " << one.max_steps << " at " << one.max_steps_start);
  EXPECT(one.max_peak == Value(u64{30171305459816}) &&
             one.max_peak_start == Value(6631675),
         "max peak " << one.max_peak << " at " << one.max_peak_start);
  return true;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  bool (*fn)(std::string&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"golden-examples", 1.0, crit_golden_examples},
      {"odd-ascent-sweep", 30.0, crit_odd_ascent_sweep},
      {"even-capability-sweep", 30.0, crit_even_capability_sweep},
      {"cycle-searches", 60.0, crit_cycle_searches},
      {"grandparent-dominance", 30.0, crit_grandparent_dominance},
      {"chain-grid", 60.0, crit_chain_grid},
      {"tree-audits", 60.0, crit_tree_audits},
      {"batch-verify", 60.0, crit_batch_verify},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string why;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.fn(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", elapsed);
    if (ok && elapsed > c.budget_seconds) {
      ok = false;
      std::ostringstream os;
      os << "over budget (" << c.budget_seconds << "s)";
      why = os.str();
    }
    if (ok) {
      std::cout << "[PASS] " << c.name << " (" << buf << ")\n";
    } else {
      std::cout << "[FAIL] " << c.name << " (" << buf << "): " << why << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
