#include "arbor/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arbor/chains.hpp"
#include "arbor/core.hpp"
#include "arbor/cycles.hpp"
#include "arbor/decompose.hpp"
#include "arbor/subtree.hpp"
#include "arbor/tree.hpp"
#include "arbor/value.hpp"
#include "arbor/verify.hpp"

namespace arbor::cli {
namespace {

using ojson = nlohmann::ordered_json;

/// Values that fit in 64 bits are emitted as JSON numbers; larger ones as
/// decimal strings.
ojson jval(const Value& v) {
  if (v.fits_u64()) return ojson(v.as_u64());
  return ojson(v.str());
}

ojson jval(u128 v) {
  if (v <= u128{std::numeric_limits<u64>::max()}) return ojson(u64(v));
  return ojson(u128_str(v));
}

const char* bstr(bool b) { return b ? "true" : "false"; }

std::vector<unsigned> parse_counts(const std::string& text) {
  std::vector<unsigned> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string tok = comma == std::string::npos
                          ? text.substr(pos)
                          : text.substr(pos, comma - pos);
    unsigned v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(first, last, v);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != last) {
      throw DomainError("malformed count list: " + text);
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct StepArgs {
  std::string value;
  bool classic = false;
};

struct TrajectoryArgs {
  std::string value;
  bool classic = false;
  u64 limit = kDefaultStepLimit;
  bool values = false;
};

struct DecomposeArgs {
  std::string value;
  bool classify = false;
};

struct SubtreeEvenArgs {
  std::string value;
};

struct SubtreeOddArgs {
  std::string value;
  unsigned count = 6;
};

struct McArgs {
  std::string base;
  std::string counts;
  bool chain = false;
};

struct DiophantineArgs {
  unsigned bmax = 60;
  unsigned nmax = 60;
};

struct EmpiricalArgs {
  std::string limit = "10000";
  u64 step_limit = kDefaultStepLimit;
};

struct TreeArgs {
  std::string value_bound = "100";
  unsigned depth_bound = kMaxTreeDepth;
  u64 node_bound = ~u64{0};
  std::string dot_path;
  std::string export_path;
  bool audit = false;
  std::string coverage;
};

struct VerifyArgs {
  std::string lo;
  std::string hi;
  unsigned shards = 1;
  u64 step_limit = kDefaultStepLimit;
  bool classic = false;
  bool assume_below = false;
  bool scalar = false;
};

int run_step(const StepArgs& a, bool json, std::ostream& out) {
  Value d(a.value);
  MapVariant variant = a.classic ? MapVariant::kClassic : MapVariant::kShortcut;
  Value next = step(d, variant);
  if (json) {
    ojson o;
    o["value"] = jval(next);
    out << o.dump() << '\n';
  } else {
    out << next.str() << '\n';
  }
  return 0;
}

int run_trajectory(const TrajectoryArgs& a, bool json, std::ostream& out) {
  Value d(a.value);
  MapVariant variant = a.classic ? MapVariant::kClassic : MapVariant::kShortcut;
  Trajectory t = trajectory(d, variant, a.limit);
  if (json) {
    ojson o;
    o["start"] = jval(t.start);
    o["steps"] = t.steps;
    o["peak"] = jval(t.peak);
    o["terminated"] = t.terminated;
    if (a.values) {
      ojson vs = ojson::array();
      for (const Value& v : t.values) vs.push_back(jval(v));
      o["values"] = vs;
    }
    out << o.dump() << '\n';
  } else {
    out << "start=" << t.start << " steps=" << t.steps << " peak=" << t.peak
        << " terminated=" << bstr(t.terminated);
    if (a.values) {
      out << " values=";
      for (std::size_t i = 0; i < t.values.size(); ++i) {
        if (i != 0) out << ',';
        out << t.values[i];
      }
    }
    out << '\n';
  }
  return 0;
}

int run_decompose(const DecomposeArgs& a, bool json, std::ostream& out) {
  Value x(a.value);
  if (x.is_zero()) throw DomainError("decompose requires a positive value");
  if (!x.is_even()) {
    OddDecomposition d = decompose_odd(x);
    OddClassification c = classify_odd(x);
    if (json) {
      ojson o;
      o["n"] = d.n;
      o["N"] = d.N;
      o["h"] = jval(d.h);
      if (a.classify) {
        o["class"] = odd_class_name(c.cls);
        o["a"] = jval(c.a);
      }
      out << o.dump() << '\n';
    } else {
      out << "n=" << d.n << " N=" << d.N << " h=" << d.h;
      if (a.classify) {
        out << " class=" << odd_class_name(c.cls) << " a=" << c.a;
      }
      out << '\n';
    }
    return 0;
  }
  std::optional<ParentDecomposition> p = decompose_even_parent(x);
  EvenForm form = classify_even(x);
  if (json) {
    ojson o;
    if (p) {
      o["N"] = p->N;
      o["h"] = jval(p->h);
    } else {
      o["parent_capable"] = false;
    }
    if (a.classify) {
      o["class"] = odd_class_name(form.odd_class.cls);
      o["b"] = form.b;
      o["parent_capable"] = form.parent_capable;
    }
    out << o.dump() << '\n';
  } else {
    if (p) {
      out << "N=" << p->N << " h=" << p->h;
    } else {
      out << "parent_capable=false";
    }
    if (a.classify) {
      out << " class=" << odd_class_name(form.odd_class.cls) << " b=" << form.b
          << " parent_capable=" << bstr(form.parent_capable);
    }
    out << '\n';
  }
  return 0;
}

int run_subtree_even(const SubtreeEvenArgs& a, bool json, std::ostream& out) {
  Value x(a.value);
  EvenSubTree st = even_subtree_from_member(x);
  if (json) {
    ojson o;
    o["parent"] = jval(st.parent);
    o["N"] = st.params.N;
    o["h"] = jval(st.params.h);
    ojson cs = ojson::array();
    for (const Value& c : st.children) cs.push_back(jval(c));
    o["children"] = cs;
    o["main_child"] = jval(st.main_child);
    out << o.dump() << '\n';
  } else {
    out << "parent=" << st.parent << " N=" << st.params.N
        << " h=" << st.params.h << '\n';
    out << "children:";
    for (const Value& c : st.children) out << ' ' << c;
    out << '\n';
    out << "main_child=" << st.main_child << '\n';
  }
  return 0;
}

int run_subtree_odd(const SubtreeOddArgs& a, bool json, std::ostream& out) {
  Value p(a.value);
  OddSubTree st = odd_subtree(p, a.count);
  if (json) {
    ojson o;
    o["parent"] = jval(st.parent);
    o["class"] = odd_class_name(st.cls.cls);
    ojson cs = ojson::array();
    ojson pr = ojson::array();
    for (std::size_t i = 0; i < st.children.size(); ++i) {
      cs.push_back(jval(st.children[i]));
      pr.push_back(st.productive[i]);
    }
    o["children"] = cs;
    o["productive"] = pr;
    out << o.dump() << '\n';
  } else {
    out << "parent=" << st.parent << " class=" << odd_class_name(st.cls.cls)
        << '\n';
    out << "children:";
    for (const Value& c : st.children) out << ' ' << c;
    out << '\n';
    out << "productive:";
    for (std::size_t i = 0; i < st.children.size(); ++i) {
      if (st.productive[i]) out << ' ' << st.children[i];
    }
    out << '\n';
  }
  return 0;
}

int run_mc(const McArgs& a, bool json, std::ostream& out) {
  Value base(a.base);
  std::vector<unsigned> counts = parse_counts(a.counts);
  MainChildChain chain = mc_chain(base, counts);
  const Value& last = chain.values.back();
  if (json) {
    ojson o;
    o["base"] = jval(chain.base);
    ojson ms = ojson::array();
    for (unsigned m : counts) ms.push_back(m);
    o["m"] = ms;
    ojson bs = ojson::array();
    for (unsigned b : chain.exponents) bs.push_back(b);
    o["b"] = bs;
    if (a.chain) {
      ojson vs = ojson::array();
      for (const Value& v : chain.values) vs.push_back(jval(v));
      o["values"] = vs;
    }
    o["final"] = jval(last);
    out << o.dump() << '\n';
  } else if (a.chain) {
    for (std::size_t j = 0; j < chain.values.size(); ++j) {
      out << "j=" << j + 1 << " m=" << counts[j] << " b=" << chain.exponents[j]
          << " value=" << chain.values[j] << '\n';
    }
  } else {
    out << last.str() << '\n';
  }
  return 0;
}

int run_diophantine(const DiophantineArgs& a, bool json, std::ostream& out,
                    std::ostream& err) {
  TrivialCycleSearch res = search_trivial_cycles(a.bmax, a.nmax);
  if (json) {
    for (const CycleSolution& s : res.solutions) {
      ojson o;
      o["b"] = s.b;
      o["n"] = s.n;
      o["k"] = jval(s.k);
      o["child"] = jval(s.child);
      o["parent"] = jval(s.parent);
      out << o.dump() << '\n';
    }
    ojson sum;
    sum["pairs_scanned"] = res.pairs_scanned;
    sum["positive_denominators"] = res.positive_denominators;
    sum["solution_count"] = res.solutions.size();
    out << sum.dump() << '\n';
  } else {
    for (const CycleSolution& s : res.solutions) {
      out << "b=" << s.b << " n=" << s.n << " k=" << s.k
          << " child=" << s.child << " parent=" << s.parent << '\n';
    }
    err << "pairs_scanned=" << res.pairs_scanned
        << " positive_denominators=" << res.positive_denominators
        << " solutions=" << res.solutions.size() << '\n';
  }
  return 0;
}

int run_empirical(const EmpiricalArgs& a, bool json, std::ostream& out,
                  std::ostream& err) {
  Value limit(a.limit);
  EmpiricalCycleSearch res = search_cycles_empirical(limit, a.step_limit);
  if (json) {
    for (const FoundCycle& c : res.cycles) {
      ojson o;
      o["start"] = jval(c.start);
      ojson vs = ojson::array();
      for (const Value& v : c.values) vs.push_back(jval(v));
      o["cycle"] = vs;
      out << o.dump() << '\n';
    }
    ojson sum;
    sum["limit"] = jval(limit);
    sum["step_limit"] = a.step_limit;
    sum["cycle_count"] = res.cycles.size();
    ojson hit = ojson::array();
    for (const Value& v : res.step_limit_hit) hit.push_back(jval(v));
    sum["step_limit_hit"] = hit;
    out << sum.dump() << '\n';
  } else {
    for (const FoundCycle& c : res.cycles) {
      out << "cycle start=" << c.start << " values=";
      for (std::size_t i = 0; i < c.values.size(); ++i) {
        if (i != 0) out << ',';
        out << c.values[i];
      }
      out << '\n';
    }
    if (res.cycles.empty()) out << "no cycles found\n";
    if (!res.step_limit_hit.empty()) {
      err << "step limit hit for " << res.step_limit_hit.size()
          << " starts\n";
    }
  }
  return res.cycles.empty() ? 0 : 2;
}

int run_tree(const TreeArgs& a, bool json, std::ostream& out,
             std::ostream& err) {
  ExpansionPolicy policy;
  policy.value_bound = Value(a.value_bound);
  policy.depth_bound = a.depth_bound;
  policy.node_bound = a.node_bound;
  TreeGraph tree = build_tree(policy);

  bool stdout_is_artifact = a.dot_path == "-" || a.export_path == "-";
  std::ostream& sum_out = stdout_is_artifact ? err : out;

  if (!a.dot_path.empty()) {
    if (a.dot_path == "-") {
      out << render_dot(tree);
    } else {
      std::ofstream f(a.dot_path, std::ios::binary);
      if (!f) throw DomainError("cannot open " + a.dot_path);
      f << render_dot(tree);
    }
  }
  if (!a.export_path.empty()) {
    if (a.export_path == "-") {
      export_json(tree, out);
    } else {
      std::ofstream f(a.export_path, std::ios::binary);
      if (!f) throw DomainError("cannot open " + a.export_path);
      export_json(tree, f);
    }
  }

  int rc = 0;
  std::vector<Value> dups;
  CoverageAudit cov;
  bool ran_cov = false;
  if (a.audit) {
    dups = audit_uniqueness(tree);
    if (!dups.empty()) rc = 2;
  }
  if (!a.coverage.empty()) {
    cov = audit_coverage(tree, Value(a.coverage));
    ran_cov = true;
    if (!cov.value_bound_adequate) {
      rc = 1;
    } else if (!cov.missing.empty()) {
      rc = 2;
    }
  }

  if (json) {
    ojson o;
    o["nodes"] = tree.node_count();
    o["edges"] = tree.edge_count();
    o["max_depth"] = tree.max_depth();
    o["value_bound"] = jval(tree.value_bound());
    o["back_edge"] = tree.has_back_edge();
    o["bounds_hit"] = tree.bounds_hit();
    if (a.audit) {
      ojson ds = ojson::array();
      for (const Value& d : dups) ds.push_back(jval(d));
      o["duplicates"] = ds;
    }
    if (ran_cov) {
      ojson ms = ojson::array();
      for (const Value& v : cov.missing) ms.push_back(jval(v));
      o["missing"] = ms;
      o["value_bound_adequate"] = cov.value_bound_adequate;
      o["required_bound"] = jval(cov.required_bound);
    }
    sum_out << o.dump() << '\n';
  } else {
    sum_out << "nodes=" << tree.node_count() << " edges=" << tree.edge_count()
            << " max_depth=" << tree.max_depth()
            << " value_bound=" << tree.value_bound()
            << " back_edge=" << bstr(tree.has_back_edge())
            << " bounds_hit=" << bstr(tree.bounds_hit()) << '\n';
    if (a.audit) {
      sum_out << "duplicates=" << dups.size();
      for (std::size_t i = 0; i < dups.size() && i < 20; ++i) {
        sum_out << (i == 0 ? ": " : " ") << dups[i];
      }
      sum_out << '\n';
    }
    if (ran_cov) {
      sum_out << "coverage: missing=" << cov.missing.size()
              << " required_bound=" << cov.required_bound
              << " adequate=" << bstr(cov.value_bound_adequate);
      for (std::size_t i = 0; i < cov.missing.size() && i < 20; ++i) {
        sum_out << (i == 0 ? " values: " : " ") << cov.missing[i];
      }
      if (cov.missing.size() > 20) sum_out << " ...";
      sum_out << '\n';
    }
  }
  return rc;
}

int run_verify(const VerifyArgs& a, bool json, std::ostream& out,
               std::ostream& err) {
  Value lo(a.lo);
  Value hi(a.hi);
  VerifyOptions opts;
  opts.variant = a.classic ? MapVariant::kClassic : MapVariant::kShortcut;
  opts.step_limit = a.step_limit;
  opts.shards = a.shards;
  opts.assume_below = a.assume_below;
  opts.force_scalar = a.scalar;
  VerifyReport rep = batch_verify(lo, hi, opts);
  if (json) {
    ojson o;
    o["lo"] = jval(rep.lo);
    o["hi"] = jval(rep.hi);
    o["variant"] =
        rep.variant == MapVariant::kShortcut ? "shortcut" : "classic";
    o["step_limit"] = rep.step_limit;
    o["shards"] = rep.shards;
    o["kernel"] = rep.kernel;
    o["converged"] = rep.all_converged;
    o["checked"] = jval(rep.checked);
    o["max_steps"] = rep.max_steps;
    o["max_steps_start"] = jval(rep.max_steps_start);
    o["max_peak"] = jval(rep.max_peak);
    o["max_peak_start"] = jval(rep.max_peak_start);
    ojson fs = ojson::array();
    for (const Value& v : rep.failures) fs.push_back(jval(v));
    o["failures"] = fs;
    o["elapsed_seconds"] = rep.elapsed_seconds;
    out << o.dump() << '\n';
  } else {
    out << "range=[" << rep.lo << ',' << rep.hi << "] variant="
        << (rep.variant == MapVariant::kShortcut ? "shortcut" : "classic")
        << " converged=" << bstr(rep.all_converged)
        << " checked=" << rep.checked << " max_steps=" << rep.max_steps
        << " (at " << rep.max_steps_start << ") max_peak=" << rep.max_peak
        << " (at " << rep.max_peak_start << ") kernel=" << rep.kernel
        << " shards=" << rep.shards << " elapsed=" << rep.elapsed_seconds
        << "s\n";
    if (!rep.failures.empty()) {
      err << "failures=" << rep.failures.size();
      for (std::size_t i = 0; i < rep.failures.size() && i < 100; ++i) {
        err << (i == 0 ? ": " : " ") << rep.failures[i];
      }
      if (rep.failures.size() > 100) err << " ...";
      err << '\n';
    }
  }
  return rep.failures.empty() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"reverse Collatz tree toolkit"};
  app.name("arbor");
  app.require_subcommand(1);
  app.fallthrough();

  bool bigint = false;
  bool json = false;
  app.add_flag("--bigint", bigint, "enable arbitrary precision arithmetic")
      ->envname("ARBOR_BIGINT");
  app.add_flag("--json", json, "emit JSON lines instead of plain text");

  StepArgs step_args;
  auto* step_cmd = app.add_subcommand("step", "apply one map step");
  step_cmd->add_option("value", step_args.value, "starting value")->required();
  step_cmd->add_flag("--classic", step_args.classic, "use the classic map");
  step_cmd->fallthrough();

  TrajectoryArgs traj_args;
  auto* traj_cmd =
      app.add_subcommand("trajectory", "iterate a value down to 1");
  traj_cmd->add_option("value", traj_args.value, "starting value")->required();
  traj_cmd->add_flag("--classic", traj_args.classic, "use the classic map");
  traj_cmd->add_option("--limit", traj_args.limit, "step budget");
  traj_cmd->add_flag("--values", traj_args.values, "include visited values");
  traj_cmd->fallthrough();

  DecomposeArgs dec_args;
  auto* dec_cmd = app.add_subcommand(
      "decompose", "factor a value into its structural parameters");
  dec_cmd->add_option("value", dec_args.value, "value to factor")->required();
  dec_cmd->add_flag("--classify", dec_args.classify,
                    "include residue class information");
  dec_cmd->fallthrough();

  auto* sub_cmd = app.add_subcommand("subtree", "enumerate sub-tree children");
  sub_cmd->require_subcommand(1);
  sub_cmd->fallthrough();
  SubtreeEvenArgs sube_args;
  auto* sube_cmd =
      sub_cmd->add_subcommand("even", "odd children of an even parent");
  sube_cmd->add_option("value", sube_args.value, "parent or any member")
      ->required();
  sube_cmd->fallthrough();
  SubtreeOddArgs subo_args;
  auto* subo_cmd =
      sub_cmd->add_subcommand("odd", "even children of an odd parent");
  subo_cmd->add_option("value", subo_args.value, "odd parent")->required();
  subo_cmd->add_option("--count", subo_args.count, "children to list");
  subo_cmd->fallthrough();

  McArgs mc_args;
  auto* mc_cmd = app.add_subcommand("mc", "follow a main-child chain");
  mc_cmd->add_option("base", mc_args.base, "odd base value")->required();
  mc_cmd->add_option("counts", mc_args.counts, "comma separated step counts")
      ->required();
  mc_cmd->add_flag("--chain", mc_args.chain, "print every chain row");
  mc_cmd->fallthrough();

  auto* cyc_cmd = app.add_subcommand("cycles", "cycle searches");
  cyc_cmd->require_subcommand(1);
  cyc_cmd->fallthrough();
  DiophantineArgs dio_args;
  auto* dio_cmd = cyc_cmd->add_subcommand(
      "diophantine", "solve the single-odd-cycle equation");
  dio_cmd->add_option("--bmax", dio_args.bmax, "largest halving exponent");
  dio_cmd->add_option("--nmax", dio_args.nmax, "largest ascent exponent");
  dio_cmd->fallthrough();
  EmpiricalArgs emp_args;
  auto* emp_cmd =
      cyc_cmd->add_subcommand("empirical", "scan trajectories for cycles");
  emp_cmd->add_option("--limit", emp_args.limit, "largest start to scan");
  emp_cmd->add_option("--step-limit", emp_args.step_limit, "step budget");
  emp_cmd->fallthrough();

  TreeArgs tree_args;
  auto* tree_cmd =
      app.add_subcommand("tree", "build and audit the reverse tree");
  tree_cmd->add_option("--value-bound", tree_args.value_bound,
                       "largest value admitted");
  tree_cmd->add_option("--depth-bound", tree_args.depth_bound,
                       "largest depth admitted");
  tree_cmd->add_option("--node-bound", tree_args.node_bound,
                       "largest node count admitted");
  tree_cmd->add_option("--dot", tree_args.dot_path,
                       "write Graphviz output to FILE (- for stdout)");
  tree_cmd->add_option("--export", tree_args.export_path,
                       "write JSON output to FILE (- for stdout)");
  tree_cmd->add_flag("--audit", tree_args.audit, "check parent uniqueness");
  tree_cmd->add_option("--coverage", tree_args.coverage,
                       "check that 1..M all appear");
  tree_cmd->fallthrough();

  VerifyArgs ver_args;
  auto* ver_cmd =
      app.add_subcommand("verify", "batch convergence check over a range");
  ver_cmd->add_option("lo", ver_args.lo, "first start")->required();
  ver_cmd->add_option("hi", ver_args.hi, "last start")->required();
  ver_cmd->add_option("--shards", ver_args.shards, "worker shard count");
  ver_cmd->add_option("--step-limit", ver_args.step_limit, "step budget");
  ver_cmd->add_flag("--classic", ver_args.classic, "use the classic map");
  ver_cmd->add_flag("--assume-below", ver_args.assume_below,
                    "stop each orbit once it drops under the range start");
  ver_cmd->add_flag("--scalar", ver_args.scalar,
                    "disable the vectorized kernel");
  ver_cmd->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("arbor");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  set_bigint_enabled(bigint);

  try {
    if (step_cmd->parsed()) return run_step(step_args, json, out);
    if (traj_cmd->parsed()) return run_trajectory(traj_args, json, out);
    if (dec_cmd->parsed()) return run_decompose(dec_args, json, out);
    if (sub_cmd->parsed()) {
      if (sube_cmd->parsed()) return run_subtree_even(sube_args, json, out);
      if (subo_cmd->parsed()) return run_subtree_odd(subo_args, json, out);
    }
    if (mc_cmd->parsed()) return run_mc(mc_args, json, out);
    if (cyc_cmd->parsed()) {
      if (dio_cmd->parsed()) return run_diophantine(dio_args, json, out, err);
      if (emp_cmd->parsed()) return run_empirical(emp_args, json, out, err);
    }
    if (tree_cmd->parsed()) return run_tree(tree_args, json, out, err);
    if (ver_cmd->parsed()) return run_verify(ver_args, json, out, err);
  } catch (const OverflowError& e) {
    err << "error: " << e.what()
        << " (rerun with --bigint to enable arbitrary precision)\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no subcommand selected\n";
  return 1;
}

}  // namespace arbor::cli
