#pragma once
// Helpers shared by the unit tests and the acceptance binary: corpus access,
// random generators and the boolean-formula oracle for the bt domain.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lpspec/bt_domain.hpp"
#include "lpspec/parser.hpp"
#include "lpspec/term.hpp"

namespace testsupport {

using namespace lpspec;

inline std::string corpus(const std::string& rel) { return std::string(LPSPEC_CORPUS_DIR) + "/" + rel; }
inline Program corpus_program(const std::string& rel) { return parse_program(read_file(corpus(rel))); }

// ---------------------------------------------------------------- terms

struct TermGen {
  std::mt19937_64 rng;
  std::vector<std::string> vars{"X", "Y", "Z", "W"};
  std::vector<std::string> atoms{"a", "b", "[]"};
  std::vector<std::pair<std::string, std::size_t>> functors{{"f", 1}, {"g", 2}, {".", 2}, {"h", 3}};

  explicit TermGen(std::uint64_t seed) : rng(seed) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  Term term(int depth) {
    if (depth <= 0 || coin(0.35)) {
      if (coin()) return Term::var(vars[pick(vars.size())]);
      return Term::atom(atoms[pick(atoms.size())]);
    }
    auto [f, n] = functors[pick(functors.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < n; ++i) args.push_back(term(depth - 1));
    return Term::compound(f, std::move(args));
  }

  // Same shape with variables renamed by a random permutation plus suffix.
  Term rename(const Term& t, const std::map<std::string, std::string>& m) {
    if (t.is_var()) return Term::var(m.at(t.name()));
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(rename(a, m));
    return Term::compound(t.name(), std::move(args));
  }
  std::map<std::string, std::string> permutation(const std::string& suffix) {
    auto p = vars;
    std::shuffle(p.begin(), p.end(), rng);
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < vars.size(); ++i) m[vars[i]] = p[i] + suffix;
    return m;
  }
};

// Robinson unification with occurs-check over explicit substitution
// composition. Independent of the library's triangular unifier.
enum class RefUnify { Ok, Clash, Occurs };

inline Term ref_apply(const std::map<std::string, Term>& s, const Term& t) {
  if (t.is_var()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(ref_apply(s, a));
  return Term::compound(t.name(), std::move(args));
}

inline bool ref_occurs(const std::string& v, const Term& t) {
  if (t.is_var()) return t.name() == v;
  for (const auto& a : t.args())
    if (ref_occurs(v, a)) return true;
  return false;
}

inline RefUnify ref_unify(const Term& a, const Term& b, std::map<std::string, Term>& s) {
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    x = ref_apply(s, x);
    y = ref_apply(s, y);
    if (x == y) continue;
    if (!x.is_var() && y.is_var()) std::swap(x, y);
    if (x.is_var()) {
      if (ref_occurs(x.name(), y)) return RefUnify::Occurs;
      std::map<std::string, Term> one{{x.name(), y}};
      for (auto& [k, v] : s) v = ref_apply(one, v);
      s.emplace(x.name(), y);
      continue;
    }
    if (x.name() != y.name() || x.arity() != y.arity()) return RefUnify::Clash;
    for (std::size_t i = 0; i < x.arity(); ++i) work.emplace_back(x.arg(i), y.arg(i));
  }
  return RefUnify::Ok;
}

// ---------------------------------------------------------------- domain oracle

// One model: a (g, l) bit pair per position.
using Bits = std::vector<std::pair<bool, bool>>;

// A table as a formula over named positions, evaluated by brute force.
struct Formula {
  std::vector<std::string> schema;
  std::function<bool(const std::map<std::string, std::pair<bool, bool>>&)> holds;
};

inline std::vector<std::pair<bool, bool>> bit_domain(Norms norms) {
  // g implies l; without listlength the l bit mirrors g.
  if (norms.listlength) return {{false, false}, {false, true}, {true, true}};
  return {{false, false}, {true, true}};
}

inline std::set<Bits> models(const Formula& f, Norms norms) {
  std::set<Bits> out;
  const auto dom = bit_domain(norms);
  std::size_t n = f.schema.size();
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::map<std::string, std::pair<bool, bool>> env;
    Bits b;
    for (std::size_t i = 0; i < n; ++i) {
      env[f.schema[i]] = dom[idx[i]];
      b.push_back(dom[idx[i]]);
    }
    if (f.holds(env)) out.insert(b);
    std::size_t i = 0;
    while (i < n && ++idx[i] == dom.size()) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

inline std::set<Bits> table_bits(const BTTable& t) {
  std::set<Bits> out;
  for (auto tup : t.tuples()) {
    Bits b;
    for (auto v : t.values(tup)) b.emplace_back(g_bit(v), l_bit(v));
    out.insert(b);
  }
  return out;
}

inline Formula f_top(std::vector<std::string> schema) {
  return {std::move(schema), [](const auto&) { return true; }};
}

inline Formula f_and(Formula a, std::function<bool(const std::map<std::string, std::pair<bool, bool>>&)> c) {
  auto h = a.holds;
  return {a.schema, [h, c](const auto& env) { return h(env) && c(env); }};
}

inline Formula f_or(const Formula& a, const Formula& b) {
  auto ha = a.holds, hb = b.holds;
  return {a.schema, [ha, hb](const auto& env) { return ha(env) || hb(env); }};
}

// Existential projection over the dropped positions.
inline Formula f_project(const Formula& a, const std::vector<std::string>& keep, Norms norms) {
  std::vector<std::string> dropped;
  for (const auto& s : a.schema)
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) dropped.push_back(s);
  auto h = a.holds;
  auto dom = bit_domain(norms);
  return {keep, [h, dropped, dom](const auto& env) {
            auto e = env;
            std::size_t n = dropped.size();
            std::vector<std::size_t> idx(n, 0);
            while (true) {
              for (std::size_t i = 0; i < n; ++i) e[dropped[i]] = dom[idx[i]];
              if (h(e)) return true;
              std::size_t i = 0;
              while (i < n && ++idx[i] == dom.size()) idx[i++] = 0;
              if (i == n) return false;
            }
          }};
}

inline Formula f_extend(const Formula& a, const std::vector<std::string>& more) {
  auto s = a.schema;
  s.insert(s.end(), more.begin(), more.end());
  return {s, a.holds};
}

// Conjunction with `inner` read on its own (sub-)schema.
inline Formula f_join_on(const Formula& outer, const Formula& inner) { return f_and(outer, inner.holds); }

inline Formula f_unify(const Formula& a, const FlatEquation& eq, Norms norms) {
  return f_and(a, [eq, norms](const auto& env) {
    auto lhs = env.at(eq.lhs);
    if (eq.alias) {
      auto rhs = env.at(eq.args.at(0));
      return lhs.first == rhs.first && (!norms.listlength || lhs.second == rhs.second);
    }
    bool g = true;
    for (const auto& v : eq.args) g = g && env.at(v).first;
    if (lhs.first != g) return false;
    if (!norms.listlength) return true;
    if (eq.functor == "." && eq.args.size() == 2) return lhs.second == env.at(eq.args[1]).second;
    return lhs.second;
  });
}

// Pin the bits that are true in every model, free the rest.
inline Formula f_generalise(const Formula& a, Norms norms) {
  auto ms = models(a, norms);
  std::vector<std::pair<std::string, int>> pins;  // 0: g, 1: l
  for (std::size_t i = 0; i < a.schema.size(); ++i) {
    bool g = true, l = true;
    for (const auto& m : ms) {
      g = g && m[i].first;
      l = l && m[i].second;
    }
    if (g) pins.emplace_back(a.schema[i], 0);
    if (l && norms.listlength) pins.emplace_back(a.schema[i], 1);
  }
  return {a.schema, [pins](const auto& env) {
            for (const auto& [p, b] : pins)
              if (!(b == 0 ? env.at(p).first : env.at(p).second)) return false;
            return true;
          }};
}

inline Formula f_constrain(const Formula& a, const std::string& pos, Norm n) {
  return f_and(a, [pos, n](const auto& env) {
    return n == Norm::Termsize ? env.at(pos).first : env.at(pos).second;
  });
}

// Result of one randomised run of the domain suite.
struct DomainRun {
  std::size_t ops = 0;
  std::vector<std::string> failures;
};

inline Tuple all_g_tuple(std::size_t n) {
  Tuple t = 0;
  for (std::size_t i = 0; i < n; ++i) t = tuple_set(t, i, BTValue::G);
  return t;
}

// Random op sequences over at most four positions; every intermediate table
// is compared with the oracle's model set and checked for the invariants.
inline DomainRun run_domain_suite(std::uint64_t seed, std::size_t min_ops, Norms norms) {
  DomainRun run;
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<std::string> names{"A", "B", "C", "D"};
  const std::vector<std::pair<std::string, std::size_t>> functors{{".", 2}, {"f", 1}, {"g", 2}, {"k", 0}, {"h", 3}};

  auto fail = [&](const std::string& what) {
    if (run.failures.size() < 20) run.failures.push_back(what + " (seed " + std::to_string(seed) + ", op " +
                                                         std::to_string(run.ops) + ")");
  };
  auto random_subset = [&](const std::vector<std::string>& from, bool nonempty) {
    std::vector<std::string> out;
    for (const auto& s : from)
      if (pick(2)) out.push_back(s);
    if (nonempty && out.empty() && !from.empty()) out.push_back(from[pick(from.size())]);
    return out;
  };
  auto check = [&](const BTTable& t, const Formula& f, const std::string& op, bool positive) {
    ++run.ops;
    if (t.schema() != f.schema) {
      fail(op + ": schema differs");
      return;
    }
    if (table_bits(t) != models(f, norms)) fail(op + ": model set differs from oracle");
    for (auto tup : t.tuples()) {
      for (std::size_t i = 0; i < t.arity(); ++i) {
        unsigned raw = static_cast<unsigned>(tuple_get(tup, i));
        if (raw == 2) fail(op + ": g without l");
        if (!norms.listlength && raw == 1) fail(op + ": L value without listlength");
      }
      if (t.arity() < kMaxPositions && (tup >> (2 * t.arity())) != 0) fail(op + ": stray bits");
    }
    if (positive && !t.contains(all_g_tuple(t.arity()))) fail(op + ": all-G tuple lost");
  };

  // Tables reached from top by conjunctive operations; all of them are positive.
  struct State {
    BTTable t;
    Formula f;
  };
  auto fresh_state = [&]() {
    std::vector<std::string> s;
    for (const auto& n : names)
      if (pick(3)) s.push_back(n);
    std::shuffle(s.begin(), s.end(), rng);
    return State{top(s, norms), f_top(s)};
  };

  while (run.ops < min_ops) {
    State st = fresh_state();
    check(st.t, st.f, "top", true);
    for (int step = 0; step < 12; ++step) {
      const std::vector<std::string> schema = st.t.schema();
      switch (pick(8)) {
        case 0: {  // abstract_unify
          if (schema.empty()) break;
          FlatEquation eq;
          eq.lhs = schema[pick(schema.size())];
          if (pick(3) == 0) {
            eq.alias = true;
            eq.args = {schema[pick(schema.size())]};
          } else {
            auto [fn, n] = functors[pick(functors.size())];
            eq.functor = fn;
            for (std::size_t i = 0; i < n; ++i) eq.args.push_back(schema[pick(schema.size())]);
          }
          st.t = abstract_unify(st.t, eq, norms);
          st.f = f_unify(st.f, eq, norms);
          check(st.t, st.f, "abstract_unify", true);
          break;
        }
        case 1: {  // project
          auto keep = random_subset(schema, false);
          std::shuffle(keep.begin(), keep.end(), rng);
          st.t = project(st.t, keep);
          st.f = f_project(st.f, keep, norms);
          check(st.t, st.f, "project", true);
          break;
        }
        case 2: {  // extend
          std::vector<std::string> more;
          for (const auto& n : names)
            if (std::find(schema.begin(), schema.end(), n) == schema.end() && pick(2)) more.push_back(n);
          st.t = extend(st.t, more, norms);
          st.f = f_extend(st.f, more);
          check(st.t, st.f, "extend", true);
          break;
        }
        case 3: {  // equi_join with another positive table over a sub-schema
          auto sub = random_subset(schema, false);
          State other{top(schema, norms), f_top(schema)};
          for (int k = 0; k < 2 && !schema.empty(); ++k) {
            FlatEquation eq{schema[pick(schema.size())], false, "g",
                            {schema[pick(schema.size())], schema[pick(schema.size())]}};
            other.t = abstract_unify(other.t, eq, norms);
            other.f = f_unify(other.f, eq, norms);
          }
          BTTable inner = project(other.t, sub);
          Formula finner = f_project(other.f, sub, norms);
          check(inner, finner, "project", true);
          st.t = equi_join(sub, st.t, inner);
          st.f = f_join_on(st.f, finner);
          check(st.t, st.f, "equi_join", true);
          break;
        }
        case 4: {  // join with a sibling derived from the same state
          State sib = st;
          if (!schema.empty()) {
            const auto& p = schema[pick(schema.size())];
            sib.t = constrain(sib.t, p, Norm::Termsize);
            sib.f = f_constrain(sib.f, p, Norm::Termsize);
            check(sib.t, sib.f, "constrain", true);
          }
          st.t = join(st.t, sib.t);
          st.f = f_or(st.f, sib.f);
          check(st.t, st.f, "join", true);
          break;
        }
        case 5: {  // constrain
          if (schema.empty()) break;
          const auto& p = schema[pick(schema.size())];
          Norm n = (norms.listlength && pick(2)) ? Norm::Listlength : Norm::Termsize;
          st.t = constrain(st.t, p, n);
          st.f = f_constrain(st.f, p, n);
          check(st.t, st.f, "constrain", true);
          break;
        }
        case 6: {  // generalise
          BTTable g = generalise(st.t, norms);
          Formula fg = f_generalise(st.f, norms);
          check(g, fg, "generalise", true);
          if (generalise(g, norms) != g) fail("generalise not idempotent");
          if (!st.t.subset_of(g)) fail("generalise does not contain its input");
          for (std::size_t i = 0; i < g.arity(); ++i)
            for (Norm n : {Norm::Termsize, Norm::Listlength})
              if (is_rigid(g, i, n) != is_rigid(st.t, i, n) && !st.t.empty())
                fail("generalise changed rigidity");
          st.t = g;
          st.f = fg;
          break;
        }
        case 7: {  // equi_join with own projection is the identity
          auto sub = random_subset(schema, false);
          if (equi_join(sub, st.t, project(st.t, sub)) != st.t) fail("equi_join(S, t, project(t, S)) != t");
          ++run.ops;
          break;
        }
      }
    }
  }
  return run;
}

}  // namespace testsupport
