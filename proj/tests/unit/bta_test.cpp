#include <doctest.h>

#include "lpspec/annotate.hpp"
#include "lpspec/bta.hpp"
#include "lpspec/config.hpp"
#include "lpspec/normalise.hpp"
#include "lpspec/parser.hpp"
#include "lpspec/specialise.hpp"

#include <sstream>
#include "support.hpp"

using namespace lpspec;
using B = BTValue;
using K = Decision::Kind;

namespace {

AnalysisConfig cfg_text(const std::string& s) { return parse_config(s); }

const char* kParserConditions = "unfold t(X,T,R) : true.\nunfold nont(X,T,R) : ground(T).\n";

Decision at(const AnalysisResult& r, int v, int c, int l) { return r.decisions.at(ProgramPoint{v, c, l}); }

BTTable single(std::initializer_list<B> vs) {
  Tuple t = 0;
  std::size_t i = 0;
  for (auto v : vs) t = tuple_set(t, i++, v);
  return BTTable(head_schema(vs.size()), {t});
}

}  // namespace

TEST_CASE("parser at (ground,dyn,dyn): t unfolded, recursive nont memoised to the entry") {
  Program p = testsupport::corpus_program("parser/program.pl");
  auto r = analyse(p, cfg_text(std::string("entry nont(ground,dyn,dyn).\n") + kParserConditions));
  REQUIRE(r.versions.size() == 2);
  CHECK(r.versions[0].pred == PredKey{"nont", 3});
  CHECK(at(r, 0, 0, 0).kind == K::Unfold);
  CHECK(r.versions[at(r, 0, 0, 0).callee].pred == PredKey{"t", 3});
  CHECK(at(r, 0, 0, 1) == Decision{K::Memo, 0});
  CHECK(at(r, 0, 1, 0).kind == K::Unfold);
  CHECK(r.versions[0].pattern == generalise(single({B::G, B::D, B::D}), Norms{false}));
  CHECK(r.classification(0) == std::vector<B>{B::G, B::D, B::D});
}

TEST_CASE("parser at (dyn,ground,dyn): every call unfolded") {
  Program p = testsupport::corpus_program("parser/program.pl");
  auto r = analyse(p, cfg_text(std::string("entry nont(dyn,ground,dyn).\n") + kParserConditions));
  for (const auto& [pt, d] : r.decisions) CHECK(d.kind == K::Unfold);
  CHECK(at(r, 0, 0, 1).kind == K::Unfold);
  int tv = at(r, 0, 0, 0).callee;
  CHECK(r.versions[tv].pred == PredKey{"t", 3});
  for (auto tuple : r.versions[tv].answer.tuples()) CHECK(tuple_get(tuple, 2) == B::G);
}

TEST_CASE("funnyapp: two versions, memo then unfold back into version 0") {
  Program p = testsupport::corpus_program("funnyapp/program.pl");
  auto r = analyse(p, parse_config(read_file(testsupport::corpus("funnyapp/config.cfg"))));
  REQUIRE(r.versions.size() == 2);
  CHECK(at(r, 0, 1, 0) == Decision{K::Memo, 1});
  CHECK(at(r, 1, 1, 0) == Decision{K::Unfold, 0});
  CHECK(r.classification(1) == std::vector<B>{B::D, B::G, B::D});
  CHECK(r.call_patterns.at(ProgramPoint{1, 1, 0}) == r.versions[0].pattern);
  // Before the body call of clause 2 in version 0, X and U are ground.
  const BTTable& pre = r.pre_states.at(ProgramPoint{0, 1, 0});
  for (const char* v : {"X", "U"})
    if (auto i = pre.index_of(v)) CHECK(is_rigid(pre, *i, Norm::Termsize));
}

TEST_CASE("abstract_clause: t(X,[X|Es],Es) under (D,G,D)") {
  Program p = parse_program("t(X,[X|Es],Es).");
  auto nc = normalise(p.clauses()[0]);
  for (Norms n : {Norms{false}, Norms{true}}) {
    AnalysisConfig cfg;
    cfg.unfold[{"t", 3}] = UnfoldRule{{"X", "T", "R"}, Condition::truth()};
    cfg.norms = n;
    Analyser an(p, cfg);
    // The analysis always feeds generalise-closed patterns.
    BTTable in = generalise(single({B::D, B::G, B::D}), n);
    BTTable out = an.abstract_clause(nc, in);
    // Brute force over X and Es: the head tuple (X, [X|Es], Es) must be an
    // input model.
    std::vector<Tuple> want;
    for (B x : value_domain(n))
      for (B es : value_domain(n)) {
        bool g = g_bit(x) && g_bit(es);
        bool l = l_bit(es);
        B list = g ? B::G : (l && n.listlength ? B::L : B::D);
        Tuple t = tuple_set(tuple_set(tuple_set(0, 0, x), 1, list), 2, es);
        if (in.contains(t)) want.push_back(t);
      }
    CHECK(out == BTTable(head_schema(3), want));
    // Es inherits groundness from the list, and so does X.
    CHECK(out == single({B::G, B::G, B::G}));
  }
}

TEST_CASE("abstract_clause: a fact with distinct variables returns its input") {
  Program p = parse_program("q(X,Y).");
  AnalysisConfig cfg;
  cfg.norms = Norms{true};
  Analyser an(p, cfg);
  BTTable in(head_schema(2), {tuple_set(0, 0, B::L), tuple_set(tuple_set(0, 0, B::G), 1, B::G)});
  CHECK(an.abstract_clause(normalise(p.clauses()[0]), in) == in);
}

TEST_CASE("abstract_builtin") {
  Step ground{Step::Kind::Builtin, "", "", {"X"}, BuiltinKind::Ground, 0, true};
  auto [s1, d1] = Analyser::abstract_builtin(top({"X", "Y"}), ground, Norms{});
  CHECK(s1.size() == 3);
  for (auto t : s1.tuples()) CHECK(tuple_get(t, 0) == B::G);
  CHECK(d1.kind == K::Dynamic);

  Step ne{Step::Kind::Builtin, "", "", {"N", "M"}, BuiltinKind::NotIdentical, 0, true};
  auto both_g = BTTable({"N", "M"}, {tuple_set(tuple_set(0, 0, B::G), 1, B::G)});
  auto [s2, d2] = Analyser::abstract_builtin(both_g, ne, Norms{});
  CHECK(d2.kind == K::Static);
  CHECK(s2 == both_g);
  auto m_dyn = BTTable({"N", "M"}, {tuple_set(tuple_set(0, 0, B::G), 1, B::G), tuple_set(0, 0, B::G)});
  auto [s3, d3] = Analyser::abstract_builtin(m_dyn, ne, Norms{});
  CHECK(d3.kind == K::Dynamic);
  CHECK(s3 == m_dyn);
}

TEST_CASE("liftsolve: the recursive l_mng site depends on the listlength norm") {
  Program p = testsupport::corpus_program("liftsolve_app/program.pl");
  auto ts = analyse(p, parse_config(read_file(testsupport::corpus("liftsolve_app/config_termsize.cfg"))));
  auto dual = analyse(p, parse_config(read_file(testsupport::corpus("liftsolve_app/config.cfg"))));
  auto find_lmng_site = [](const AnalysisResult& r, const Program& prog) {
    // Second clause of l_mng, second literal, in the first l_mng version.
    std::vector<std::pair<ProgramPoint, Decision>> out;
    for (const auto& [pt, d] : r.decisions)
      if (r.versions[pt.version].pred == PredKey{"l_mng", 4} && pt.clause == 1 && pt.literal == 1)
        out.emplace_back(pt, d);
    (void)prog;
    return out;
  };
  auto ts_sites = find_lmng_site(ts, p);
  REQUIRE_FALSE(ts_sites.empty());
  bool memo_gddd = false;
  for (const auto& [pt, d] : ts_sites)
    if (d.kind == K::Memo && ts.classification(d.callee) == std::vector<B>{B::G, B::D, B::D, B::D}) memo_gddd = true;
  CHECK(memo_gddd);

  auto dual_sites = find_lmng_site(dual, p);
  REQUIRE_FALSE(dual_sites.empty());
  for (const auto& [pt, d] : dual_sites) CHECK(d.kind == K::Unfold);
  bool acc_l = false;
  for (std::size_t v = 0; v < dual.versions.size(); ++v)
    if (dual.versions[v].pred == PredKey{"l_mng", 4} && dual.classification(static_cast<int>(v))[2] == B::L)
      acc_l = true;
  CHECK(acc_l);

  // mng1's \== : dynamic under termsize only, static in the dual-norm run.
  bool ts_dyn = false;
  for (const auto& [pt, d] : ts.decisions)
    if (ts.versions[pt.version].pred == PredKey{"mng", 4} && pt.clause == 2 && pt.literal == 0 &&
        d.kind == K::Dynamic)
      ts_dyn = true;
  CHECK(ts_dyn);
  bool dual_static = false;
  for (const auto& [pt, d] : dual.decisions)
    if (dual.versions[pt.version].pred == PredKey{"mng", 4} && pt.clause == 2 && pt.literal == 0 &&
        d.kind == K::Static)
      dual_static = true;
  CHECK(dual_static);
}

TEST_CASE("dead code after a call with no answers is unfolded to an empty version") {
  Program p = parse_program("p(X) :- r(X), q(X).\nr(X) :- r(X).\nq(a).");
  auto r = analyse(p, parse_config("entry p(dyn).\nunfold p(X) : true.\nunfold r(X) : true.\nunfold q(X) : ground(X)."));
  CHECK(at(r, 0, 0, 1).kind == K::Unfold);
  CHECK(r.versions[at(r, 0, 0, 1).callee].pattern.empty());
  CHECK(r.versions[0].answer.empty());
}

TEST_CASE("analysis errors") {
  Program p = parse_program("p(X) :- q(X).\nq(a).");
  CHECK_THROWS_AS(analyse(p, parse_config("entry p(dyn).\nunfold p(X) : true.")), AnalysisError);
  CHECK_THROWS_AS(analyse(p, parse_config("entry r(dyn).\nunfold r(X) : true.")), AnalysisError);
  CHECK(analyse(p, parse_config("unfold p(X) : true.")).versions.empty());
}

namespace {

struct Case {
  const char* dir;
  const char* cfg;
};
const Case kCases[] = {{"parser", "config.cfg"},         {"liftsolve_app", "config.cfg"},
                       {"liftsolve_app", "config_termsize.cfg"}, {"liftsolve_app4", "config.cfg"},
                       {"depth", "config.cfg"},          {"match_kmp", "config.cfg"},
                       {"regexp_r1", "config.cfg"},      {"funnyapp", "config.cfg"}};

}  // namespace

TEST_CASE("property: memo callees are generalise-closed and every call names a version") {
  for (const auto& c : kCases) {
    Program p = testsupport::corpus_program(std::string(c.dir) + "/program.pl");
    auto cfg = parse_config(read_file(testsupport::corpus(std::string(c.dir) + "/" + c.cfg)));
    auto r = analyse(p, cfg);
    CHECK(r.versions[0].pattern == generalise(r.versions[0].pattern, cfg.norms, Pins::TermsizeOnly));
    for (const auto& [pt, d] : r.decisions) {
      if (d.kind == K::Memo || d.kind == K::Unfold) {
        REQUIRE(d.callee >= 0);
        REQUIRE(static_cast<std::size_t>(d.callee) < r.versions.size());
      }
      if (d.kind == K::Memo) {
        const auto& pat = r.versions[d.callee].pattern;
        CHECK(pat == generalise(pat, cfg.norms, Pins::TermsizeOnly));
        // Memoisation never invents staticness.
        const BTTable& tc = r.call_patterns.at(pt);
        auto cls = r.classification(d.callee);
        for (std::size_t i = 0; i < cls.size(); ++i)
          if (cls[i] == B::G) CHECK(is_rigid(tc, i, Norm::Termsize));
      }
    }
  }
}

TEST_CASE("property: strategy independence and determinism") {
  for (const auto& c : kCases) {
    Program p = testsupport::corpus_program(std::string(c.dir) + "/program.pl");
    auto cfg = parse_config(read_file(testsupport::corpus(std::string(c.dir) + "/" + c.cfg)));
    auto fwd = analyse(p, cfg);
    auto again = analyse(p, cfg);
    auto rev = analyse(p, cfg, AnalyseOptions{.reverse_order = true});
    CHECK(fwd.versions == again.versions);
    CHECK(fwd.decisions == again.decisions);
    CHECK_MESSAGE(fwd.versions == rev.versions, c.dir);
    CHECK_MESSAGE(fwd.decisions == rev.decisions, c.dir);
    CHECK(emit(annotate(p, fwd)) == emit(annotate(p, rev)));
  }
}

TEST_CASE("property: a more general entry never turns a memo into an unfold") {
  for (const auto& c : kCases) {
    Program p = testsupport::corpus_program(std::string(c.dir) + "/program.pl");
    auto cfg = parse_config(read_file(testsupport::corpus(std::string(c.dir) + "/" + c.cfg)));
    auto base = analyse(p, cfg);
    for (std::size_t i = 0; i < cfg.entry->values.size(); ++i) {
      if (cfg.entry->values[i] == B::D) continue;
      auto gen_cfg = cfg;
      gen_cfg.entry->values[i] = B::D;
      auto general = analyse(p, gen_cfg);
      // Compare each version with a version of the same predicate whose
      // pattern contains it.
      for (std::size_t v = 0; v < base.versions.size(); ++v) {
        for (std::size_t w = 0; w < general.versions.size(); ++w) {
          if (general.versions[w].pred != base.versions[v].pred) continue;
          if (!base.versions[v].pattern.subset_of(general.versions[w].pattern)) continue;
          for (const auto& [pt, d] : base.decisions) {
            if (pt.version != static_cast<int>(v) || d.kind != K::Memo) continue;
            auto other = general.decisions.find(ProgramPoint{static_cast<int>(w), pt.clause, pt.literal});
            if (other != general.decisions.end()) CHECK(other->second.kind != K::Unfold);
          }
        }
      }
    }
  }
}

TEST_CASE("property: call patterns cover concrete calls during specialisation") {
  for (const auto& c : kCases) {
    Program p = testsupport::corpus_program(std::string(c.dir) + "/program.pl");
    auto cfg = parse_config(read_file(testsupport::corpus(std::string(c.dir) + "/" + c.cfg)));
    auto r = analyse(p, cfg);
    auto a = annotate(p, r);
    std::string goal_line;
    {
      std::istringstream in(read_file(testsupport::corpus(std::string(c.dir) + "/case.txt")));
      std::string line;
      while (std::getline(in, line))
        if (line.rfind("goal ", 0) == 0) goal_line = line.substr(5);
    }
    std::size_t checked = 0;
    SpecialiseOptions opts;
    opts.on_literal = [&](const ProgramPoint& pt, const Term& lit) {
      auto it = r.call_patterns.find(pt);
      REQUIRE(it != r.call_patterns.end());
      bool covered = false;
      for (auto t : it->second.tuples()) {
        bool all = true;
        for (std::size_t i = 0; i < lit.arity(); ++i) all = all && bt_leq(tuple_get(t, i), concrete_bt(lit.arg(i)));
        covered = covered || all;
      }
      CHECK_MESSAGE(covered, to_string(lit));
      ++checked;
    };
    specialise(a, parse_term(goal_line), opts);
    CHECK(checked > 0);
  }
}
