#include "lpspec/bta.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lpspec {

std::string to_string(Decision::Kind k) {
  switch (k) {
    case Decision::Kind::Unfold:
      return "unfold";
    case Decision::Kind::Memo:
      return "memo";
    case Decision::Kind::Static:
      return "static";
    case Decision::Kind::Dynamic:
      return "dynamic";
  }
  return "?";
}

std::vector<std::string> head_schema(std::size_t arity) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= arity; ++i) out.push_back("#" + std::to_string(i));
  return out;
}

std::optional<int> AnalysisResult::find(const PredKey& pred, const BTTable& pattern) const {
  for (std::size_t i = 0; i < versions.size(); ++i)
    if (versions[i].pred == pred && versions[i].pattern == pattern) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<BTValue> AnalysisResult::classification(int version) const {
  const auto& pat = versions.at(version).pattern;
  std::vector<BTValue> out;
  for (std::size_t i = 0; i < pat.arity(); ++i) out.push_back(classify(pat, i));
  return out;
}

BTTable entry_pattern(const EntrySpec& e, Norms norms) {
  Tuple t = 0;
  for (std::size_t i = 0; i < e.values.size(); ++i) t = tuple_set(t, i, e.values[i]);
  return generalise(BTTable(head_schema(e.values.size()), {t}), norms, Pins::TermsizeOnly);
}

namespace {

BTTable rename_schema(const BTTable& t, std::vector<std::string> schema) {
  return BTTable(std::move(schema), t.tuples());
}

FlatEquation equation_of(const Step& s) {
  FlatEquation eq;
  eq.lhs = s.lhs;
  eq.alias = s.kind == Step::Kind::Alias;
  eq.functor = s.functor;
  eq.args = s.args;
  return eq;
}

}  // namespace

Analyser::Analyser(const Program& p, AnalysisConfig cfg, AnalyseOptions opts)
    : cfg_(std::move(cfg)), opts_(opts) {
  for (const auto& c : p.clauses()) clauses_[c.key()].push_back(normalise(c));
  for (const auto& [key, rule] : cfg_.unfold)
    if (rule.condition.max_position() > key.arity)
      throw AnalysisError("unfold rule for " + key.str() + " refers to a missing argument");
}

const std::vector<NormalisedClause>& Analyser::clauses_of(const PredKey& pred) const {
  static const std::vector<NormalisedClause> kNone;
  auto it = clauses_.find(pred);
  return it == clauses_.end() ? kNone : it->second;
}

int Analyser::register_version(const PredKey& pred, const BTTable& pattern) {
  auto key = std::make_pair(pred, pattern.tuples());
  auto it = registry_.find(key);
  if (it != registry_.end()) return it->second;
  if (versions_.size() >= opts_.max_versions) throw AnalysisError("too many versions registered");
  int id = static_cast<int>(versions_.size());
  versions_.push_back(Version{pred, rename_schema(pattern, head_schema(pred.arity)),
                              bottom(head_schema(pred.arity))});
  registry_.emplace(std::move(key), id);
  return id;
}

std::pair<BTTable, Decision> Analyser::abstract_builtin(const BTTable& state, const Step& s, Norms norms) {
  auto ground_everywhere = [&](const std::string& v) { return is_rigid(state, state.require(v), Norm::Termsize); };
  auto kind_of = [](bool st) { return st ? Decision::Kind::Static : Decision::Kind::Dynamic; };
  switch (s.builtin) {
    case BuiltinKind::True:
      return {state, Decision{Decision::Kind::Static, -1}};
    case BuiltinKind::Ground: {
      bool st = ground_everywhere(s.args[0]);
      return {constrain(state, s.args[0], Norm::Termsize), Decision{kind_of(st), -1}};
    }
    case BuiltinKind::NotIdentical: {
      bool st = ground_everywhere(s.args[0]) && ground_everywhere(s.args[1]);
      return {state, Decision{kind_of(st), -1}};
    }
    case BuiltinKind::Unify: {
      bool st = ground_everywhere(s.args[1]);
      FlatEquation eq{s.args[0], true, "", {s.args[1]}};
      return {abstract_unify(state, eq, norms), Decision{kind_of(st), -1}};
    }
  }
  throw AnalysisError("unknown builtin");
}

std::pair<BTTable, Decision> Analyser::abstract_call(const BTTable& state, const PredKey& callee,
                                                     const std::vector<std::string>& args) {
  const Condition* cond = cfg_.condition_for(callee);
  if (!cond) throw AnalysisError("no unfold condition for reachable predicate " + callee.str());
  BTTable tc = rename_schema(project(state, args), head_schema(args.size()));
  if (eval_condition(tc, *cond) == Truth::DefinitelyTrue) {
    int v = register_version(callee, tc);
    BTTable tr = rename_schema(versions_[v].answer, args);
    return {equi_join(args, state, tr), Decision{Decision::Kind::Unfold, v}};
  }
  // Memoised: the callee's success does not flow back.
  int v = register_version(callee, generalise(tc, cfg_.norms, Pins::TermsizeOnly));
  return {state, Decision{Decision::Kind::Memo, v}};
}

BTTable Analyser::abstract_clause(const NormalisedClause& c, const BTTable& input, int version, int clause) {
  const Norms norms = cfg_.norms;
  // live[k]: variables needed after step k.
  std::vector<std::set<std::string>> live(c.steps.size());
  std::set<std::string> needed(c.head.begin(), c.head.end());
  for (std::size_t k = c.steps.size(); k-- > 0;) {
    live[k] = needed;
    for (const auto& v : step_variables(c.steps[k])) needed.insert(v);
  }

  BTTable state = rename_schema(input, c.head);
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const Step& s = c.steps[k];
    std::vector<std::string> fresh;
    for (const auto& v : step_variables(s))
      if (!state.index_of(v)) fresh.push_back(v);
    if (!fresh.empty()) state = extend(state, fresh, norms);

    ProgramPoint pp{version, clause, s.source_index};
    switch (s.kind) {
      case Step::Kind::Alias:
      case Step::Kind::Bind:
        state = abstract_unify(state, equation_of(s), norms);
        break;
      case Step::Kind::Builtin: {
        if (version >= 0) pre_states_[pp] = state;
        auto [next, d] = abstract_builtin(state, s, norms);
        state = std::move(next);
        if (version >= 0) decisions_[pp] = d;
        break;
      }
      case Step::Kind::Call: {
        if (version >= 0) {
          pre_states_[pp] = state;
          call_patterns_[pp] = rename_schema(project(state, s.args), head_schema(s.args.size()));
        }
        auto [next, d] = abstract_call(state, PredKey{s.functor, s.args.size()}, s.args);
        state = std::move(next);
        if (version >= 0) decisions_[pp] = d;
        break;
      }
    }
    std::vector<std::string> keep;
    for (const auto& v : state.schema())
      if (live[k].contains(v)) keep.push_back(v);
    if (keep.size() != state.arity()) state = project(state, keep);
  }
  return rename_schema(project(state, c.head), head_schema(c.head.size()));
}

AnalysisResult Analyser::run() {
  if (!cfg_.entry) {
    AnalysisResult empty;
    empty.norms = cfg_.norms;
    return empty;
  }
  const EntrySpec& e = *cfg_.entry;
  if (!clauses_.contains(e.pred)) throw AnalysisError("entry predicate " + e.pred.str() + " has no clauses");
  if (!cfg_.condition_for(e.pred)) throw AnalysisError("no unfold condition for entry predicate " + e.pred.str());
  register_version(e.pred, entry_pattern(e, cfg_.norms));

  while (true) {
    ++passes_;
    decisions_.clear();
    pre_states_.clear();
    call_patterns_.clear();
    bool changed = false;
    const std::size_t n = versions_.size();
    for (std::size_t step = 0; step < n; ++step) {
      const int v = static_cast<int>(opts_.reverse_order ? n - 1 - step : step);
      const PredKey pred = versions_[v].pred;
      const BTTable pattern = versions_[v].pattern;
      const auto& cs = clauses_of(pred);
      BTTable fresh = bottom(head_schema(pred.arity));
      for (std::size_t j = 0; j < cs.size(); ++j) {
        const std::size_t ci = opts_.reverse_order ? cs.size() - 1 - j : j;
        fresh = join(fresh, abstract_clause(cs[ci], pattern, v, static_cast<int>(ci)));
      }
      if (!fresh.subset_of(versions_[v].answer)) {
        BTTable grown = join(versions_[v].answer, fresh);
        if (!versions_[v].answer.subset_of(grown)) throw AnalysisError("answer table shrank");
        versions_[v].answer = std::move(grown);
        changed = true;
      }
    }
    if (versions_.size() != n) changed = true;
    if (!changed) break;
  }
  return collect();
}

// Keeps the versions reachable from the entry and numbers them in breadth-first
// order over program points, which makes the numbering independent of the
// evaluation order.
AnalysisResult Analyser::collect() const {
  std::vector<int> order{0};
  std::map<int, int> renum{{0, 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    for (auto it = decisions_.lower_bound(ProgramPoint{v, 0, 0});
         it != decisions_.end() && it->first.version == v; ++it) {
      int callee = it->second.callee;
      if (callee >= 0 && !renum.contains(callee)) {
        renum.emplace(callee, static_cast<int>(order.size()));
        order.push_back(callee);
      }
    }
  }
  AnalysisResult r;
  r.norms = cfg_.norms;
  r.passes = passes_;
  for (int v : order) r.versions.push_back(versions_[v]);
  auto remap = [&](ProgramPoint pp) {
    pp.version = renum.at(pp.version);
    return pp;
  };
  for (const auto& [pp, d] : decisions_) {
    if (!renum.contains(pp.version)) continue;
    Decision nd = d;
    if (nd.callee >= 0) nd.callee = renum.at(nd.callee);
    r.decisions.emplace(remap(pp), nd);
  }
  for (const auto& [pp, t] : pre_states_)
    if (renum.contains(pp.version)) r.pre_states.emplace(remap(pp), t);
  for (const auto& [pp, t] : call_patterns_)
    if (renum.contains(pp.version)) r.call_patterns.emplace(remap(pp), t);
  return r;
}

AnalysisResult analyse(const Program& p, const AnalysisConfig& cfg, AnalyseOptions opts) {
  return Analyser(p, cfg, opts).run();
}

}  // namespace lpspec
