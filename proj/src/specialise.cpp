#include "lpspec/specialise.hpp"

#include <deque>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "store.hpp"

namespace lpspec {

BuiltinOutcome evaluate_builtin(const Term& lit) {
  using K = BuiltinOutcome::Kind;
  auto kind = builtin_kind(lit);
  if (!kind) throw Error("not a builtin: " + to_string(lit));
  switch (*kind) {
    case BuiltinKind::True:
      return {K::Succeeds, {}};
    case BuiltinKind::Unify: {
      auto s = unify(lit.arg(0), lit.arg(1));
      if (!s) return {K::Fails, {}};
      return {K::Succeeds, std::move(*s)};
    }
    case BuiltinKind::NotIdentical:
      if (!lit.arg(0).is_ground() || !lit.arg(1).is_ground()) return {K::Residualise, {}};
      return {lit.arg(0) == lit.arg(1) ? K::Fails : K::Succeeds, {}};
    case BuiltinKind::Ground:
      return {lit.arg(0).is_ground() ? K::Succeeds : K::Residualise, {}};
  }
  return {K::Residualise, {}};
}

Term generalise_call(const Term& atom, const std::vector<BTValue>& classification, FreshNames& fresh) {
  if (classification.size() != atom.arity())
    throw SpecialiseError(SpecialiseError::Kind::GoalMismatch, "classification arity differs for " + to_string(atom));
  std::vector<Term> args;
  for (std::size_t i = 0; i < atom.arity(); ++i) {
    if (classification[i] == BTValue::G) {
      if (!atom.arg(i).is_ground())
        throw SpecialiseError(SpecialiseError::Kind::GoalMismatch,
                              "argument " + std::to_string(i + 1) + " of " + to_string(atom) +
                                  " is classified ground but is not");
      args.push_back(atom.arg(i));
    } else {
      args.push_back(fresh.next_var());
    }
  }
  return Term::compound(atom.name(), std::move(args));
}

Term filter(const Term& atom, const std::vector<BTValue>& classification, const std::string& name) {
  std::vector<Term> args;
  for (std::size_t i = 0; i < atom.arity(); ++i)
    if (classification.at(i) != BTValue::G) args.push_back(atom.arg(i));
  return Term::compound(name, std::move(args));
}

namespace {

Term residual_call(const SpecTask& task, const Term& instance) {
  auto s = match(task.atom, instance);
  if (!s) throw Error("residual call " + to_string(instance) + " is not an instance of " + to_string(task.atom));
  std::vector<Term> args;
  for (std::size_t i = 0; i < task.atom.arity(); ++i)
    if (!task.dropped[i]) args.push_back(apply(*s, task.atom.arg(i)));
  return Term::compound(task.name, std::move(args));
}

struct Item {
  Term lit;
  int version = -1;
  int clause = -1;
  int literal = -1;
};

struct ItemNode {
  Item item;
  std::shared_ptr<const ItemNode> next;
};
using ItemList = std::shared_ptr<const ItemNode>;

struct Residual {
  Term lit;
  bool memo = false;
  int version = -1;  // callee version of an off-line memo call
};

class Engine {
 public:
  Engine(const AnnotatedProgram* a, const Program* p, const AnalysisConfig* cfg, const SpecialiseOptions& opts)
      : annotated_(a), program_(p), cfg_(cfg), opts_(opts) {}

  ResidualProgram run(const Term& goal) {
    if (goal.is_var()) throw SpecialiseError(SpecialiseError::Kind::GoalMismatch, "goal is a variable");
    int root_version = -1;
    std::vector<BTValue> cls;
    if (annotated_) {
      if (annotated_->versions.empty())
        throw SpecialiseError(SpecialiseError::Kind::GoalMismatch, "annotations have no entry version");
      const auto& v0 = annotated_->version(0);
      if (v0.pred != key_of(goal))
        throw SpecialiseError(SpecialiseError::Kind::GoalMismatch,
                              "goal " + key_of(goal).str() + " does not match entry " + v0.pred.str());
      cls = v0.classification;
      root_version = 0;
    } else {
      if (!cfg_->entry) throw SpecialiseError(SpecialiseError::Kind::GoalMismatch, "configuration has no entry");
      if (cfg_->entry->pred != key_of(goal))
        throw SpecialiseError(SpecialiseError::Kind::GoalMismatch,
                              "goal " + key_of(goal).str() + " does not match entry " + cfg_->entry->pred.str());
      cls = cfg_->entry->values;
    }
    for (std::size_t i = 0; i < goal.arity(); ++i) {
      if (!bt_leq(cls[i], concrete_bt(goal.arg(i))))
        throw SpecialiseError(SpecialiseError::Kind::GoalMismatch,
                              "argument " + std::to_string(i + 1) + " of the goal is not " +
                                  std::string(1, bt_char(cls[i])));
    }
    register_task(generalise_call(goal, cls, fresh_), root_version);
    while (!queue_.empty()) {
      std::size_t t = queue_.front();
      queue_.pop_front();
      unfold_task(t);
    }
    return std::move(out_);
  }

 private:
  std::size_t register_task(const Term& atom, int version) {
    std::string key = canonical_string(atom);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    if (out_.tasks.size() >= opts_.max_tasks)
      throw SpecialiseError(SpecialiseError::Kind::GlobalControl,
                            "global control overrun: more than " + std::to_string(opts_.max_tasks) + " tasks");
    SpecTask task{atom, version, atom.name() + "__" + std::to_string(out_.tasks.size()), {}};
    for (const auto& a : atom.args()) task.dropped.push_back(a.is_ground());
    std::size_t id = out_.tasks.size();
    out_.tasks.push_back(std::move(task));
    index_.emplace(std::move(key), id);
    queue_.push_back(id);
    return id;
  }

  // Candidate clauses for resolving a call, with the version their body tags
  // come from.
  std::vector<std::pair<const Clause*, int>> clauses_for(const Term& lit, int version) const {
    std::vector<std::pair<const Clause*, int>> out;
    if (annotated_) {
      for (const auto& ac : annotated_->version(version).clauses) out.emplace_back(&ac.clause, version);
    } else {
      for (const Clause* c : program_->clauses_for(key_of(lit))) out.emplace_back(c, -1);
    }
    return out;
  }

  void unfold_task(std::size_t t) {
    current_ = t;
    const Term atom = out_.tasks[t].atom;
    std::vector<Residual> residual;
    resolve_call(atom, out_.tasks[t].version, nullptr, residual, 0);
  }

  void resolve_call(const Term& lit, int version, const ItemList& rest, std::vector<Residual>& residual,
                    std::size_t depth) {
    if (depth + 1 > opts_.max_unfold_depth)
      throw SpecialiseError(SpecialiseError::Kind::LocalControl,
                            "local control overrun: unfolding deeper than " + std::to_string(opts_.max_unfold_depth) +
                                " steps in the tree of " + out_.tasks[current_].name);
    auto candidates = clauses_for(lit, version);
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      auto [clause, v] = candidates[ci];
      const std::size_t mark = store_.mark();
      Clause r = rename_apart(*clause, fresh_);
      if (store_.unify(r.head, lit)) {
        ItemList goals = rest;
        for (std::size_t k = r.body.size(); k-- > 0;)
          goals = std::make_shared<const ItemNode>(
              ItemNode{Item{r.body[k], v, static_cast<int>(ci), static_cast<int>(k)}, goals});
        expand(goals, residual, depth + 1);
      }
      store_.undo(mark);
    }
  }

  Decision decide(const Item& item, const Term& lit) const {
    if (annotated_) return annotated_->version(item.version).clauses.at(item.clause).tags.at(item.literal);
    const Condition* cond = cfg_->condition_for(key_of(lit));
    if (!cond)
      throw SpecialiseError(SpecialiseError::Kind::MissingCondition, "no unfold condition for " + key_of(lit).str());
    return Decision{cond->holds(concrete_values(lit)) ? Decision::Kind::Unfold : Decision::Kind::Memo, -1};
  }

  std::vector<BTValue> concrete_values(const Term& lit) const {
    std::vector<BTValue> vals;
    for (const auto& a : lit.args()) {
      BTValue v = concrete_bt(a);
      // Without the listlength norm only groundness is observable.
      if (!cfg_->norms.listlength && v == BTValue::L) v = BTValue::D;
      vals.push_back(v);
    }
    return vals;
  }

  void expand(const ItemList& goals, std::vector<Residual>& residual, std::size_t depth) {
    if (!goals) {
      emit_clause(residual);
      return;
    }
    const Item& item = goals->item;
    Term lit = store_.resolve(item.lit);
    if (is_builtin(lit)) {
      auto outcome = evaluate_builtin(lit);
      switch (outcome.kind) {
        case BuiltinOutcome::Kind::Fails:
          return;
        case BuiltinOutcome::Kind::Succeeds: {
          const std::size_t mark = store_.mark();
          bool ok = true;
          for (const auto& [v, t] : outcome.subst.bindings()) ok = ok && store_.unify(Term::var(v), t);
          if (ok) expand(goals->next, residual, depth);
          store_.undo(mark);
          return;
        }
        case BuiltinOutcome::Kind::Residualise:
          residual.push_back(Residual{item.lit, false, -1});
          expand(goals->next, residual, depth);
          residual.pop_back();
          return;
      }
    }
    if (annotated_ && opts_.on_literal) opts_.on_literal(ProgramPoint{item.version, item.clause, item.literal}, lit);
    Decision d = decide(item, lit);
    if (d.kind == Decision::Kind::Unfold) {
      resolve_call(lit, d.callee, goals->next, residual, depth);
    } else if (d.kind == Decision::Kind::Memo) {
      residual.push_back(Residual{item.lit, true, d.callee});
      expand(goals->next, residual, depth);
      residual.pop_back();
    } else {
      throw Error("user call " + to_string(lit) + " tagged as a builtin");
    }
  }

  Term generalise_online(const Term& inst) {
    const Condition* cond = cfg_->condition_for(key_of(inst));
    if (!cond)
      throw SpecialiseError(SpecialiseError::Kind::MissingCondition, "no unfold condition for " + key_of(inst).str());
    auto vals = concrete_values(inst);
    std::vector<Term> args;
    for (std::size_t i = 0; i < inst.arity(); ++i) {
      bool keep = true;
      for (auto k : cond->atoms_on(i)) {
        if (k == Condition::Kind::Ground && !g_bit(vals[i])) keep = false;
        if (k == Condition::Kind::BoundedList && !l_bit(vals[i])) keep = false;
      }
      args.push_back(keep ? inst.arg(i) : fresh_.next_var());
    }
    return Term::compound(inst.name(), std::move(args));
  }

  void emit_clause(const std::vector<Residual>& residual) {
    const std::size_t t = current_;
    Term head = residual_call(out_.tasks[t], store_.resolve(out_.tasks[t].atom));
    Clause c{head, {}};
    for (const auto& r : residual) {
      Term inst = store_.resolve(r.lit);
      if (!r.memo) {
        c.body.push_back(inst);
        continue;
      }
      Term gen = annotated_ ? generalise_call(inst, annotated_->version(r.version).classification, fresh_)
                            : generalise_online(inst);
      std::size_t callee = register_task(gen, r.version);
      c.body.push_back(residual_call(out_.tasks[callee], inst));
    }
    out_.program.add(std::move(c));
  }

  const AnnotatedProgram* annotated_;
  const Program* program_;
  const AnalysisConfig* cfg_;
  SpecialiseOptions opts_;
  detail::Store store_;
  FreshNames fresh_{"_#p"};
  ResidualProgram out_;
  std::unordered_map<std::string, std::size_t> index_;
  std::deque<std::size_t> queue_;
  std::size_t current_ = 0;
};

}  // namespace

std::optional<Term> ResidualProgram::rename_query(const Term& q) const {
  if (tasks.empty() || q.is_var() || !match(tasks[0].atom, q)) return std::nullopt;
  return residual_call(tasks[0], q);
}

PredKey ResidualProgram::entry_pred() const {
  if (tasks.empty()) throw Error("empty residual program");
  std::size_t n = 0;
  for (bool d : tasks[0].dropped) n += d ? 0 : 1;
  return PredKey{tasks[0].name, n};
}

std::string ResidualProgram::to_text() const {
  std::ostringstream os;
  for (const auto& c : program.clauses()) os << to_string(c, VarNaming::Canonical) << "\n";
  return os.str();
}

ResidualProgram specialise(const AnnotatedProgram& a, const Term& goal, const SpecialiseOptions& opts) {
  return Engine(&a, nullptr, nullptr, opts).run(goal);
}

ResidualProgram specialise_online(const Program& p, const AnalysisConfig& cfg, const Term& goal,
                                  const SpecialiseOptions& opts) {
  return Engine(nullptr, &p, &cfg, opts).run(goal);
}

}  // namespace lpspec
