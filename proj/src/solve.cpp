#include "lpspec/solve.hpp"

#include "store.hpp"

#include <algorithm>
#include <memory>

namespace lpspec {

namespace {

struct GoalNode {
  Term lit;
  std::shared_ptr<const GoalNode> next;
};
using GoalList = std::shared_ptr<const GoalNode>;

GoalList push_front(const std::vector<Term>& lits, GoalList rest) {
  for (auto it = lits.rbegin(); it != lits.rend(); ++it)
    rest = std::make_shared<const GoalNode>(GoalNode{*it, std::move(rest)});
  return rest;
}

struct ChoicePoint {
  Term call;
  GoalList rest;
  std::vector<const Clause*> clauses;
  std::size_t next_clause;
  std::size_t trail_mark;
  std::uint64_t steps;
};

}  // namespace

SolveResult solve(const Program& p, const std::vector<Term>& goal, std::uint64_t depth) {
  SolveResult result;
  std::vector<std::string> goal_vars;
  for (const auto& g : goal) collect_variables(g, goal_vars);

  detail::Store store;
  FreshNames fresh("_#s");
  std::vector<ChoicePoint> stack;
  GoalList current = push_front(goal, nullptr);
  std::uint64_t steps = 0;

  // Resumes the most recent choice point; false when the tree is exhausted.
  auto backtrack = [&]() -> bool {
    while (!stack.empty()) {
      auto& cp = stack.back();
      store.undo(cp.trail_mark);
      while (cp.next_clause < cp.clauses.size()) {
        const Clause* c = cp.clauses[cp.next_clause++];
        Clause r = rename_apart(*c, fresh);
        if (store.unify(r.head, cp.call)) {
          current = push_front(r.body, cp.rest);
          steps = cp.steps + 1;
          return true;
        }
        store.undo(cp.trail_mark);
      }
      stack.pop_back();
    }
    return false;
  };

  while (true) {
    if (!current) {
      Substitution ans;
      for (const auto& v : goal_vars) {
        Term val = store.resolve(Term::var(v));
        if (!(val.is_var() && val.name() == v)) ans.bind(v, val);
      }
      result.answers.push_back(std::move(ans));
      if (!backtrack()) break;
      continue;
    }
    Term lit = store.walk(current->lit);
    GoalList rest = current->next;
    if (lit.is_var()) throw RunError("uninstantiated goal");
    if (auto kind = builtin_kind(lit)) {
      bool ok = true;
      switch (*kind) {
        case BuiltinKind::True:
          break;
        case BuiltinKind::Unify:
          ok = store.unify(lit.arg(0), lit.arg(1));
          break;
        case BuiltinKind::NotIdentical: {
          Term a = store.resolve(lit.arg(0));
          Term b = store.resolve(lit.arg(1));
          if (!a.is_ground() || !b.is_ground())
            throw RunError("\\== on non-ground arguments: " + to_string(Term::compound("\\==", {a, b})));
          ok = !(a == b);
          break;
        }
        case BuiltinKind::Ground:
          ok = store.resolve(lit.arg(0)).is_ground();
          break;
      }
      if (ok) {
        current = rest;
      } else if (!backtrack()) {
        break;
      }
      continue;
    }
    if (steps >= depth) {
      result.complete = false;
      if (!backtrack()) break;
      continue;
    }
    stack.push_back(ChoicePoint{lit, rest, p.clauses_for(key_of(lit)), 0, store.mark(), steps});
    if (!backtrack()) break;
  }
  return result;
}

std::vector<std::string> answer_set(const SolveResult& r, const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& s : r.answers) {
    std::vector<Term> vals;
    for (const auto& v : vars) vals.push_back(apply(s, Term::var(v)));
    out.push_back(canonical_string(Term::compound("ans", std::move(vals))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> answer_set(const SolveResult& r, const std::vector<Term>& goal) {
  std::vector<std::string> vars;
  for (const auto& g : goal) collect_variables(g, vars);
  return answer_set(r, vars);
}

}  // namespace lpspec
