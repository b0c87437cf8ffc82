#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "lpspec/term.hpp"

namespace lpspec::detail {

// Binding store with a trail for undoing on backtracking.
class Store {
 public:
  Term walk(Term t) const {
    while (t.is_var()) {
      auto it = map_.find(t.name());
      if (it == map_.end()) break;
      t = it->second;
    }
    return t;
  }

  Term resolve(const Term& t) const {
    if (t.is_ground()) return t;
    Term w = walk(t);
    if (w.is_var() || w.is_ground()) return w;
    std::vector<Term> args;
    args.reserve(w.arity());
    for (const auto& a : w.args()) args.push_back(resolve(a));
    return Term::compound(w.name(), std::move(args));
  }

  bool unify(const Term& x, const Term& y) {
    Term a = walk(x);
    Term b = walk(y);
    if (a.same_node(b)) return true;
    if (a.is_var()) {
      if (b.is_var() && a.name() == b.name()) return true;
      bind(a.name(), b);
      return true;
    }
    if (b.is_var()) {
      bind(b.name(), a);
      return true;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return false;
    if (a.is_ground() && b.is_ground()) return a == b;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!unify(a.arg(i), b.arg(i))) return false;
    return true;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t m) {
    while (trail_.size() > m) {
      map_.erase(trail_.back());
      trail_.pop_back();
    }
  }

 private:
  void bind(const std::string& v, Term t) {
    map_.emplace(v, std::move(t));
    trail_.push_back(v);
  }

  std::unordered_map<std::string, Term> map_;
  std::vector<std::string> trail_;
};

}  // namespace lpspec::detail
