#include "lpspec/compare.hpp"

#include <deque>
#include <unordered_map>

namespace lpspec {

namespace {

class Matcher {
 public:
  Matcher(const Program& a, const Program& e) : a_(a), e_(e) {}

  ComparisonReport run(const PredKey& ra, const PredKey& re) {
    if (!bind(ra, re)) fail("entry " + ra.str() + " cannot map to " + re.str());
    while (report_.diffs.empty() && !queue_.empty()) {
      auto [pa, pe] = queue_.front();
      queue_.pop_front();
      compare_pred(pa, pe);
    }
    if (report_.diffs.empty()) {
      for (const auto& p : a_.predicates())
        if (!fwd_.contains(p)) fail("predicate " + p.str() + " of the actual program is unreachable from the entry");
      for (const auto& p : e_.predicates())
        if (!bwd_.contains(p)) fail("predicate " + p.str() + " of the expected program is unreachable from the entry");
    }
    for (const auto& [x, y] : fwd_) report_.bijection.emplace(x.str(), y.str());
    report_.match = report_.diffs.empty();
    return std::move(report_);
  }

 private:
  void fail(std::string msg) { report_.diffs.push_back(std::move(msg)); }

  bool bind(const PredKey& pa, const PredKey& pe) {
    if (pa.arity != pe.arity) return false;
    auto f = fwd_.find(pa);
    auto b = bwd_.find(pe);
    if (f != fwd_.end() || b != bwd_.end()) return f != fwd_.end() && b != bwd_.end() && f->second == pe;
    fwd_.emplace(pa, pe);
    bwd_.emplace(pe, pa);
    queue_.emplace_back(pa, pe);
    return true;
  }

  bool same_term(const Term& x, const Term& y) {
    if (x.is_var() || y.is_var()) {
      if (!(x.is_var() && y.is_var())) return false;
      auto [f, fi] = vf_.try_emplace(x.name(), y.name());
      auto [g, gi] = vb_.try_emplace(y.name(), x.name());
      return f->second == y.name() && g->second == x.name();
    }
    if (x.name() != y.name() || x.arity() != y.arity()) return false;
    for (std::size_t i = 0; i < x.arity(); ++i)
      if (!same_term(x.arg(i), y.arg(i))) return false;
    return true;
  }

  bool same_literal(const Term& x, const Term& y) {
    if (x.is_var() || y.is_var()) return false;
    if (is_builtin(x) || is_builtin(y)) {
      if (x.name() != y.name() || x.arity() != y.arity()) return false;
    } else if (!bind(key_of(x), key_of(y))) {
      return false;
    }
    for (std::size_t i = 0; i < x.arity(); ++i)
      if (!same_term(x.arg(i), y.arg(i))) return false;
    return true;
  }

  bool same_clause(const Clause& x, const Clause& y) {
    vf_.clear();
    vb_.clear();
    if (x.body.size() != y.body.size()) return false;
    if (!same_literal(x.head, y.head)) return false;
    for (std::size_t i = 0; i < x.body.size(); ++i)
      if (!same_literal(x.body[i], y.body[i])) return false;
    return true;
  }

  void compare_pred(const PredKey& pa, const PredKey& pe) {
    auto ca = a_.clauses_for(pa);
    auto ce = e_.clauses_for(pe);
    if (ca.size() != ce.size()) {
      fail(pa.str() + " has " + std::to_string(ca.size()) + " clauses, " + pe.str() + " has " +
           std::to_string(ce.size()));
      return;
    }
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (!same_clause(*ca[i], *ce[i])) {
        fail("clause " + std::to_string(i + 1) + " of " + pa.str() + " differs: " +
             to_string(*ca[i], VarNaming::Canonical) + "  vs  " + to_string(*ce[i], VarNaming::Canonical));
        return;
      }
    }
  }

  const Program& a_;
  const Program& e_;
  std::map<PredKey, PredKey> fwd_, bwd_;
  std::deque<std::pair<PredKey, PredKey>> queue_;
  std::unordered_map<std::string, std::string> vf_, vb_;
  ComparisonReport report_;
};

}  // namespace

ComparisonReport compare_residual(const Program& actual, const PredKey& actual_entry, const Program& expected,
                                  std::optional<PredKey> expected_entry) {
  if (expected_entry) return Matcher(actual, expected).run(actual_entry, *expected_entry);
  std::optional<ComparisonReport> first;
  for (const auto& p : expected.predicates()) {
    if (p.arity != actual_entry.arity) continue;
    auto r = Matcher(actual, expected).run(actual_entry, p);
    if (r.match) return r;
    if (!first) first = std::move(r);
  }
  if (first) return *first;
  ComparisonReport none;
  none.diffs.push_back("no expected predicate has the arity of " + actual_entry.str());
  return none;
}

}  // namespace lpspec
