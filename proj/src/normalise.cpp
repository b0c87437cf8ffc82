#include "lpspec/normalise.hpp"

#include <algorithm>
#include <map>

namespace lpspec {

namespace {

class Normaliser {
 public:
  explicit Normaliser(const Clause& c) : clause_(c) {}

  NormalisedClause run() {
    const Term& head = clause_.head;
    out_.pred = key_of(head);
    out_.literal_count = clause_.body.size();
    for (std::size_t i = 0; i < head.arity(); ++i) {
      std::string hv = "#" + std::to_string(i + 1);
      out_.head.push_back(hv);
      const Term& a = head.arg(i);
      // First occurrence of a variable as a whole head argument takes over
      // the head variable's name, so no alias equation is needed.
      if (a.is_var() && !rename_.contains(a.name())) rename_.emplace(a.name(), hv);
    }
    for (std::size_t i = 0; i < head.arity(); ++i) {
      const std::string& hv = out_.head[i];
      const Term& a = head.arg(i);
      if (a.is_var()) {
        std::string n = name_of(a);
        if (n != hv) emit_alias(hv, n, -1);
      } else {
        flatten_into(hv, a, -1);
      }
    }
    for (std::size_t k = 0; k < clause_.body.size(); ++k) literal(clause_.body[k], static_cast<int>(k));
    return std::move(out_);
  }

 private:
  std::string name_of(const Term& v) {
    auto it = rename_.find(v.name());
    return it == rename_.end() ? v.name() : it->second;
  }

  std::string fresh() { return "#t" + std::to_string(temp_++); }

  void emit_alias(const std::string& lhs, const std::string& rhs, int src) {
    Step s;
    s.kind = Step::Kind::Alias;
    s.lhs = lhs;
    s.args = {rhs};
    s.source_index = src;
    out_.steps.push_back(std::move(s));
  }

  void flatten_into(const std::string& target, const Term& t, int src) {
    Step s;
    s.kind = Step::Kind::Bind;
    s.functor = t.name();
    for (const auto& a : t.args()) s.args.push_back(flatten(a, src));
    s.lhs = target;
    s.source_index = src;
    out_.steps.push_back(std::move(s));
  }

  std::string flatten(const Term& t, int src) {
    if (t.is_var()) return name_of(t);
    std::string v = fresh();
    flatten_into(v, t, src);
    return v;
  }

  void literal(const Term& lit, int src) {
    Step s;
    s.source_index = src;
    s.is_literal = true;
    if (auto kind = builtin_kind(lit)) {
      s.kind = Step::Kind::Builtin;
      s.builtin = *kind;
      s.functor = lit.name();
      for (const auto& a : lit.args()) s.args.push_back(flatten(a, src));
    } else {
      s.kind = Step::Kind::Call;
      s.functor = lit.name();
      for (const auto& a : lit.args()) {
        if (a.is_var()) {
          std::string n = name_of(a);
          if (std::find(s.args.begin(), s.args.end(), n) == s.args.end()) {
            s.args.push_back(n);
            continue;
          }
          std::string v = fresh();
          emit_alias(v, n, src);
          s.args.push_back(v);
        } else {
          s.args.push_back(flatten(a, src));
        }
      }
    }
    out_.steps.push_back(std::move(s));
  }

  const Clause& clause_;
  NormalisedClause out_;
  std::map<std::string, std::string> rename_;
  int temp_ = 0;
};

Term var_list_term(const std::string& functor, const std::vector<std::string>& vars) {
  std::vector<Term> args;
  for (const auto& v : vars) args.push_back(Term::var(v));
  return Term::compound(functor, std::move(args));
}

}  // namespace

NormalisedClause normalise(const Clause& c) { return Normaliser(c).run(); }

std::vector<NormalisedClause> normalise(const Program& p) {
  std::vector<NormalisedClause> out;
  for (const auto& c : p.clauses()) out.push_back(normalise(c));
  return out;
}

std::vector<std::string> step_variables(const Step& s) {
  std::vector<std::string> out;
  if (!s.lhs.empty()) out.push_back(s.lhs);
  for (const auto& a : s.args)
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

Clause denormalise(const NormalisedClause& c) {
  Clause out{var_list_term(c.pred.name, c.head), {}};
  for (const auto& s : c.steps) {
    switch (s.kind) {
      case Step::Kind::Alias:
        out.body.push_back(Term::compound("=", {Term::var(s.lhs), Term::var(s.args[0])}));
        break;
      case Step::Kind::Bind:
        out.body.push_back(Term::compound("=", {Term::var(s.lhs), var_list_term(s.functor, s.args)}));
        break;
      case Step::Kind::Builtin:
      case Step::Kind::Call:
        out.body.push_back(var_list_term(s.functor, s.args));
        break;
    }
  }
  return out;
}

Program denormalise(const std::vector<NormalisedClause>& cs) {
  Program p;
  for (const auto& c : cs) p.add(denormalise(c));
  return p;
}

}  // namespace lpspec
