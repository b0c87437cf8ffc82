#include "lpspec/config.hpp"

#include <algorithm>

#include "lpspec/parser.hpp"

namespace lpspec {

const Condition* AnalysisConfig::condition_for(const PredKey& p) const {
  auto it = unfold.find(p);
  return it == unfold.end() ? nullptr : &it->second.condition;
}

namespace {

class ConfigReader {
 public:
  explicit ConfigReader(std::string_view text) : r_(text) {}

  AnalysisConfig run() {
    AnalysisConfig cfg;
    bool seen_norms = false;
    while (!r_.at_eof()) {
      Token kw = r_.peek();
      if (r_.at_atom("entry")) {
        r_.next();
        if (cfg.entry) r_.fail_at(kw, "duplicate entry declaration");
        cfg.entry = entry();
      } else if (r_.at_atom("unfold")) {
        r_.next();
        Token at = r_.peek();
        auto [key, rule] = unfold();
        if (!cfg.unfold.emplace(key, std::move(rule)).second)
          r_.fail_at(at, "duplicate unfold rule for " + key.str());
      } else if (r_.at_atom("norms")) {
        r_.next();
        if (seen_norms) r_.fail_at(kw, "duplicate norms declaration");
        seen_norms = true;
        cfg.norms = norms();
      } else {
        r_.fail("expected 'entry', 'unfold' or 'norms'");
      }
    }
    return cfg;
  }

 private:
  EntrySpec entry() {
    Token at = r_.peek();
    Term t = r_.term();
    r_.expect_end();
    if (t.is_var()) r_.fail_at(at, "entry must name a predicate");
    EntrySpec e{key_of(t), {}};
    for (const auto& a : t.args()) {
      if (!a.is_atom()) r_.fail_at(at, "entry arguments must be ground, list or dyn");
      if (a.name() == "ground") {
        e.values.push_back(BTValue::G);
      } else if (a.name() == "list") {
        e.values.push_back(BTValue::L);
      } else if (a.name() == "dyn") {
        e.values.push_back(BTValue::D);
      } else {
        r_.fail_at(at, "unknown binding time '" + a.name() + "'");
      }
    }
    return e;
  }

  std::pair<PredKey, UnfoldRule> unfold() {
    Token at = r_.peek();
    Term head = r_.term();
    if (head.is_var()) r_.fail_at(at, "unfold rule must name a predicate");
    UnfoldRule rule;
    for (const auto& a : head.args()) {
      if (!a.is_var() || a.name().rfind("_#_", 0) == 0) r_.fail_at(at, "unfold parameters must be named variables");
      if (std::find(rule.params.begin(), rule.params.end(), a.name()) != rule.params.end())
        r_.fail_at(at, "repeated unfold parameter " + a.name());
      rule.params.push_back(a.name());
    }
    if (!r_.at_atom(":")) r_.fail("expected ':'");
    r_.next();
    rule.condition = disjunction(rule.params);
    r_.expect_end();
    return {key_of(head), std::move(rule)};
  }

  Condition disjunction(const std::vector<std::string>& params) {
    Condition c = conjunction(params);
    while (r_.at_atom(";")) {
      r_.next();
      c = Condition::either(std::move(c), conjunction(params));
    }
    return c;
  }

  Condition conjunction(const std::vector<std::string>& params) {
    Condition c = primary(params);
    while (r_.at_punct(",")) {
      r_.next();
      c = Condition::both(std::move(c), primary(params));
    }
    return c;
  }

  Condition primary(const std::vector<std::string>& params) {
    if (r_.at_punct("(")) {
      r_.next();
      Condition c = disjunction(params);
      r_.expect_punct(")");
      return c;
    }
    Token at = r_.peek();
    Term t = r_.term();
    if (t.is_atom() && t.name() == "true") return Condition::truth();
    if (!t.is_var() && t.arity() == 1 && (t.name() == "ground" || t.name() == "bounded_list")) {
      const Term& v = t.arg(0);
      auto it = v.is_var() ? std::find(params.begin(), params.end(), v.name()) : params.end();
      if (it == params.end()) r_.fail_at(at, "condition must refer to a parameter of the rule head");
      auto pos = static_cast<std::size_t>(it - params.begin());
      return t.name() == "ground" ? Condition::ground(pos) : Condition::bounded_list(pos);
    }
    r_.fail_at(at, "unsupported condition " + to_string(t));
  }

  Norms norms() {
    Norms n{.listlength = false};
    bool termsize = false;
    while (true) {
      Token at = r_.next();
      if (at.kind != TokKind::Atom) r_.fail_at(at, "expected a norm name");
      if (at.text == "termsize") {
        termsize = true;
      } else if (at.text == "listlength") {
        n.listlength = true;
      } else {
        r_.fail_at(at, "unknown norm '" + at.text + "'");
      }
      if (!r_.at_punct(",")) break;
      r_.next();
    }
    if (!termsize) r_.fail("the termsize norm is always required");
    r_.expect_end();
    return n;
  }

  TermReader r_;
};

}  // namespace

AnalysisConfig parse_config(std::string_view text) { return ConfigReader(text).run(); }

}  // namespace lpspec
