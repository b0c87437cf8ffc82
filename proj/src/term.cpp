#include "lpspec/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace lpspec {

Term Term::var(std::string name) {
  auto node = std::make_shared<detail::TermNode>();
  node->is_var = true;
  node->ground = false;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::atom(std::string name) { return compound(std::move(name), {}); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  auto node = std::make_shared<detail::TermNode>();
  node->name = std::move(functor);
  node->ground = std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
  node->args = std::move(args);
  return Term(std::move(node));
}

Term Term::nil() {
  static const Term kNil = atom("[]");
  return kNil;
}

Term Term::cons(Term head, Term tail) { return compound(".", {std::move(head), std::move(tail)}); }

Term Term::list(const std::vector<Term>& items) { return list(items, nil()); }

Term Term::list(const std::vector<Term>& items, Term tail) {
  Term out = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_var() != b.is_var() || a.name() != b.name() || a.arity() != b.arity()) return false;
  if (a.is_ground() != b.is_ground()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.arg(i) == b.arg(i))) return false;
  return true;
}

PredKey key_of(const Term& atom) {
  if (atom.is_var()) throw Error("variable used where an atom was expected");
  return {atom.name(), atom.arity()};
}

std::optional<BuiltinKind> builtin_kind(const Term& literal) {
  if (literal.is_var()) return std::nullopt;
  const auto& n = literal.name();
  switch (literal.arity()) {
    case 0:
      if (n == "true") return BuiltinKind::True;
      break;
    case 1:
      if (n == "ground") return BuiltinKind::Ground;
      break;
    case 2:
      if (n == "=") return BuiltinKind::Unify;
      if (n == "\\==") return BuiltinKind::NotIdentical;
      break;
    default:
      break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Program

Program::Program(std::vector<Clause> clauses) {
  for (auto& c : clauses) add(std::move(c));
}

void Program::add(Clause clause) {
  auto key = clause.key();
  auto [it, inserted] = index_.try_emplace(key);
  if (inserted) order_.push_back(key);
  it->second.push_back(clauses_.size());
  clauses_.push_back(std::move(clause));
}

std::vector<const Clause*> Program::clauses_for(const PredKey& key) const {
  std::vector<const Clause*> out;
  auto it = index_.find(key);
  if (it == index_.end()) return out;
  out.reserve(it->second.size());
  for (auto i : it->second) out.push_back(&clauses_[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term value) {
  bindings_.insert_or_assign(var, std::move(value));
}

Substitution Substitution::restricted(const std::vector<std::string>& vars) const {
  Substitution out;
  for (const auto& v : vars)
    if (auto* t = lookup(v)) out.bind(v, *t);
  return out;
}

Term apply(const Substitution& s, const Term& t) {
  if (t.is_ground() || s.empty()) return t;
  if (t.is_var()) {
    const Term* bound = s.lookup(t.name());
    return bound ? *bound : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply(s, a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::compound(t.name(), std::move(args)) : t;
}

Clause apply(const Substitution& s, const Clause& c) { return {apply(s, c.head), apply(s, c.body)}; }

std::vector<Term> apply(const Substitution& s, const std::vector<Term>& ts) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(apply(s, t));
  return out;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

// Triangular bindings; resolved to an idempotent substitution at the end.
class Unifier {
 public:
  Term walk(Term t) const {
    while (t.is_var()) {
      auto it = map_.find(t.name());
      if (it == map_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool unify(const Term& x, const Term& y) {
    Term a = walk(x);
    Term b = walk(y);
    if (a.same_node(b)) return true;
    if (a.is_var()) {
      if (b.is_var() && a.name() == b.name()) return true;
      map_.insert_or_assign(a.name(), b);
      return true;
    }
    if (b.is_var()) {
      map_.insert_or_assign(b.name(), a);
      return true;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return false;
    if (a.is_ground() && b.is_ground()) return a == b;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!unify(a.arg(i), b.arg(i))) return false;
    return true;
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

  Substitution result() const {
    Substitution s;
    for (const auto& [v, _] : map_) {
      Term r = resolve(Term::var(v));
      if (!(r.is_var() && r.name() == v)) s.bind(v, r);
    }
    return s;
  }

 private:
  std::unordered_map<std::string, Term> map_;
};

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Unifier u;
  if (!u.unify(a, b)) return std::nullopt;
  return u.result();
}

namespace {
bool match_into(const Term& pattern, const Term& instance, std::map<std::string, Term>& binding) {
  if (pattern.is_var()) {
    auto [it, inserted] = binding.try_emplace(pattern.name(), instance);
    return inserted || it->second == instance;
  }
  if (instance.is_var()) return false;
  if (pattern.name() != instance.name() || pattern.arity() != instance.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.arg(i), instance.arg(i), binding)) return false;
  return true;
}
}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& instance) {
  std::map<std::string, Term> binding;
  if (!match_into(pattern, instance, binding)) return std::nullopt;
  Substitution s;
  for (auto& [v, t] : binding) s.bind(v, t);
  return s;
}

// ---------------------------------------------------------------------------
// Renaming and variants

std::string FreshNames::next_name() { return prefix_ + std::to_string(counter_++); }

namespace {
Term rename_with(const Term& t, std::unordered_map<std::string, Term>& map, FreshNames& fresh) {
  if (t.is_ground()) return t;
  if (t.is_var()) {
    auto it = map.find(t.name());
    if (it == map.end()) it = map.emplace(t.name(), fresh.next_var()).first;
    return it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(rename_with(a, map, fresh));
  return Term::compound(t.name(), std::move(args));
}
}  // namespace

Clause rename_apart(const Clause& c, FreshNames& fresh) {
  std::unordered_map<std::string, Term> map;
  Clause out{rename_with(c.head, map, fresh), {}};
  out.body.reserve(c.body.size());
  for (const auto& b : c.body) out.body.push_back(rename_with(b, map, fresh));
  return out;
}

Term rename_apart(const Term& t, FreshNames& fresh) {
  std::unordered_map<std::string, Term> map;
  return rename_with(t, map, fresh);
}

namespace {
struct VariantChecker {
  std::unordered_map<std::string, std::string> fwd, bwd;

  bool check(const Term& a, const Term& b) {
    if (a.is_var() || b.is_var()) {
      if (!(a.is_var() && b.is_var())) return false;
      auto [f, fi] = fwd.try_emplace(a.name(), b.name());
      auto [g, gi] = bwd.try_emplace(b.name(), a.name());
      return f->second == b.name() && g->second == a.name();
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return false;
    if (a.is_ground() != b.is_ground()) return false;
    if (a.is_ground()) return a == b;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!check(a.arg(i), b.arg(i))) return false;
    return true;
  }
};
}  // namespace

bool alpha_equal(const Term& a, const Term& b) { return VariantChecker{}.check(a, b); }

bool alpha_equal(const Clause& a, const Clause& b) {
  if (a.body.size() != b.body.size()) return false;
  VariantChecker vc;
  if (!vc.check(a.head, b.head)) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!vc.check(a.body[i], b.body[i])) return false;
  return true;
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

std::vector<std::string> variables(const Clause& c) {
  std::vector<std::string> out;
  collect_variables(c.head, out);
  for (const auto& b : c.body) collect_variables(b, out);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool is_symbol_char(char c) {
  static constexpr std::string_view kSymbols = "+-*/\\^<>=~:.?@#&$";
  return kSymbols.find(c) != std::string_view::npos;
}

bool needs_quotes(const std::string& name) {
  if (name.empty()) return true;
  if (name == "[]" || name == "!" || name == ";") return false;
  if (std::islower(static_cast<unsigned char>(name[0]))) {
    return !std::all_of(name.begin(), name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }
  if (std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return false;
  if (std::all_of(name.begin(), name.end(), is_symbol_char)) return name == ".";
  return true;
}

std::string atom_text(const std::string& name) {
  if (!needs_quotes(name)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

using Namer = std::function<std::string(const std::string&)>;

void print(std::ostream& os, const Term& t, const Namer& name_of) {
  if (t.is_var()) {
    os << name_of(t.name());
    return;
  }
  if (t.is_cons()) {
    os << '[';
    print(os, t.arg(0), name_of);
    Term rest = t.arg(1);
    while (rest.is_cons()) {
      os << ',';
      print(os, rest.arg(0), name_of);
      rest = rest.arg(1);
    }
    if (!rest.is_nil()) {
      os << '|';
      print(os, rest, name_of);
    }
    os << ']';
    return;
  }
  if (t.name() == "," && t.arity() == 2) {
    os << '(';
    print(os, t.arg(0), name_of);
    os << ',';
    print(os, t.arg(1), name_of);
    os << ')';
    return;
  }
  os << atom_text(t.name());
  if (t.arity() == 0) return;
  os << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << ',';
    print(os, t.arg(i), name_of);
  }
  os << ')';
}

// Parser-made anonymous variables print as "_"; other generated names keep
// their counter so sharing stays visible.
std::string source_name(const std::string& v) {
  if (v.rfind("_#_", 0) == 0) return "_";
  if (v.find('#') == std::string::npos) return v;
  std::string out = "_G";
  for (char c : v)
    if (c != '#' && c != '_') out += c;
  return out;
}

std::string canonical_name(std::size_t i) {
  std::string s(1, static_cast<char>('A' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

Namer canonical_namer(const std::vector<std::string>& order) {
  auto map = std::make_shared<std::unordered_map<std::string, std::string>>();
  for (std::size_t i = 0; i < order.size(); ++i) map->emplace(order[i], canonical_name(i));
  return [map](const std::string& v) { return map->at(v); };
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(os, t, [](const std::string& v) { return source_name(v); });
  return os.str();
}

std::string to_string(const Clause& c, VarNaming naming) {
  Namer namer = naming == VarNaming::Canonical ? canonical_namer(variables(c))
                                               : Namer([](const std::string& v) { return source_name(v); });
  std::ostringstream os;
  print(os, c.head, namer);
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    os << (i == 0 ? " :- " : ", ");
    print(os, c.body[i], namer);
  }
  os << '.';
  return os.str();
}

std::string canonical_string(const Term& t) {
  std::ostringstream os;
  print(os, t, canonical_namer(variables(t)));
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

}  // namespace lpspec
