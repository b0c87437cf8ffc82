#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lpspec {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Term;

namespace detail {
struct TermNode {
  bool is_var = false;
  bool ground = true;
  std::string name;
  std::vector<Term> args;
};
}  // namespace detail

/// Immutable first-order term. Copies share structure.
///
/// Atoms are zero-arity compounds. Lists use the functor "." of arity 2 and
/// the constant "[]".
class Term {
 public:
  static Term var(std::string name);
  static Term atom(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term nil();
  static Term cons(Term head, Term tail);
  static Term list(const std::vector<Term>& items);
  static Term list(const std::vector<Term>& items, Term tail);

  bool is_var() const { return node_->is_var; }
  bool is_compound() const { return !node_->is_var; }
  bool is_atom() const { return !node_->is_var && node_->args.empty(); }
  bool is_ground() const { return node_->ground; }
  bool is_cons() const { return is_compound() && arity() == 2 && name() == "."; }
  bool is_nil() const { return is_atom() && name() == "[]"; }

  /// Variable name, or functor name for compounds.
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->args.size(); }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  /// Syntactic identity (same variable names, same structure).
  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// Predicate identifier: name/arity.
struct PredKey {
  std::string name;
  std::size_t arity = 0;

  auto operator<=>(const PredKey&) const = default;
  bool operator==(const PredKey&) const = default;
  std::string str() const { return name + "/" + std::to_string(arity); }
};

PredKey key_of(const Term& atom);

enum class BuiltinKind { True, Unify, NotIdentical, Ground };

/// Builtin literals the subset understands: true/0, =/2, \==/2, ground/1.
std::optional<BuiltinKind> builtin_kind(const Term& literal);
inline bool is_builtin(const Term& literal) { return builtin_kind(literal).has_value(); }

struct Clause {
  Term head;
  std::vector<Term> body;

  PredKey key() const { return key_of(head); }
  bool is_fact() const { return body.empty(); }
};

/// Ordered clause list with a per-predicate index. Clause order within a
/// predicate is exactly the insertion order.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses);

  void add(Clause clause);
  const std::vector<Clause>& clauses() const { return clauses_; }
  bool empty() const { return clauses_.empty(); }
  bool defines(const PredKey& key) const { return index_.contains(key); }
  /// Clauses of one predicate in source order; empty for unknown predicates.
  std::vector<const Clause*> clauses_for(const PredKey& key) const;
  /// Predicates in order of first definition.
  const std::vector<PredKey>& predicates() const { return order_; }

 private:
  std::vector<Clause> clauses_;
  std::map<PredKey, std::vector<std::size_t>> index_;
  std::vector<PredKey> order_;
};

/// Variable-to-term map. Kept idempotent by the operations producing it.
class Substitution {
 public:
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Term* lookup(const std::string& var) const;
  void bind(const std::string& var, Term value);
  const std::map<std::string, Term>& bindings() const { return bindings_; }
  /// Substitution restricted to the given variables.
  Substitution restricted(const std::vector<std::string>& vars) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

Term apply(const Substitution& s, const Term& t);
Clause apply(const Substitution& s, const Clause& c);
std::vector<Term> apply(const Substitution& s, const std::vector<Term>& ts);

/// Most general unifier, without occurs-check. Failure is std::nullopt.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// One-way matching: a substitution on `pattern`'s variables mapping it onto
/// `instance`, if any.
std::optional<Substitution> match(const Term& pattern, const Term& instance);

/// Stateful source of fresh variable names. Names contain '#', which the
/// concrete syntax cannot produce, so they never clash with source names.
class FreshNames {
 public:
  explicit FreshNames(std::string prefix = "_#") : prefix_(std::move(prefix)) {}
  std::string next_name();
  Term next_var() { return Term::var(next_name()); }

 private:
  std::string prefix_;
  std::uint64_t counter_ = 0;
};

Clause rename_apart(const Clause& c, FreshNames& fresh);
Term rename_apart(const Term& t, FreshNames& fresh);

/// Variant check: true iff a variable bijection maps a onto b.
bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const Clause& a, const Clause& b);

/// Variables in order of first occurrence, without repeats.
std::vector<std::string> variables(const Term& t);
std::vector<std::string> variables(const Clause& c);
void collect_variables(const Term& t, std::vector<std::string>& out);

enum class VarNaming {
  Source,     ///< names as stored; parser-generated anonymous names print as "_"
  Canonical,  ///< A, B, ..., Z, A1, ... by first occurrence
};

std::string to_string(const Term& t);
std::string to_string(const Clause& c, VarNaming naming = VarNaming::Source);
/// Canonical text of a term: equal for alpha-equivalent terms.
std::string canonical_string(const Term& t);

std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace lpspec
