#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpspec/annotate.hpp"
#include "lpspec/bt_domain.hpp"
#include "lpspec/config.hpp"
#include "lpspec/term.hpp"

namespace lpspec {

class SpecialiseError : public Error {
 public:
  enum class Kind { GoalMismatch, LocalControl, GlobalControl, MissingCondition };
  SpecialiseError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SpecialiseOptions {
  std::size_t max_unfold_depth = 1000;  // resolution steps per unfolding tree
  std::size_t max_tasks = 1000;         // registry size
  // Off-line only: called for every selected user call with the program point
  // of the literal and its current instance.
  std::function<void(const ProgramPoint&, const Term&)> on_literal;
};

struct BuiltinOutcome {
  enum class Kind { Succeeds, Fails, Residualise };
  Kind kind = Kind::Succeeds;
  Substitution subst;
};

BuiltinOutcome evaluate_builtin(const Term& lit);

// G positions keep the argument (which must be ground); others become fresh
// variables.
Term generalise_call(const Term& atom, const std::vector<BTValue>& classification, FreshNames& fresh);

// name(arguments at the non-G positions).
Term filter(const Term& atom, const std::vector<BTValue>& classification, const std::string& name);

struct SpecTask {
  Term atom;  // generalised call
  int version = -1;  // off-line only
  std::string name;
  std::vector<bool> dropped;  // positions filtered out of the residual predicate
};

struct ResidualProgram {
  std::vector<SpecTask> tasks;  // discovery order; tasks[0] is the entry
  Program program;

  // The residual call answering an instance of the entry goal.
  std::optional<Term> rename_query(const Term& q) const;
  PredKey entry_pred() const;
  // One clause per line with canonical variable names.
  std::string to_text() const;
};

ResidualProgram specialise(const AnnotatedProgram& a, const Term& goal, const SpecialiseOptions& opts = {});
ResidualProgram specialise_online(const Program& p, const AnalysisConfig& cfg, const Term& goal,
                                  const SpecialiseOptions& opts = {});

}  // namespace lpspec
