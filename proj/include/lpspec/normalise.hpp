#pragma once

#include <string>
#include <vector>

#include "lpspec/term.hpp"

namespace lpspec {

// One primitive step of a normalised clause body.
struct Step {
  enum class Kind {
    Alias,    // lhs = args[0]
    Bind,     // lhs = functor(args...)
    Builtin,  // builtin over args (true, ground/1, \==/2, =/2 as an alias)
    Call,     // user call functor(args...)
  };
  Kind kind = Kind::Alias;
  std::string lhs;
  std::string functor;
  std::vector<std::string> args;
  BuiltinKind builtin = BuiltinKind::True;
  // Index of the source body literal this step belongs to; -1 for head
  // unification. Only the last step of a literal is the literal itself.
  int source_index = -1;
  bool is_literal = false;
};

struct NormalisedClause {
  PredKey pred;
  // Head variables "#1".."#n".
  std::vector<std::string> head;
  std::vector<Step> steps;
  // Number of literals in the source body.
  std::size_t literal_count = 0;
};

std::vector<NormalisedClause> normalise(const Program& p);
NormalisedClause normalise(const Clause& c);

// Back to ordinary syntax: equations become =/2 literals.
Clause denormalise(const NormalisedClause& c);
Program denormalise(const std::vector<NormalisedClause>& cs);

// Variables of a step in order: lhs first, then args.
std::vector<std::string> step_variables(const Step& s);

}  // namespace lpspec
