#pragma once

#include <cstdint>
#include <vector>

#include "lpspec/term.hpp"

namespace lpspec {

class RunError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultDepth = 10000;

struct SolveResult {
  // One substitution per successful derivation, restricted to the goal's
  // variables, in depth-first clause order.
  std::vector<Substitution> answers;
  // False iff some branch was cut by the depth bound.
  bool complete = true;
};

// Depth-first SLD resolution; `depth` bounds the resolution steps of each
// derivation. Calls to undefined predicates fail.
SolveResult solve(const Program& p, const std::vector<Term>& goal, std::uint64_t depth = kDefaultDepth);

// Answers as canonical strings of the goal-variable tuple, sorted and
// deduplicated: equal iff the answer sets agree modulo renaming.
std::vector<std::string> answer_set(const SolveResult& r, const std::vector<Term>& goal);
std::vector<std::string> answer_set(const SolveResult& r, const std::vector<std::string>& vars);

}  // namespace lpspec
