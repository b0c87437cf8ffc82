#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpspec/term.hpp"

namespace lpspec {

struct ComparisonReport {
  bool match = false;
  // actual predicate -> expected predicate, as "name/arity".
  std::map<std::string, std::string> bijection;
  std::vector<std::string> diffs;
};

// Residual programs are equal when a bijection on predicate names, rooted at
// the entries, makes every predicate's clause list equal clause by clause up
// to variable renaming. Without an expected entry every same-arity predicate
// is tried as the root.
ComparisonReport compare_residual(const Program& actual, const PredKey& actual_entry, const Program& expected,
                                  std::optional<PredKey> expected_entry = std::nullopt);

}  // namespace lpspec
