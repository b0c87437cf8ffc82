#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpspec/bt_domain.hpp"
#include "lpspec/term.hpp"

namespace lpspec {

struct EntrySpec {
  PredKey pred;
  std::vector<BTValue> values;
};

struct UnfoldRule {
  // Parameter names as written, used only for printing.
  std::vector<std::string> params;
  Condition condition;
};

struct AnalysisConfig {
  std::optional<EntrySpec> entry;
  std::map<PredKey, UnfoldRule> unfold;
  Norms norms{.listlength = false};

  const Condition* condition_for(const PredKey& p) const;
};

// Line-oriented format:
//   entry p(ground, dyn, list).
//   unfold p(X, Y, Z) : ground(X), (bounded_list(Y) ; true).
//   norms termsize, listlength.
AnalysisConfig parse_config(std::string_view text);

}  // namespace lpspec
