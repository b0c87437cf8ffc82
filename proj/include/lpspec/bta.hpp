#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpspec/bt_domain.hpp"
#include "lpspec/config.hpp"
#include "lpspec/normalise.hpp"
#include "lpspec/term.hpp"

namespace lpspec {

class AnalysisError : public Error {
 public:
  using Error::Error;
};

// (version, clause index within the predicate, body literal index).
struct ProgramPoint {
  int version = 0;
  int clause = 0;
  int literal = 0;
  auto operator<=>(const ProgramPoint&) const = default;
};

struct Decision {
  enum class Kind { Unfold, Memo, Static, Dynamic };
  Kind kind = Kind::Static;
  int callee = -1;  // version, for Unfold and Memo
  bool operator==(const Decision&) const = default;
};

std::string to_string(Decision::Kind k);

// Argument positions of a call pattern are named "#1".."#n".
std::vector<std::string> head_schema(std::size_t arity);

struct Version {
  PredKey pred;
  BTTable pattern;
  BTTable answer;
  bool operator==(const Version&) const = default;
};

struct AnalysisResult {
  Norms norms;
  std::vector<Version> versions;  // version 0 is the entry
  std::map<ProgramPoint, Decision> decisions;
  // State before each body literal, over the variables still live there.
  std::map<ProgramPoint, BTTable> pre_states;
  // Call pattern TC of each user call, over "#1".."#n" of the callee.
  std::map<ProgramPoint, BTTable> call_patterns;
  std::size_t passes = 0;

  std::optional<int> find(const PredKey& pred, const BTTable& pattern) const;
  std::vector<BTValue> classification(int version) const;
};

struct AnalyseOptions {
  // Visit versions and clauses back to front within each pass.
  bool reverse_order = false;
  std::size_t max_versions = 10000;
};

// The abstract semantics over truth tables. run() computes the least fixpoint
// by round-robin passes until no answer table grows.
class Analyser {
 public:
  Analyser(const Program& p, AnalysisConfig cfg, AnalyseOptions opts = {});

  AnalysisResult run();

  int register_version(const PredKey& pred, const BTTable& pattern);
  const BTTable& answer(int version) const { return versions_.at(version).answer; }

  // Success table over "#1".."#n" for one clause under `input`. When
  // `version` is non-negative the decisions and point tables are recorded.
  BTTable abstract_clause(const NormalisedClause& c, const BTTable& input, int version = -1, int clause = -1);
  std::pair<BTTable, Decision> abstract_call(const BTTable& state, const PredKey& callee,
                                             const std::vector<std::string>& args);
  static std::pair<BTTable, Decision> abstract_builtin(const BTTable& state, const Step& s, Norms norms);

 private:
  const std::vector<NormalisedClause>& clauses_of(const PredKey& pred) const;
  AnalysisResult collect() const;

  AnalysisConfig cfg_;
  AnalyseOptions opts_;
  std::map<PredKey, std::vector<NormalisedClause>> clauses_;
  std::vector<Version> versions_;
  std::map<std::pair<PredKey, std::vector<Tuple>>, int> registry_;
  std::map<ProgramPoint, Decision> decisions_;
  std::map<ProgramPoint, BTTable> pre_states_;
  std::map<ProgramPoint, BTTable> call_patterns_;
  std::size_t passes_ = 0;
};

AnalysisResult analyse(const Program& p, const AnalysisConfig& cfg, AnalyseOptions opts = {});

// The entry's call pattern: one tuple, generalised like a memoised call.
BTTable entry_pattern(const EntrySpec& e, Norms norms);

}  // namespace lpspec
