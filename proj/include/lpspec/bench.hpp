#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpspec/specialise.hpp"
#include "lpspec/term.hpp"

namespace lpspec {

struct QuerySpec {
  std::uint64_t depth = 0;
  Term goal;
};

// One corpus directory, described by its case.txt:
//   program program.pl
//   config config.cfg
//   goal nont(c,X,Y).
//   expected expected.pl
//   expected_entry nont__0/2
//   query 100 nont(c,[a,c],R).
//   modes offline online
struct BenchmarkCase {
  std::string name;
  std::string program_path;
  std::string config_path;
  std::string expected_path;
  Term goal = Term::atom("true");
  std::optional<PredKey> expected_entry;
  std::vector<QuerySpec> queries;
  bool offline = true;
  bool online = true;
};

BenchmarkCase load_case(const std::string& dir);
// Every subdirectory holding a case.txt, sorted by name.
std::vector<BenchmarkCase> load_corpus(const std::string& dir);

PredKey parse_pred_key(const std::string& text);

enum class Outcome { Pass, Fail, Skip };
std::string to_string(Outcome o);

struct CaseReport {
  std::string name;
  Outcome offline = Outcome::Skip;  // off-line residual vs expected
  Outcome online = Outcome::Skip;   // on-line residual vs expected
  Outcome agree = Outcome::Skip;    // on-line vs off-line residual
  Outcome queries = Outcome::Skip;  // run-time answer sets, original vs residual
  std::vector<std::string> notes;
  double seconds = 0;

  bool passed() const;
};

CaseReport run_case(const BenchmarkCase& c, const SpecialiseOptions& opts = {});
std::string format_reports(const std::vector<CaseReport>& rs);

}  // namespace lpspec
