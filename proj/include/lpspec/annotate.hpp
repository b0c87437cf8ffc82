#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lpspec/bta.hpp"
#include "lpspec/term.hpp"

namespace lpspec {

struct AnnotatedClause {
  Clause clause;
  // One tag per body literal.
  std::vector<Decision> tags;
};

struct AnnotatedVersion {
  int id = 0;
  PredKey pred;
  std::vector<BTValue> classification;
  BTTable pattern;
  std::vector<AnnotatedClause> clauses;
};

struct AnnotatedProgram {
  std::vector<AnnotatedVersion> versions;  // versions[i].id == i

  const AnnotatedVersion& version(int id) const { return versions.at(static_cast<std::size_t>(id)); }
};

std::vector<BTValue> classify_arguments(int version, const AnalysisResult& r);

AnnotatedProgram annotate(const Program& p, const AnalysisResult& r);

// Text format:
//   version v0 = nont/3 pattern (G,D,D).
//   % (G,D,D)                         <- pattern tuples
//   nont(X,T,R) :- unfold(v1,t(a,T,V)), memo(v0,nont(X,V,R)).
std::string emit(const AnnotatedProgram& a);
AnnotatedProgram read_annotations(std::string_view text);

// Equal versions, patterns and tags; clauses compared up to variable renaming.
bool same_annotations(const AnnotatedProgram& a, const AnnotatedProgram& b);

}  // namespace lpspec
