#include "lpspec/annotate.hpp"

#include <sstream>

#include "lpspec/parser.hpp"

namespace lpspec {

std::vector<BTValue> classify_arguments(int version, const AnalysisResult& r) { return r.classification(version); }

AnnotatedProgram annotate(const Program& p, const AnalysisResult& r) {
  AnnotatedProgram out;
  for (std::size_t v = 0; v < r.versions.size(); ++v) {
    const Version& ver = r.versions[v];
    AnnotatedVersion av;
    av.id = static_cast<int>(v);
    av.pred = ver.pred;
    av.classification = classify_arguments(av.id, r);
    av.pattern = ver.pattern;
    auto clauses = p.clauses_for(ver.pred);
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      AnnotatedClause ac{*clauses[ci], {}};
      for (std::size_t li = 0; li < ac.clause.body.size(); ++li) {
        auto it = r.decisions.find(ProgramPoint{av.id, static_cast<int>(ci), static_cast<int>(li)});
        if (it == r.decisions.end())
          throw Error("no decision for literal " + std::to_string(li) + " of clause " + std::to_string(ci) +
                      " in version v" + std::to_string(v));
        ac.tags.push_back(it->second);
      }
      av.clauses.push_back(std::move(ac));
    }
    out.versions.push_back(std::move(av));
  }
  return out;
}

namespace {

Term tagged(const Term& lit, const Decision& d) {
  switch (d.kind) {
    case Decision::Kind::Unfold:
    case Decision::Kind::Memo:
      return Term::compound(to_string(d.kind), {Term::atom("v" + std::to_string(d.callee)), lit});
    case Decision::Kind::Static:
    case Decision::Kind::Dynamic:
      return Term::compound(to_string(d.kind), {lit});
  }
  return lit;
}

std::pair<Term, Decision> untagged(const Term& t) {
  if (!t.is_var()) {
    if ((t.name() == "unfold" || t.name() == "memo") && t.arity() == 2 && t.arg(0).is_atom()) {
      const std::string& v = t.arg(0).name();
      if (v.size() > 1 && v[0] == 'v' && v.find_first_not_of("0123456789", 1) == std::string::npos) {
        auto kind = t.name() == "unfold" ? Decision::Kind::Unfold : Decision::Kind::Memo;
        return {t.arg(1), Decision{kind, std::stoi(v.substr(1))}};
      }
    }
    if (t.name() == "static" && t.arity() == 1) return {t.arg(0), Decision{Decision::Kind::Static, -1}};
    if (t.name() == "dynamic" && t.arity() == 1) return {t.arg(0), Decision{Decision::Kind::Dynamic, -1}};
  }
  throw Error("untagged body literal in annotation file: " + to_string(t));
}

struct Header {
  int id;
  PredKey pred;
  std::vector<BTValue> classification;
};

Header read_header(const std::string& line, int lineno) {
  TermReader r(line);
  auto bad = [&](const std::string& msg) -> Header { throw ParseError(msg, lineno, 1); };
  r.next();  // "version"
  Token name = r.next();
  if (name.kind != TokKind::Atom || name.text.size() < 2 || name.text[0] != 'v') return bad("bad version name");
  Header h{std::stoi(name.text.substr(1)), {}, {}};
  if (!r.at_atom("=")) return bad("expected '='");
  r.next();
  Token pred = r.next();
  if (pred.kind != TokKind::Atom && pred.kind != TokKind::QuotedAtom) return bad("expected predicate name");
  if (!r.at_atom("/")) return bad("expected '/'");
  r.next();
  Token ar = r.next();
  if (ar.kind != TokKind::Number) return bad("expected arity");
  h.pred = PredKey{pred.text, static_cast<std::size_t>(std::stoul(ar.text))};
  if (!r.at_atom("pattern")) return bad("expected 'pattern'");
  r.next();
  r.expect_punct("(");
  while (!r.at_punct(")")) {
    Token v = r.next();
    if (v.text.size() != 1) return bad("bad binding-time value");
    h.classification.push_back(bt_from_char(v.text[0]));
    if (r.at_punct(",")) r.next();
  }
  r.next();
  r.expect_end();
  if (h.classification.size() != h.pred.arity) return bad("pattern arity mismatch");
  return h;
}

Tuple read_tuple(const std::string& s, std::size_t arity, int lineno) {
  Tuple t = 0;
  std::size_t pos = 0;
  for (char c : s) {
    if (c == 'G' || c == 'L' || c == 'D') t = tuple_set(t, pos++, bt_from_char(c));
  }
  if (pos != arity) throw ParseError("pattern tuple arity mismatch", lineno, 1);
  return t;
}

}  // namespace

std::string emit(const AnnotatedProgram& a) {
  std::ostringstream os;
  os << "% annotated program\n";
  for (const auto& v : a.versions) {
    os << "\nversion v" << v.id << " = " << Term::atom(v.pred.name) << "/" << v.pred.arity << " pattern "
       << bt_string(v.classification) << ".\n";
    for (auto t : v.pattern.tuples()) os << "% " << bt_string(v.pattern.values(t)) << "\n";
    for (const auto& ac : v.clauses) {
      Clause c{ac.clause.head, {}};
      for (std::size_t i = 0; i < ac.clause.body.size(); ++i) c.body.push_back(tagged(ac.clause.body[i], ac.tags[i]));
      os << to_string(c) << "\n";
    }
  }
  return os.str();
}

AnnotatedProgram read_annotations(std::string_view text) {
  AnnotatedProgram out;
  std::vector<Tuple> tuples;
  std::string body;
  int body_line = 0;

  auto finish = [&]() {
    if (out.versions.empty()) return;
    auto& v = out.versions.back();
    v.pattern = BTTable(head_schema(v.pred.arity), tuples);
    tuples.clear();
    // Pad so parse errors report the line of the file.
    Program p = parse_program(std::string(static_cast<std::size_t>(std::max(body_line - 1, 0)), '\n') + body);
    body.clear();
    for (const auto& c : p.clauses()) {
      if (c.key() != v.pred) throw Error("clause for " + c.key().str() + " listed under version of " + v.pred.str());
      AnnotatedClause ac{Clause{c.head, {}}, {}};
      for (const auto& lit : c.body) {
        auto [inner, d] = untagged(lit);
        ac.clause.body.push_back(inner);
        ac.tags.push_back(d);
      }
      v.clauses.push_back(std::move(ac));
    }
  };

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      body += "\n";
      continue;
    }
    if (line.compare(first, 8, "version ") == 0) {
      finish();
      body.clear();
      Header h = read_header(line.substr(first), lineno);
      if (h.id != static_cast<int>(out.versions.size())) throw ParseError("versions out of order", lineno, 1);
      AnnotatedVersion v;
      v.id = h.id;
      v.pred = h.pred;
      v.classification = h.classification;
      out.versions.push_back(std::move(v));
      body_line = lineno + 1;
      continue;
    }
    if (line[first] == '%') {
      auto rest = line.find_first_not_of(" \t", first + 1);
      if (!out.versions.empty() && rest != std::string::npos && line[rest] == '(')
        tuples.push_back(read_tuple(line.substr(rest), out.versions.back().pred.arity, lineno));
      body += "\n";
      continue;
    }
    if (out.versions.empty()) throw ParseError("clause before any version header", lineno, 1);
    body += line + "\n";
  }
  finish();
  for (const auto& v : out.versions)
    for (const auto& c : v.clauses)
      for (const auto& t : c.tags)
        if (t.callee >= static_cast<int>(out.versions.size())) throw Error("tag names an unknown version");
  return out;
}

bool same_annotations(const AnnotatedProgram& a, const AnnotatedProgram& b) {
  if (a.versions.size() != b.versions.size()) return false;
  for (std::size_t i = 0; i < a.versions.size(); ++i) {
    const auto& x = a.versions[i];
    const auto& y = b.versions[i];
    if (x.id != y.id || x.pred != y.pred || x.classification != y.classification || !(x.pattern == y.pattern) ||
        x.clauses.size() != y.clauses.size())
      return false;
    for (std::size_t j = 0; j < x.clauses.size(); ++j) {
      if (x.clauses[j].tags != y.clauses[j].tags) return false;
      if (!alpha_equal(x.clauses[j].clause, y.clauses[j].clause)) return false;
    }
  }
  return true;
}

}  // namespace lpspec
