#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lpspec/term.hpp"

namespace lpspec {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class TokKind { Atom, QuotedAtom, Var, Number, Punct, End, Eof };

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view text);

// Recursive-descent reader over a token stream. Shared by the program, config
// and annotation readers.
class TermReader {
 public:
  explicit TermReader(std::string_view text);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_eof() const { return peek().kind == TokKind::Eof; }
  bool at_punct(std::string_view p) const;
  bool at_end() const { return peek().kind == TokKind::End; }
  bool at_atom(std::string_view name) const;
  void expect_punct(std::string_view p);
  void expect_end();
  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void fail_at(const Token& tok, const std::string& msg) const;

  // Variables are scoped until reset_scope(); "_" is always fresh.
  void reset_scope() { scope_.clear(); }
  Term term();
  // A body literal: a term, or `A = B` / `A \== B` in infix form.
  Term literal();
  Clause clause();
  std::vector<Term> goal();

 private:
  Term primary();
  std::vector<Term> goal_body();
  Term variable(const std::string& name);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Term> scope_;
  std::uint64_t anon_ = 0;
};

Program parse_program(std::string_view text);
// One term, optionally followed by a full stop.
Term parse_term(std::string_view text);
// A conjunction of literals, optionally followed by a full stop.
std::vector<Term> parse_goal(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace lpspec
