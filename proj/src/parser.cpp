#include "lpspec/parser.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace lpspec {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}

namespace {

bool is_symbol_char(char c) {
  static constexpr std::string_view kSymbols = "+-*/\\^<>=~:.?@#&$";
  return kSymbols.find(c) != std::string_view::npos;
}

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Predicates of full Prolog the subset refuses to accept as goals.
const std::set<std::string>& reserved_names() {
  static const std::set<std::string> kNames = {
      "is",    "<",       ">",       "=<",     ">=",     "=:=",     "=\\=",     "==",   "\\=",
      "\\+",   "!",       "call",    "not",    "fail",   "false",   "var",      "nonvar",
      "atom",  "atomic",  "number",  "integer", "functor", "arg",   "=..",      "copy_term",
      "assert", "asserta", "assertz", "retract", "findall", "bagof", "setof",    "write",
      "nl",    "->",      ";",       "halt",   "repeat", "once",    "true",     "ground",
      "=",     "\\=="};
  return kNames;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (true) {
    while (i < text.size()) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '%') {
        while (i < text.size() && text[i] != '\n') advance(1);
      } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
        int l0 = line, c0 = col;
        advance(2);
        while (i < text.size() && !(text[i] == '*' && i + 1 < text.size() && text[i + 1] == '/')) advance(1);
        if (i >= text.size()) throw ParseError("unterminated block comment", l0, c0);
        advance(2);
      } else {
        break;
      }
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (i >= text.size()) {
      tok.kind = TokKind::Eof;
      out.push_back(tok);
      return out;
    }
    char c = text[i];
    std::size_t start = i;
    if (c == '.' && (i + 1 >= text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])) ||
                     text[i + 1] == '%')) {
      tok.kind = TokKind::End;
      tok.text = ".";
      advance(1);
    } else if (std::islower(static_cast<unsigned char>(c))) {
      while (i < text.size() && is_alnum(text[i])) advance(1);
      tok.kind = TokKind::Atom;
      tok.text = std::string(text.substr(start, i - start));
    } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && is_alnum(text[i])) advance(1);
      tok.kind = TokKind::Var;
      tok.text = std::string(text.substr(start, i - start));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance(1);
      tok.kind = TokKind::Number;
      tok.text = std::string(text.substr(start, i - start));
    } else if (c == '\'') {
      advance(1);
      std::string s;
      while (true) {
        if (i >= text.size()) throw ParseError("unterminated quoted atom", tok.line, tok.column);
        char q = text[i];
        if (q == '\\' && i + 1 < text.size()) {
          s += text[i + 1];
          advance(2);
        } else if (q == '\'') {
          if (i + 1 < text.size() && text[i + 1] == '\'') {
            s += '\'';
            advance(2);
          } else {
            advance(1);
            break;
          }
        } else {
          s += q;
          advance(1);
        }
      }
      tok.kind = TokKind::QuotedAtom;
      tok.text = std::move(s);
    } else if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
      tok.kind = TokKind::Punct;
      tok.text = std::string(1, c);
      advance(1);
    } else if (c == '!' || c == ';') {
      tok.kind = TokKind::Atom;
      tok.text = std::string(1, c);
      advance(1);
    } else if (is_symbol_char(c)) {
      while (i < text.size() && is_symbol_char(text[i])) {
        // A full stop ends the symbol run.
        if (text[i] == '.' && (i + 1 >= text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]))))
          break;
        advance(1);
      }
      tok.kind = TokKind::Atom;
      tok.text = std::string(text.substr(start, i - start));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(tok));
  }
}

TermReader::TermReader(std::string_view text) : toks_(tokenize(text)) {}

const Token& TermReader::peek(std::size_t ahead) const {
  std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
  return toks_[k];
}

Token TermReader::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TermReader::at_punct(std::string_view p) const {
  return peek().kind == TokKind::Punct && peek().text == p;
}

bool TermReader::at_atom(std::string_view name) const {
  return peek().kind == TokKind::Atom && peek().text == name;
}

void TermReader::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TermReader::fail_at(const Token& tok, const std::string& msg) const {
  throw ParseError(msg, tok.line, tok.column);
}

void TermReader::expect_punct(std::string_view p) {
  if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
  next();
}

void TermReader::expect_end() {
  if (!at_end()) fail("expected '.'");
  next();
}

Term TermReader::variable(const std::string& name) {
  if (name == "_") return Term::var("_#_" + std::to_string(anon_++));
  auto it = scope_.find(name);
  if (it == scope_.end()) it = scope_.emplace(name, Term::var(name)).first;
  return it->second;
}

Term TermReader::term() { return primary(); }

Term TermReader::primary() {
  Token tok = next();
  switch (tok.kind) {
    case TokKind::Var:
      return variable(tok.text);
    case TokKind::Number:
      return Term::atom(tok.text);
    case TokKind::Atom:
    case TokKind::QuotedAtom: {
      if (!at_punct("(")) return Term::atom(tok.text);
      next();
      std::vector<Term> args;
      args.push_back(term());
      while (at_punct(",")) {
        next();
        args.push_back(term());
      }
      expect_punct(")");
      return Term::compound(tok.text, std::move(args));
    }
    case TokKind::Punct:
      if (tok.text == "[") {
        if (at_punct("]")) {
          next();
          return Term::nil();
        }
        std::vector<Term> items;
        items.push_back(term());
        while (at_punct(",")) {
          next();
          items.push_back(term());
        }
        Term tail = Term::nil();
        if (at_punct("|")) {
          next();
          tail = term();
        }
        expect_punct("]");
        return Term::list(items, tail);
      }
      if (tok.text == "(") {
        std::vector<Term> items;
        items.push_back(term());
        while (at_punct(",")) {
          next();
          items.push_back(term());
        }
        expect_punct(")");
        Term out = items.back();
        for (std::size_t k = items.size() - 1; k-- > 0;) out = Term::compound(",", {items[k], out});
        return out;
      }
      break;
    default:
      break;
  }
  fail_at(tok, tok.kind == TokKind::Eof ? "unexpected end of input" : "unexpected token '" + tok.text + "'");
}

Term TermReader::literal() {
  Token first = peek();
  Term lhs = term();
  if (peek().kind == TokKind::Atom) {
    const std::string op = peek().text;
    if (op == "=" || op == "\\==") {
      next();
      Term rhs = term();
      return Term::compound(op, {lhs, rhs});
    }
    fail("unsupported operator '" + op + "'");
  }
  if (lhs.is_var()) fail_at(first, "variable used as a goal");
  const auto& name = lhs.name();
  if (reserved_names().contains(name) && !is_builtin(lhs))
    fail_at(first, "unsupported builtin " + name + "/" + std::to_string(lhs.arity()));
  return lhs;
}

Clause TermReader::clause() {
  reset_scope();
  Token first = peek();
  Term head = term();
  if (head.is_var()) fail_at(first, "clause head is a variable");
  if (reserved_names().contains(head.name()) || head.name() == ",")
    fail_at(first, "cannot define builtin " + head.name() + "/" + std::to_string(head.arity()));
  Clause c{head, {}};
  if (at_atom(":-")) {
    next();
    c.body = goal_body();
  } else if (peek().kind == TokKind::Atom) {
    fail("unsupported operator '" + peek().text + "'");
  }
  expect_end();
  return c;
}

std::vector<Term> TermReader::goal_body() {
  std::vector<Term> body;
  body.push_back(literal());
  while (at_punct(",")) {
    next();
    body.push_back(literal());
  }
  return body;
}

std::vector<Term> TermReader::goal() {
  auto g = goal_body();
  if (at_end()) next();
  if (!at_eof()) fail("trailing input after goal");
  return g;
}

Program parse_program(std::string_view text) {
  TermReader r(text);
  Program p;
  while (!r.at_eof()) p.add(r.clause());
  return p;
}

Term parse_term(std::string_view text) {
  TermReader r(text);
  Term t = r.term();
  if (r.at_end()) r.next();
  if (!r.at_eof()) r.fail("trailing input after term");
  return t;
}

std::vector<Term> parse_goal(std::string_view text) {
  TermReader r(text);
  return r.goal();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lpspec
