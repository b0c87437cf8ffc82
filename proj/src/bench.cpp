#include "lpspec/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "lpspec/annotate.hpp"
#include "lpspec/bta.hpp"
#include "lpspec/compare.hpp"
#include "lpspec/config.hpp"
#include "lpspec/parser.hpp"
#include "lpspec/solve.hpp"

namespace fs = std::filesystem;

namespace lpspec {

PredKey parse_pred_key(const std::string& text) {
  auto slash = text.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
    throw Error("expected name/arity, got '" + text + "'");
  std::size_t used = 0;
  unsigned long n = std::stoul(text.substr(slash + 1), &used);
  if (used != text.size() - slash - 1) throw Error("bad arity in '" + text + "'");
  return PredKey{text.substr(0, slash), n};
}

BenchmarkCase load_case(const std::string& dir) {
  const fs::path base(dir);
  const fs::path manifest = base / "case.txt";
  std::istringstream in(read_file(manifest.string()));
  BenchmarkCase c;
  c.name = base.filename().string();
  if (c.name.empty()) c.name = base.parent_path().filename().string();
  bool have_goal = false;
  std::string line;
  int lineno = 0;
  auto where = [&]() { return manifest.string() + ":" + std::to_string(lineno) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto sp = line.find_first_of(" \t", first);
    std::string key = line.substr(first, sp - first);
    std::string value = sp == std::string::npos ? "" : line.substr(line.find_first_not_of(" \t", sp));
    while (!value.empty() && (value.back() == '\r' || value.back() == ' ')) value.pop_back();
    try {
      if (key == "program") {
        c.program_path = (base / value).string();
      } else if (key == "config") {
        c.config_path = (base / value).string();
      } else if (key == "expected") {
        c.expected_path = (base / value).string();
      } else if (key == "expected_entry") {
        c.expected_entry = parse_pred_key(value);
      } else if (key == "goal") {
        c.goal = parse_term(value);
        have_goal = true;
      } else if (key == "query") {
        auto qs = value.find(' ');
        if (qs == std::string::npos) throw Error("query needs a depth and a goal");
        c.queries.push_back(QuerySpec{std::stoull(value.substr(0, qs)), parse_term(value.substr(qs + 1))});
      } else if (key == "modes") {
        c.offline = value.find("offline") != std::string::npos;
        c.online = value.find("online") != std::string::npos;
      } else {
        throw Error("unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      throw Error(where() + e.what());
    }
  }
  if (c.program_path.empty() || c.config_path.empty() || c.expected_path.empty() || !have_goal)
    throw Error(manifest.string() + ": program, config, expected and goal are required");
  return c;
}

std::vector<BenchmarkCase> load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<std::string> dirs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory() && fs::exists(e.path() / "case.txt")) dirs.push_back(e.path().string());
  std::sort(dirs.begin(), dirs.end());
  std::vector<BenchmarkCase> out;
  for (const auto& d : dirs) out.push_back(load_case(d));
  return out;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "FAIL";
    case Outcome::Skip:
      return "-";
  }
  return "?";
}

bool CaseReport::passed() const {
  for (auto o : {offline, online, agree, queries})
    if (o == Outcome::Fail) return false;
  return true;
}

namespace {

Outcome compared(const ComparisonReport& r, const std::string& what, std::vector<std::string>& notes) {
  if (r.match) return Outcome::Pass;
  for (const auto& d : r.diffs) notes.push_back(what + ": " + d);
  return Outcome::Fail;
}

}  // namespace

CaseReport run_case(const BenchmarkCase& c, const SpecialiseOptions& opts) {
  CaseReport rep;
  rep.name = c.name;
  auto t0 = std::chrono::steady_clock::now();
  std::optional<ResidualProgram> off, on;
  std::optional<Program> program, expected;
  try {
    program = parse_program(read_file(c.program_path));
    expected = parse_program(read_file(c.expected_path));
  } catch (const Error& e) {
    rep.notes.push_back(std::string("load: ") + e.what());
    rep.offline = rep.online = rep.queries = Outcome::Fail;
    return rep;
  }
  AnalysisConfig cfg;
  try {
    cfg = parse_config(read_file(c.config_path));
  } catch (const Error& e) {
    rep.notes.push_back(std::string("config: ") + e.what());
    rep.offline = rep.online = rep.queries = Outcome::Fail;
    return rep;
  }

  if (c.offline) {
    try {
      auto annotated = annotate(*program, analyse(*program, cfg));
      off = specialise(annotated, c.goal, opts);
      rep.offline = compared(compare_residual(off->program, off->entry_pred(), *expected, c.expected_entry),
                             "offline", rep.notes);
    } catch (const Error& e) {
      rep.notes.push_back(std::string("offline: ") + e.what());
      rep.offline = Outcome::Fail;
    }
  }
  if (c.online) {
    try {
      on = specialise_online(*program, cfg, c.goal, opts);
      rep.online = compared(compare_residual(on->program, on->entry_pred(), *expected, c.expected_entry), "online",
                            rep.notes);
    } catch (const Error& e) {
      rep.notes.push_back(std::string("online: ") + e.what());
      rep.online = Outcome::Fail;
    }
  }
  if (c.offline && c.online) {
    if (off && on) {
      rep.agree = compared(compare_residual(on->program, on->entry_pred(), off->program, off->entry_pred()),
                           "online vs offline", rep.notes);
    } else {
      rep.agree = Outcome::Fail;
    }
  }

  const ResidualProgram* residual = off ? &*off : (on ? &*on : nullptr);
  if (!c.queries.empty()) {
    rep.queries = Outcome::Pass;
    for (const auto& q : c.queries) {
      const std::string qtext = to_string(q.goal);
      try {
        if (!residual) throw Error("no residual program");
        auto rq = residual->rename_query(q.goal);
        if (!rq) throw Error("query is not an instance of the specialised goal");
        auto a = solve(*program, {q.goal}, q.depth);
        auto b = solve(residual->program, {*rq}, q.depth);
        auto sa = answer_set(a, {q.goal});
        auto sb = answer_set(b, variables(q.goal));
        if (sa != sb || a.complete != b.complete) {
          rep.notes.push_back("query " + qtext + ": " + std::to_string(sa.size()) + " vs " +
                              std::to_string(sb.size()) + " answers, complete " + (a.complete ? "yes" : "no") +
                              " vs " + (b.complete ? "yes" : "no"));
          rep.queries = Outcome::Fail;
        }
      } catch (const Error& e) {
        rep.notes.push_back("query " + qtext + ": " + e.what());
        rep.queries = Outcome::Fail;
      }
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string format_reports(const std::vector<CaseReport>& rs) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "case" << std::setw(9) << "offline" << std::setw(8) << "online"
     << std::setw(7) << "agree" << std::setw(9) << "queries" << "time(s)\n";
  for (const auto& r : rs) {
    os << std::setw(18) << r.name << std::setw(9) << to_string(r.offline) << std::setw(8) << to_string(r.online)
       << std::setw(7) << to_string(r.agree) << std::setw(9) << to_string(r.queries) << std::fixed
       << std::setprecision(3) << r.seconds << "\n";
    for (const auto& n : r.notes) os << "    " << n << "\n";
  }
  std::size_t ok = static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [](auto& r) { return r.passed(); }));
  os << ok << "/" << rs.size() << " cases pass\n";
  return os.str();
}

}  // namespace lpspec
