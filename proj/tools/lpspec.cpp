// lpspec: binding-time analysis and partial deduction for a pure Prolog subset.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lpspec/annotate.hpp"
#include "lpspec/bench.hpp"
#include "lpspec/bta.hpp"
#include "lpspec/compare.hpp"
#include "lpspec/config.hpp"
#include "lpspec/parser.hpp"
#include "lpspec/solve.hpp"
#include "lpspec/specialise.hpp"

using namespace lpspec;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kMismatch = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

std::string version_summary(const AnalysisResult& r) {
  std::string s;
  for (std::size_t v = 0; v < r.versions.size(); ++v) {
    const auto& ver = r.versions[v];
    s += "v" + std::to_string(v) + " " + ver.pred.str() + " " + bt_string(r.classification(static_cast<int>(v))) +
         "  pattern " + ver.pattern.to_text() + "  answer " + ver.answer.to_text() + "\n";
  }
  s += std::to_string(r.versions.size()) + " versions, " + std::to_string(r.passes) + " passes\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binding-time analysis and partial deduction for pure Prolog"};
  app.require_subcommand(1);

  std::string program, config, out, annotations, goal, dir, actual, expected, actual_entry, expected_entry;
  std::size_t max_unfold = SpecialiseOptions{}.max_unfold_depth;
  std::size_t max_tasks = SpecialiseOptions{}.max_tasks;
  std::size_t max_versions = AnalyseOptions{}.max_versions;
  std::uint64_t depth = kDefaultDepth;
  bool quiet = false;

  auto caps = [&](CLI::App* sc) {
    sc->add_option("--max-unfold-depth", max_unfold, "resolution steps per unfolding tree");
    sc->add_option("--max-tasks", max_tasks, "specialisation tasks before giving up");
  };

  auto* an = app.add_subcommand("analyse", "run the binding-time analysis and write the annotated program");
  an->add_option("program", program)->required();
  an->add_option("config", config)->required();
  an->add_option("out", out)->required();
  an->add_option("--max-versions", max_versions);
  an->add_flag("-q,--quiet", quiet, "do not print the version summary");

  auto* sp = app.add_subcommand("specialise", "off-line specialisation of an annotated program");
  sp->add_option("program", program)->required();
  sp->add_option("annotations", annotations)->required();
  sp->add_option("goal", goal)->required();
  sp->add_option("out", out)->required();
  caps(sp);

  auto* on = app.add_subcommand("online", "on-line specialisation driven by the unfolding conditions");
  on->add_option("program", program)->required();
  on->add_option("config", config)->required();
  on->add_option("goal", goal)->required();
  on->add_option("out", out)->required();
  caps(on);

  auto* run = app.add_subcommand("run", "solve a goal and print its answers");
  run->add_option("program", program)->required();
  run->add_option("goal", goal)->required();
  run->add_option("--depth", depth, "resolution steps per derivation");

  auto* bench = app.add_subcommand("bench", "run every case of a corpus directory");
  bench->add_option("dir", dir)->required();
  caps(bench);

  auto* cmp = app.add_subcommand("compare", "compare two residual programs up to renaming");
  cmp->add_option("actual", actual)->required();
  cmp->add_option("expected", expected)->required();
  cmp->add_option("--actual-entry", actual_entry, "name/arity; defaults to the first predicate");
  cmp->add_option("--expected-entry", expected_entry, "name/arity; defaults to any matching predicate");

  CLI11_PARSE(app, argc, argv);

  SpecialiseOptions sopts;
  sopts.max_unfold_depth = max_unfold;
  sopts.max_tasks = max_tasks;

  try {
    if (*an) {
      Program p = parse_program(read_file(program));
      AnalysisConfig cfg = parse_config(read_file(config));
      AnalyseOptions aopts;
      aopts.max_versions = max_versions;
      AnalysisResult r = analyse(p, cfg, aopts);
      write_file(out, emit(annotate(p, r)));
      if (!quiet) std::cout << version_summary(r);
      return kOk;
    }
    if (*sp) {
      Program p = parse_program(read_file(program));
      AnnotatedProgram a = read_annotations(read_file(annotations));
      for (const auto& v : a.versions) {
        if (p.clauses_for(v.pred).size() != v.clauses.size())
          throw Error("annotations for " + v.pred.str() + " do not match the program");
      }
      ResidualProgram r = specialise(a, parse_term(goal), sopts);
      write_file(out, r.to_text());
      return kOk;
    }
    if (*on) {
      Program p = parse_program(read_file(program));
      AnalysisConfig cfg = parse_config(read_file(config));
      ResidualProgram r = specialise_online(p, cfg, parse_term(goal), sopts);
      write_file(out, r.to_text());
      return kOk;
    }
    if (*run) {
      Program p = parse_program(read_file(program));
      std::string text = goal;
      if (text.find_last_not_of(" \t\n") != std::string::npos && text[text.find_last_not_of(" \t\n")] != '.')
        text += ".";
      std::vector<Term> g = parse_goal(text);
      SolveResult r = solve(p, g, depth);
      for (const auto& s : answer_set(r, g)) std::cout << s << "\n";
      if (!r.complete) std::cout << "% incomplete: depth bound reached\n";
      return kOk;
    }
    if (*bench) {
      auto cases = load_corpus(dir);
      if (cases.empty()) {
        std::cerr << "no cases under " << dir << "\n";
        return kError;
      }
      std::vector<CaseReport> reports;
      for (const auto& c : cases) reports.push_back(run_case(c, sopts));
      std::cout << format_reports(reports);
      for (const auto& r : reports)
        if (!r.passed()) return kMismatch;
      return kOk;
    }
    if (*cmp) {
      Program a = parse_program(read_file(actual));
      Program e = parse_program(read_file(expected));
      PredKey ae;
      if (!actual_entry.empty()) {
        ae = parse_pred_key(actual_entry);
      } else {
        if (a.clauses().empty()) throw Error(actual + " has no clauses");
        ae = key_of(a.clauses().front().head);
      }
      std::optional<PredKey> ee;
      if (!expected_entry.empty()) ee = parse_pred_key(expected_entry);
      ComparisonReport r = compare_residual(a, ae, e, ee);
      if (r.match) {
        std::cout << "match\n";
        for (const auto& [x, y] : r.bijection) std::cout << "  " << x << " -> " << y << "\n";
        return kOk;
      }
      std::cout << "mismatch\n";
      for (const auto& d : r.diffs) std::cout << "  " << d << "\n";
      return kMismatch;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
