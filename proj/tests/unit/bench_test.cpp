#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lpspec/bench.hpp"
#include "lpspec/parser.hpp"
#include "support.hpp"

using namespace lpspec;
namespace fs = std::filesystem;

TEST_CASE("corpus loads seven cases") {
  auto cs = load_corpus(LPSPEC_CORPUS_DIR);
  REQUIRE(cs.size() == 7);
  CHECK(cs.front().name == "depth");
  for (const auto& c : cs) {
    CHECK(fs::exists(c.program_path));
    CHECK_FALSE(c.queries.empty());
    CHECK(c.expected_entry);
    CHECK_NOTHROW(parse_program(read_file(c.expected_path)));
  }
  auto fa = load_case(testsupport::corpus("funnyapp"));
  CHECK_FALSE(fa.offline);
  CHECK(fa.online);
}

TEST_CASE("a perturbed expected file fails its row") {
  fs::path tmp = fs::temp_directory_path() / "lpspec_bench_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp / "parser");
  for (const char* f : {"program.pl", "config.cfg", "case.txt"})
    fs::copy_file(testsupport::corpus(std::string("parser/") + f), tmp / "parser" / f);
  {
    std::ofstream out(tmp / "parser" / "expected.pl");
    out << "nont__0([c|D],D).\nnont__0([a|B],C) :- nont__0(B,C).\n";
  }
  auto cs = load_corpus(tmp.string());
  REQUIRE(cs.size() == 1);
  auto rep = run_case(cs[0]);
  CHECK(rep.offline == Outcome::Fail);
  CHECK(rep.online == Outcome::Fail);
  CHECK(rep.agree == Outcome::Pass);
  CHECK(rep.queries == Outcome::Pass);
  CHECK_FALSE(rep.passed());
  CHECK(format_reports({rep}).find("0/1 cases pass") != std::string::npos);
  fs::remove_all(tmp);
}

TEST_CASE("empty corpus and bad manifests") {
  fs::path tmp = fs::temp_directory_path() / "lpspec_bench_empty";
  fs::remove_all(tmp);
  fs::create_directories(tmp / "x");
  CHECK(load_corpus(tmp.string()).empty());
  {
    std::ofstream out(tmp / "x" / "case.txt");
    out << "program p.pl\nbogus 1\n";
  }
  CHECK_THROWS_AS(load_corpus(tmp.string()), Error);
  CHECK_THROWS_AS(load_corpus((tmp / "missing").string()), Error);
  fs::remove_all(tmp);
  CHECK(parse_pred_key("nont__0/2") == PredKey{"nont__0", 2});
  CHECK_THROWS(parse_pred_key("nont"));
}
