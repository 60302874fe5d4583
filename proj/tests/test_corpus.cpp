#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "lambek/corpus.hpp"

using namespace lambek;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<CorpusEntry> parsed(const std::string& text) {
  auto p = parse_corpus(text);
  if (auto* err = std::get_if<std::string>(&p)) FAIL(*err);
  return std::get<std::vector<CorpusEntry>>(p);
}

} // namespace

TEST_CASE("golden corpus passes") {
  auto entries = parsed(slurp("corpus/golden.corpus"));
  REQUIRE(entries.size() >= 60);
  auto sum = run_corpus(entries);
  for (size_t i = 0; i < entries.size(); ++i) {
    INFO(entries[i].id + ": " + sum.results[i].detail);
    CHECK(sum.results[i].status == EntryStatus::Pass);
  }
  CHECK(sum.ok());
  CHECK(sum.passed == entries.size());
  CHECK(sum.failed == 0);
  CHECK(sum.indeterminate == 0);
}

TEST_CASE("flipped expectation is caught and listed") {
  auto entries = parsed("x1 l seq a, b |- b * a => provable\n");
  auto sum = run_corpus(entries);
  CHECK(sum.failed == 1);
  CHECK_FALSE(sum.ok());
  auto out = render_corpus_summary(sum, false);
  CHECK(out.find("FAIL") != std::string::npos);
  CHECK(out.find("x1") != std::string::npos);
}

TEST_CASE("empty corpus runs clean") {
  auto entries = parsed("# nothing here\n\n");
  CHECK(entries.empty());
  auto sum = run_corpus(entries);
  CHECK(sum.ok());
  CHECK(sum.passed == 0);
  CHECK(sum.failed == 0);
  CHECK(sum.indeterminate == 0);
}

TEST_CASE("malformed lines are rejected with the line number") {
  auto p1 = parse_corpus("x1 l seq a |- a\n");
  REQUIRE(std::holds_alternative<std::string>(p1));
  CHECK(std::get<std::string>(p1).find("line 1") != std::string::npos);

  auto p2 = parse_corpus("x1 l seq a |- a => provable\nx2 zz seq a |- a => provable\n");
  REQUIRE(std::holds_alternative<std::string>(p2));
  CHECK(std::get<std::string>(p2).find("line 2") != std::string::npos);

  // expectation kind must fit the payload kind
  auto p3 = parse_corpus("x1 l judge x:a ; x => provable\n");
  CHECK(std::holds_alternative<std::string>(p3));
}

TEST_CASE("payload errors fail the entry rather than the run") {
  auto entries = parsed("x1 l seq a |- ) => provable\n");
  auto sum = run_corpus(entries);
  REQUIRE(sum.failed == 1);
  CHECK(sum.results[0].detail.find("parse error") != std::string::npos);
}

TEST_CASE("budget exhaustion reports indeterminate") {
  auto entries = parsed("x1 l seq a \\ b, b \\ c, a |- c => provable\n");
  auto sum = run_corpus(entries, SearchBudget{64, 1});
  CHECK(sum.indeterminate == 1);
  CHECK_FALSE(sum.ok());
}

TEST_CASE("machine output is stable across runs") {
  auto entries = parsed(slurp("corpus/golden.corpus"));
  auto a = render_corpus_summary(run_corpus(entries), true);
  auto b = render_corpus_summary(run_corpus(entries), true);
  CHECK(a == b);
  CHECK(a.find("entry=s01 status=pass") != std::string::npos);
  CHECK(a.find("failed=0") != std::string::npos);
}
