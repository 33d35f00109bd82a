#include "adelic/harness/identities.hpp"
#include "adelic/harness/pipeline.hpp"
#include "adelic/harness/search.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace adelic;
using namespace adelic::harness;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST(Search, MatchesOracleForP3) {
  auto res = search(3, std::nullopt, 20, std::nullopt, 3);
  EXPECT_TRUE(res.accounting_ok);
  auto want = oracle::search_box(3, 3, 20, {0, 1});
  ASSERT_EQ(res.tally.hits.size(), want.size());
  std::set<std::tuple<long, long, long>> a, b;
  for (const auto& h : res.tally.hits) a.insert({h.x, h.y, h.e});
  for (const auto& s : want) b.insert({s.x, s.y, s.e});
  EXPECT_EQ(a, b);
  for (const auto& h : res.tally.hits) {
    auto v = validate_hit(3, h, std::nullopt);
    EXPECT_TRUE(v.equation && v.ideal_facts) << h.x << "," << h.y;
  }
}

TEST(Search, ThreadCountDoesNotChangeResult) {
  auto a = search(3, std::nullopt, 30, std::nullopt, 1);
  auto b = search(3, std::nullopt, 30, std::nullopt, 7);
  ASSERT_EQ(a.tally.hits.size(), b.tally.hits.size());
  for (size_t i = 0; i < a.tally.hits.size(); ++i) {
    EXPECT_EQ(a.tally.hits[i].x, b.tally.hits[i].x);
    EXPECT_EQ(a.tally.hits[i].y, b.tally.hits[i].y);
  }
  EXPECT_EQ(a.tally.evaluated, b.tally.evaluated);
}

TEST(Search, NoNontrivialHitsForLargerPrimes) {
  for (long p : {5L, 7L}) {
    auto res = search(p, std::nullopt, 200);
    EXPECT_TRUE(res.accounting_ok);
    EXPECT_TRUE(res.tally.hits.empty());
    EXPECT_EQ(res.tally.trivial, 2);  // x = y = 1 and x = y = -1
  }
  EXPECT_TRUE(search(5, std::nullopt, 200, 7).tally.hits.empty());
  EXPECT_THROW(search(4, std::nullopt, 10), invalid_input);
}

TEST(Config, Validation) {
  RunConfig c;
  c.p = 9;
  EXPECT_THROW(c.validate(), invalid_input);
  c.p = 5;
  c.q = 5;
  EXPECT_THROW(c.validate(), invalid_input);
  c.q.reset();
  c.e = 2;
  EXPECT_THROW(c.validate(), invalid_input);
  c.e.reset();
  c.bound = 2000000;
  EXPECT_THROW(c.validate(), invalid_input);
}

TEST(Pipeline, RejectsInvalidInput) {
  RunConfig c;
  c.p = 5;
  c.x = 6;
  c.y = 22;
  EXPECT_THROW(run_pipeline(c), invalid_input);
  c.x = 3;
  c.y = 0;
  EXPECT_THROW(run_pipeline(c), invalid_input);
  c.y = 10;
  EXPECT_THROW(run_pipeline(c), invalid_input);
  c.y = 22;
  c.precision = 3;
  EXPECT_THROW(run_pipeline(c), invalid_input);
  c.p = 3;
  c.x = 2;
  c.y = 3;
  c.precision = 6;
  EXPECT_THROW(run_pipeline(c), invalid_input);  // not a solution
}

TEST(Pipeline, SolutionAtThree) {
  RunConfig c;
  c.p = 3;
  c.x = 19;
  c.y = 18;
  auto rep = run_pipeline(c);
  ASSERT_EQ(rep.records.size(), 2u);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(rep.count(Status::waived), 0);
}

TEST(Pipeline, PseudoSolutionStagesAndWaivers) {
  RunConfig c;
  c.p = 5;
  c.x = 3;
  c.y = 22;
  auto rep = run_pipeline(c);
  EXPECT_TRUE(rep.all_pass());
  for (const auto& r : rep.records) {
    if (r.name == "bound_clash") {
      EXPECT_EQ(r.status, Status::waived);
    }
    if (r.status == Status::waived) {
      EXPECT_FALSE(r.note.empty()) << r.name;
    }
  }
}

TEST(Pipeline, LargerPrimeRuns) {
  RunConfig c;
  c.p = 11;
  c.x = 5;
  c.y = 37;
  c.precision = 8;
  auto rep = run_pipeline(c);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(rep.records.front().status, Status::pass);  // subgroup-free annihilator exists
}

TEST(Report, JsonRoundTripAndTsv) {
  RunConfig c;
  c.p = 5;
  c.samples = 20;
  auto rep = run_identities(c);
  auto again = from_json(to_json(rep));
  EXPECT_EQ(to_json(again).dump(), to_json(rep).dump());
  std::string tsv = to_tsv(rep);
  EXPECT_EQ(static_cast<size_t>(std::count(tsv.begin(), tsv.end(), '\n')), rep.records.size() + 1);
}

TEST(Report, EmptyReportIsValid) {
  Report rep;
  rep.command = "report";
  auto j = to_json(rep);
  EXPECT_EQ(j["summary"]["total"], 0);
  EXPECT_TRUE(j["records"].is_array());
}

TEST(Report, FilesAreByteStable) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "adelic_report_test";
  fs::create_directories(dir);
  RunConfig c;
  c.p = 7;
  c.samples = 30;
  write_report(run_identities(c), (dir / "a").string());
  write_report(run_identities(c), (dir / "b").string());
  EXPECT_EQ(slurp((dir / "a.json").string()), slurp((dir / "b.json").string()));
  EXPECT_EQ(slurp((dir / "a.tsv").string()), slurp((dir / "b.tsv").string()));
  fs::remove_all(dir);
}

TEST(Identities, AllPassOrWaiveAtSmallPrimes) {
  for (long p : {3L, 5L, 7L, 11L}) {
    RunConfig c;
    c.p = p;
    c.samples = 50;
    auto rep = run_identities(c);
    EXPECT_TRUE(rep.all_pass()) << p;
    for (const auto& r : rep.records)
      if (r.status == Status::fail) ADD_FAILURE() << p << " " << r.name << " " << r.note;
  }
}
