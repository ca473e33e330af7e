#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "ree_lab/errors.hpp"
#include "ree_lab/harness.hpp"
#include "ree_lab/state_io.hpp"

namespace ree_lab {
namespace {

SuiteConfig config(const std::string& suite, int trials, std::uint64_t seed = 1) {
  SuiteConfig c;
  c.suite = suite;
  c.trials = trials;
  c.seed = seed;
  c.threads = 1;
  return c;
}

TEST(Harness, SuiteNames) {
  EXPECT_EQ(suite_names().size(), 8u);
  EXPECT_TRUE(is_known_suite("theorem1"));
  EXPECT_FALSE(is_known_suite("theorem2"));
  EXPECT_THROW(run_suite(config("theorem2", 3)), InputError);
}

TEST(Harness, ReportIsIndependentOfThreadCount) {
  auto c = config("theorem1", 40, 7);
  const std::string serial = format_report(run_suite(c));
  c.threads = 4;
  EXPECT_EQ(format_report(run_suite(c)), serial);
  c.threads = 1;
  c.seed = 8;
  EXPECT_NE(format_report(run_suite(c)), serial);
}

TEST(Harness, RecordsCarryDerivedSeeds) {
  const auto report = run_suite(config("reduction", 5, 3));
  ASSERT_EQ(report.records.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(report.records[i].trial, i);
    EXPECT_EQ(report.records[i].seed, derive_seed(3, "reduction", i));
    EXPECT_EQ(report.records[i].pass, report.records[i].margin >= -1e-9);
  }
}

TEST(Harness, SummaryCounts) {
  const auto report = run_suite(config("theorem1", 50));
  const auto& s = report.summary;
  EXPECT_EQ(s.trials, 50);
  EXPECT_EQ(s.passed + s.failed + s.discarded, 50);
  EXPECT_TRUE(s.pass);
  EXPECT_GE(s.worst_margin, -1e-8);
}

TEST(Harness, FormatIsLineDelimitedJson) {
  const auto text = format_report(run_suite(config("reduction", 3)));
  std::size_t lines = 0, start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const auto j = nlohmann::json::parse(text.substr(start, end - start));
    EXPECT_TRUE(j.contains("type"));
    start = end + 1;
    ++lines;
  }
  EXPECT_EQ(lines, 4u);
}

TEST(Harness, MonotoneSuiteSemantics) {
  auto c = config("monotone", 50);
  c.function = "square";
  const auto sq = run_suite(c);
  EXPECT_TRUE(sq.summary.pass);
  EXPECT_EQ(sq.summary.extras.at("counterexample_found"), 1.0);
  EXPECT_EQ(sq.summary.extras.at("first_counterexample_trial"), 0.0);
  c.function = "log";
  c.dim = 3;
  const auto lg = run_suite(c);
  EXPECT_TRUE(lg.summary.pass);
  EXPECT_EQ(lg.summary.extras.at("counterexample_found"), 0.0);
  c.function = "nope";
  EXPECT_THROW(run_suite(c), InputError);
}

TEST(Harness, ToleranceOverrideChangesVerdict) {
  auto c = config("corollary1", 2);
  EXPECT_TRUE(run_suite(c).summary.pass);
  // solver deviations sit near 1e-9, above this override
  c.tol.corollary1 = 1e-15;
  EXPECT_FALSE(run_suite(c).summary.pass);
}

TEST(Harness, FormationSuiteNeedsTwoQubits) {
  auto c = config("corollary2", 2);
  c.dims = {2, 3};
  EXPECT_THROW(run_suite(c), InputError);
}

TEST(ParallelFor, CoversRangeAndRethrows) {
  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](int i) { sum += i; });
  EXPECT_EQ(sum.load(), 4950);
  EXPECT_THROW(parallel_for(10, 3, [](int i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

}  // namespace
}  // namespace ree_lab
