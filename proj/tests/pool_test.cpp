#include <gtest/gtest.h>

#include <set>

#include "loghet/pool.hpp"
#include "loghet/synthetic.hpp"
#include "test_util.hpp"

namespace loghet {
namespace {

using testing::labeled;

TEST(OutlierPoolTest, NoFrequencySignalTakesFirstRecords) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (int i = 0; i < 100; ++i) rows.push_back({"unique " + std::to_string(i), "unique " + std::to_string(i)});
  const std::vector<Dataset> sets = {labeled("u", rows)};
  const auto pool = build_outlier_pool(sets, 0.05);
  ASSERT_EQ(pool.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(pool.entries[i].content, "unique " + std::to_string(i));
}

TEST(OutlierPoolTest, RarestTemplatesFirst) {
  // 96 lines of one template, singletons at positions 10, 30, 50, 70.
  std::vector<std::pair<std::string, std::string>> rows;
  for (int i = 0; i < 100; ++i) {
    if (i == 10 || i == 30 || i == 50 || i == 70) {
      rows.push_back({"rare event " + std::to_string(i), "rare event " + std::to_string(i)});
    } else {
      rows.push_back({"common " + std::to_string(i), "common <*>"});
    }
  }
  const std::vector<Dataset> sets = {labeled("d", rows)};
  const auto pool = build_outlier_pool(sets, 0.05);
  ASSERT_EQ(pool.size(), 5u);
  EXPECT_EQ(pool.entries[0].content, "rare event 10");
  EXPECT_EQ(pool.entries[3].content, "rare event 70");
  EXPECT_EQ(pool.entries[4].content, "common 0");
  EXPECT_EQ(pool.entries[4].ground_truth.text(), "common <*>");
}

TEST(OutlierPoolTest, DeduplicatesByContentAndKeepsSource) {
  const std::vector<Dataset> sets = {labeled("A", {{"same line", "same line"}, {"x", "x"}}),
                                     labeled("B", {{"same line", "same line"}, {"y", "y"}})};
  const auto pool = build_outlier_pool(sets, 1.0);
  ASSERT_EQ(pool.size(), 3u);
  EXPECT_EQ(pool.entries[0].source, "A");
  std::set<std::string> contents;
  for (const auto& e : pool.entries) EXPECT_TRUE(contents.insert(e.content).second);
}

TEST(OutlierPoolTest, SizeMonotoneInFraction) {
  const auto suite = synthetic::benchmark_suite(400, 2);
  std::size_t last = 0;
  for (double f : {0.01, 0.05, 0.1, 0.25, 0.5, 1.0}) {
    const auto size = build_outlier_pool(suite, f).size();
    EXPECT_GE(size, last);
    last = size;
  }
}

TEST(OutlierPoolTest, EntriesComeFromTheirSource) {
  const auto suite = synthetic::benchmark_suite(400, 2);
  const auto pool = build_outlier_pool(suite, 0.05);
  for (const auto& e : pool.entries) {
    std::size_t holders = 0;
    bool source_has = false;
    for (const auto& ds : suite) {
      const bool has = std::any_of(ds.records.begin(), ds.records.end(),
                                   [&](const LogRecord& r) { return r.content == e.content; });
      holders += has;
      if (ds.name == e.source) source_has = has;
    }
    EXPECT_TRUE(source_has) << e.content;
    EXPECT_EQ(holders, 1u) << e.content;
  }
}

TEST(OutlierPoolTest, RejectsUnlabeledAndBadFraction) {
  const std::vector<Dataset> unlabeled = {labeled("u", {{"a", ""}})};
  try {
    build_outlier_pool(unlabeled, 0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::labeling);
  }
  const std::vector<Dataset> ok = {labeled("u", {{"a", "a"}})};
  EXPECT_THROW(build_outlier_pool(ok, 0.0), Error);
  EXPECT_THROW(build_outlier_pool(ok, 1.5), Error);
}

TEST(VariablePoolTest, CollectsVariables) {
  const std::vector<Dataset> sets = {
      labeled("A", {{"Template log 1", "Template log <*>"}, {"Template log 2", "Template log <*>"}})};
  const auto built = build_variable_pool(sets);
  ASSERT_EQ(built.pool.size(), 2u);
  EXPECT_EQ(built.pool.values[0].value, "1");
  EXPECT_EQ(built.pool.values[1].value, "2");
  EXPECT_TRUE(built.skipped.empty());
}

TEST(VariablePoolTest, NoWildcardsNoValues) {
  const std::vector<Dataset> sets = {labeled("A", {{"static line", "static line"}})};
  EXPECT_TRUE(build_variable_pool(sets).pool.empty());
}

TEST(VariablePoolTest, DuplicateValueKeepsBothSources) {
  const std::vector<Dataset> sets = {labeled("A", {{"from 10.0.0.1", "from <*>"}}),
                                     labeled("B", {{"to 10.0.0.1", "to <*>"}})};
  const auto pool = build_variable_pool(sets).pool;
  ASSERT_EQ(pool.size(), 1u);
  EXPECT_EQ(pool.values[0].value, "10.0.0.1");
  EXPECT_EQ(pool.values[0].sources, (std::vector<std::string>{"A", "B"}));
}

TEST(VariablePoolTest, MisalignedRecordsAreReportedNotFatal) {
  const std::vector<Dataset> sets = {labeled("A", {{"x 1", "x <*>"}, {"totally different", "x <*>"}})};
  const auto built = build_variable_pool(sets);
  EXPECT_EQ(built.pool.size(), 1u);
  ASSERT_EQ(built.skipped.size(), 1u);
  EXPECT_EQ(built.skipped[0], (SkippedRecord{"A", 2}));
}

TEST(PoolFilesTest, DeterministicRoundTrip) {
  const auto suite = synthetic::benchmark_suite(300, 3);
  const auto outliers = build_outlier_pool(suite, 0.05);
  const auto vars = build_variable_pool(suite).pool;
  EXPECT_EQ(format_outlier_pool(outliers), format_outlier_pool(build_outlier_pool(suite, 0.05)));
  EXPECT_EQ(format_variable_pool(vars), format_variable_pool(build_variable_pool(suite).pool));

  testing::TempDir dir;
  write_outlier_pool(outliers, dir / "outlier_pool.csv");
  write_variable_pool(vars, dir / "variable_pool.tsv");
  EXPECT_EQ(load_outlier_pool(outlier_pool_path(dir.path())), outliers);
  EXPECT_EQ(load_variable_pool(variable_pool_path(dir.path())), vars);
}

TEST(PoolFilesTest, EscapesTabsAndBackslashes) {
  VariablePool pool{{{"a\tb\\c", {"X", "Y"}}}};
  const auto text = format_variable_pool(pool);
  EXPECT_EQ(text, "a\\tb\\\\c\tX\tY\n");
  EXPECT_EQ(parse_variable_pool(text), pool);
}

}  // namespace
}  // namespace loghet
