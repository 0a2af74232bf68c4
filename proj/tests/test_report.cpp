#include <gtest/gtest.h>

#include "roommates/report.hpp"
#include "support/bridge.hpp"

using namespace roommates;

TEST(Report, EmptyBatchIsHeaderOnly) {
  EXPECT_EQ(report_to_csv(run_report({})), std::string(kReportCsvHeader) + "\n");
  const auto j = report_to_json(run_report({}));
  EXPECT_EQ(j["version"], kReportVersion);
  EXPECT_TRUE(j["rows"].empty());
}

TEST(Report, RowsFollowInputOrder) {
  std::vector<BatchItem> batch;
  for (const char* algo : {"sd", "cttc", "cttcr", "dm-ls"}) {
    BatchItem item{std::string("table9-") + algo, support::load("table9"), algo};
    item.options.initial = Assignment::identity(6);
    batch.push_back(item);
  }
  const auto rows = run_report(batch, 3);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].algo, "cttc");
  EXPECT_EQ(*rows[1].sw, 32);
  EXPECT_EQ(*rows[1].blocking_4ps, 4u);
  EXPECT_EQ(*rows[2].sw, 58);
  EXPECT_EQ(*rows[2].blocking_4ps, 0u);
  EXPECT_EQ(*rows[2].steps, 1u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty());
    EXPECT_LE(*r.sw, *r.max_sw);
  }
  const std::string csv = report_to_csv(rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_NE(csv.find("table9-cttcr,cttcr,58,"), std::string::npos);
}

TEST(Report, OracleCapIsReportedInRow) {
  BatchItem item{"big", zero_instance(14), "sd"};
  const auto rows = run_report({item});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NE(rows[0].error.find("InstanceTooLarge"), std::string::npos);
  EXPECT_TRUE(rows[0].sw.has_value());
  EXPECT_FALSE(rows[0].max_sw.has_value());
}

TEST(Report, AlgorithmErrorIsReportedInRow) {
  BatchItem item{"t11", support::load("table11"), "swap"};
  const auto rows = run_report({item});
  EXPECT_NE(rows[0].error.find("NotBinarySymmetric"), std::string::npos);
  EXPECT_FALSE(rows[0].sw.has_value());
}

TEST(Report, FixtureDirectory) {
  const auto all = load_fixture_dir(FIXTURE_DIR);
  ASSERT_GE(all.size(), 12u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
}
