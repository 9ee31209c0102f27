#include <gtest/gtest.h>

#include "rlfc/reports.hpp"

namespace {

double cell_double(const rlfc::Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return static_cast<double>(std::get<std::int64_t>(c));
}

std::size_t column(const rlfc::Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  throw std::out_of_range(name);
}

}  // namespace

TEST(Table, SixSignificantDigits) {
  EXPECT_EQ(rlfc::format_double(384.0 / 525.0), "0.731429");
  EXPECT_EQ(rlfc::format_double(1.0), "1");
  EXPECT_EQ(rlfc::format_double(1e-7), "1e-07");
  EXPECT_EQ(rlfc::format_double(5.3541666), "5.35417");
}

TEST(Table, CsvQuotingAndHeader) {
  rlfc::Table t;
  t.columns = {"a", "b,c"};
  t.add_row({std::string("x\"y"), std::int64_t{3}});
  EXPECT_EQ(rlfc::to_csv(t), "a,\"b,c\"\n\"x\"\"y\",3\n");
  rlfc::Table empty;
  empty.columns = {"only"};
  EXPECT_EQ(rlfc::to_csv(empty), "only\n");
  EXPECT_THROW(t.add_row({std::int64_t{1}}), rlfc::DimensionError);
}

TEST(Table, CsvRoundTripIsByteIdentical) {
  rlfc::Rng gen(9);
  for (int trial = 0; trial < 200; ++trial) {
    rlfc::Table t;
    const std::size_t cols = 1 + gen() % 6;
    for (std::size_t c = 0; c < cols; ++c) t.columns.push_back("c" + std::to_string(c));
    for (std::size_t r = 0, rows = gen() % 10; r < rows; ++r) {
      std::vector<rlfc::Cell> row;
      for (std::size_t c = 0; c < cols; ++c) {
        switch (gen() % 3) {
          case 0:
            row.emplace_back(static_cast<std::int64_t>(gen() % 2000) - 1000);
            break;
          case 1:
            row.emplace_back(std::ldexp(rlfc::uniform01(gen), static_cast<int>(gen() % 40) - 30));
            break;
          default:
            row.emplace_back(std::string(gen() % 2 ? "gamma" : "a,\"b\""));
        }
      }
      t.add_row(std::move(row));
    }
    const std::string csv = rlfc::to_csv(t);
    EXPECT_EQ(rlfc::to_csv(rlfc::parse_csv(csv)), csv);
  }
}

TEST(Table, JsonMirrorsCsvKeys) {
  const auto t = rlfc::analyze_table({5, 2, 2, false, 2, false});
  const auto j = rlfc::to_json(t);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["delta"], 0);
  EXPECT_EQ(j[0]["cdf"].get<double>(), 0.731429);
  EXPECT_EQ(j[0]["model"], "gamma");
  EXPECT_THROW(rlfc::render(t, "xml"), rlfc::ConfigError);
}

TEST(Analyze, Examples) {
  auto t = rlfc::analyze_table({5, 2, 2, false, 8, false});
  EXPECT_EQ(t.rows.size(), 9u);
  EXPECT_NEAR(cell_double(t.rows[0][column(t, "cdf")]), 0.731429, 5e-7);

  t = rlfc::analyze_table({3, 2, 2, false, 8, false});
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(cell_double(t.rows[0][column(t, "cdf")]), 1.0);

  t = rlfc::analyze_table({20, 2, 0, false, 64, true});
  bool found = false;
  for (const auto& row : t.rows) {
    if (std::get<std::string>(row[0]) == "traditional") {
      EXPECT_NEAR(cell_double(row[column(t, "expected_excess")]), 1.6, 0.05);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Analyze, ExpectationsIgnorePrintedRange) {
  const auto narrow = rlfc::analyze_table({12, 2, 1, false, 2, false});
  const auto wide = rlfc::analyze_table({12, 2, 1, false, 30, false});
  const std::size_t col = column(narrow, "expected_excess");
  EXPECT_EQ(cell_double(narrow.rows[0][col]), cell_double(wide.rows[0][col]));
}

TEST(Compare, TrivialCaseHasZeroDeviation) {
  rlfc::CompareOptions o;
  o.k = 3;
  o.gamma = 2;
  o.runs = 100;
  const auto res = rlfc::compare(o);
  EXPECT_TRUE(res.passed);
  EXPECT_EQ(res.max_abs_deviation, 0.0);
  EXPECT_EQ(cell_double(res.table.rows[0][column(res.table, "empirical_pmf")]), 1.0);
}

TEST(Compare, BlockackGatePasses) {
  rlfc::CompareOptions o;
  o.k = 10;
  o.gamma = 1;
  o.blockack = true;
  o.runs = 100000;
  o.seed = 7;
  const auto res = rlfc::compare(o);
  EXPECT_TRUE(res.passed) << rlfc::to_csv(res.table);
}

TEST(Compare, TraditionalAgainstBaseline) {
  rlfc::CompareOptions o;
  o.k = 6;
  o.traditional = true;
  o.runs = 50000;
  o.seed = 3;
  const auto res = rlfc::compare(o);
  EXPECT_TRUE(res.passed) << rlfc::to_csv(res.table);
}

TEST(Compare, TailBinPoolsSparseCells) {
  rlfc::CompareOptions o;
  o.k = 8;
  o.gamma = 0;
  o.runs = 2000;
  const auto res = rlfc::compare(o);
  const auto& last = res.table.rows.back();
  EXPECT_EQ(std::get<std::string>(last[column(res.table, "bin")]), "ge");
  for (std::size_t r = 0; r + 1 < res.table.rows.size(); ++r) {
    EXPECT_GE(cell_double(res.table.rows[r][column(res.table, "pmf")]) * 2000, 5.0);
  }
}
