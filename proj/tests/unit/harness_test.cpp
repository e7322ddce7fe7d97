// Copyright 2026 The gapcg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapcg/harness.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "gapcg/report.hpp"
#include "test_util.hpp"

namespace gapcg {
namespace {

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> Cells(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, '\t');) out.push_back(cell);
  return out;
}

TEST(GeometricMeanTest, Values) {
  const std::vector<double> v = {1, 4, 16};
  EXPECT_NEAR(GeometricMean(v), 4.0, 1e-12);
  const std::vector<double> one = {7};
  EXPECT_NEAR(GeometricMean(one), 7.0, 1e-12);
}

TEST(SelectThresholdTest, HandComputedWindowThree) {
  const std::vector<int> taus = {1, 2, 3, 4, 5};
  const std::vector<double> t = {10, 3, 3.01, 3.2, 9};
  const SweepSelection s = SelectThreshold(taus, t, 3, 0.01, 1.0);
  ASSERT_EQ(s.smoothed.size(), 5u);
  EXPECT_NEAR(s.smoothed[0], std::sqrt(30.0), 1e-9);
  EXPECT_NEAR(s.smoothed[1], std::cbrt(10 * 3 * 3.01), 1e-9);
  EXPECT_NEAR(s.smoothed[2], std::cbrt(3 * 3.01 * 3.2), 1e-9);
  EXPECT_NEAR(s.smoothed[3], std::cbrt(3.01 * 3.2 * 9), 1e-9);
  EXPECT_NEAR(s.smoothed[4], std::sqrt(3.2 * 9), 1e-9);
  EXPECT_EQ(s.index, 2u);
  EXPECT_EQ(s.tau, 3);
}

TEST(SelectThresholdTest, FlatProfilePicksSmallest) {
  const std::vector<int> taus = {5, 10, 20, 40};
  const std::vector<double> t(4, 2.5);
  EXPECT_EQ(SelectThreshold(taus, t, 5, 0.01, 1.0).tau, 5);
}

TEST(SelectThresholdTest, RelativeTie) {
  const std::vector<int> taus = {10, 20, 30, 40};
  const std::vector<double> t = {500, 403, 400, 600};
  EXPECT_EQ(SelectThreshold(taus, t, 1, 0.01, 0.0).tau, 20);
  EXPECT_EQ(SelectThreshold(taus, t, 1, 0.001, 0.0).tau, 30);
}

TEST(SelectThresholdTest, AbsoluteTie) {
  const std::vector<int> taus = {10, 20, 30, 40};
  const std::vector<double> t = {100, 50.9, 50, 70};
  EXPECT_EQ(SelectThreshold(taus, t, 1, 0.01, 1.0).tau, 20);
  EXPECT_EQ(SelectThreshold(taus, t, 1, 0.01, 0.5).tau, 30);
}

TEST(SelectThresholdTest, RejectsBadInput) {
  const std::vector<int> taus = {1, 2};
  const std::vector<int> bad = {2, 2};
  const std::vector<double> t = {1, 1};
  const std::vector<double> t3 = {1, 1, 1};
  EXPECT_THROW(SelectThreshold({}, {}, 3, 0.01, 1), std::invalid_argument);
  EXPECT_THROW(SelectThreshold(taus, t3, 3, 0.01, 1), std::invalid_argument);
  EXPECT_THROW(SelectThreshold(taus, t, 2, 0.01, 1), std::invalid_argument);
  EXPECT_THROW(SelectThreshold(bad, t, 3, 0.01, 1), std::invalid_argument);
}

TEST(RunSweepTest, InjectedTimer) {
  SweepSpec spec;
  spec.tau_values = {1, 2, 3, 4, 5};
  spec.replications = 3;
  spec.smoothing_window = 3;
  const std::vector<double> base = {10, 3, 3.01, 3.2, 9};
  const SweepResult r = RunSweep(spec, [&](int tau, int rep) {
    // Replications spread around the base value with geometric mean base.
    const double f[] = {0.5, 1.0, 2.0};
    return base[tau - 1] * f[rep];
  });
  ASSERT_EQ(r.raw.size(), 5u);
  for (size_t k = 0; k < 5; ++k) EXPECT_NEAR(r.raw[k], base[k], 1e-9);
  EXPECT_EQ(r.selection.tau, 3);
  std::ostringstream out;
  WriteSweepTsv(r, out);
  const auto lines = Lines(out.str());
  EXPECT_EQ(lines.front(), "tau\ttime_0\ttime_1\ttime_2\traw_geomean\tsmoothed\tselected");
  EXPECT_EQ(lines.back(), "# selected_tau=3");
}

TEST(RunSweepTest, RealRunsCountTimeouts) {
  const GapInstance inst = testing::SmallInstance(3, 12, 3);
  SweepSpec spec;
  spec.tau_values = {1, 4};
  spec.replications = 2;
  spec.smoothing_window = 1;
  spec.time_limit = 10;
  const SweepResult r = RunSweep(inst, "lt", spec, CgConfig{});
  ASSERT_EQ(r.times.size(), 2u);
  for (const auto& row : r.times) {
    ASSERT_EQ(row.size(), 2u);
    for (double t : row) EXPECT_LE(t, 10.0);
  }
}

TEST(BenchTest, RowAndSummaryCounts) {
  const std::vector<GapInstance> inst = {testing::SmallInstance(3, 9, 1),
                                         testing::SmallInstance(3, 9, 2)};
  const std::vector<std::string> methods = {"dantzig", "lt"};
  const std::vector<uint64_t> seeds = {0, 1};
  CgConfig base;
  base.time_limit = std::chrono::duration<double>(20.0);
  const auto rows = RunBench(inst, methods, seeds, base, 3);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].method, "dantzig");
  EXPECT_EQ(rows[2].method, "lt");
  EXPECT_EQ(rows[1].seed, 1u);
  std::ostringstream out;
  WriteBenchTsv(rows, out);
  const auto lines = Lines(out.str());
  ASSERT_EQ(lines.size(), 11u);
  const size_t width = Cells(lines[0]).size();
  int summaries = 0;
  for (size_t k = 1; k < lines.size(); ++k) {
    const auto cells = Cells(lines[k]);
    EXPECT_EQ(cells.size(), width) << lines[k];
    for (const auto& c : cells) {
      EXPECT_FALSE(c.empty());
      EXPECT_EQ(c.find("nan"), std::string::npos);
      EXPECT_EQ(c.find("inf"), std::string::npos);
    }
    summaries += cells[0] == "geomean";
  }
  EXPECT_EQ(summaries, 2);
  // Enumerable toys: every method reports the same lb_int.
  for (size_t k = 0; k < rows.size(); k += 4) {
    ASSERT_TRUE(rows[k].report && rows[k + 2].report);
    EXPECT_EQ(rows[k].report->bounds.lb_int, rows[k + 2].report->bounds.lb_int);
  }
}

TEST(BenchTest, ErrorsRecordedPerRow) {
  const std::vector<GapInstance> inst = {testing::SmallInstance(2, 6, 1)};
  const std::vector<std::string> methods = {"nope", "dantzig"};
  const std::vector<uint64_t> seeds = {0};
  const auto rows = RunBench(inst, methods, seeds, CgConfig{}, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_FALSE(rows[0].report.has_value());
  EXPECT_TRUE(rows[1].report.has_value());
}

TEST(BenchTest, DeterministicNonTimingColumns) {
  const GapInstance inst = testing::SmallInstance(3, 12, 4);
  CgConfig cfg;
  cfg.method = PricingMethod::kLagrangeTemplate;
  const RunReport a = RunMethod(inst, "lt", cfg);
  const RunReport b = RunMethod(inst, "lt", cfg);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.total_pivots, b.total_pivots);
  EXPECT_EQ(a.bounds.lb_int, b.bounds.lb_int);
  EXPECT_EQ(a.bounds.ub, b.bounds.ub);
}

TEST(ReportTest, MissingCellsAreDashes) {
  EXPECT_EQ(FormatCell(std::optional<double>{}), "-");
  EXPECT_EQ(FormatCell(std::optional<int64_t>{}), "-");
  EXPECT_EQ(FormatNumber(std::nan("")), "-");
  EXPECT_EQ(FormatNumber(0.25), "0.25");
  RunReport r;
  r.instance_name = "x";
  r.method = "dantzig";
  r.rows.push_back(IterationRow{});
  std::ostringstream out;
  WriteRunTsv(r, out);
  const auto lines = Lines(out.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(Cells(lines[0]).size(), Cells(lines[1]).size());
  EXPECT_EQ(lines[0].substr(0, 15), "iteration\tphase");
  EXPECT_EQ(lines[2].substr(0, 9), "# summary");
}

}  // namespace
}  // namespace gapcg
