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

#include "gapcg/simplex.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracle/dense_lp.hpp"

namespace gapcg::lp {
namespace {

struct RandomLp {
  oracle::DenseLp dense;
  std::vector<double> upper;
};

oracle::Sense ToOracle(RowSense s) {
  switch (s) {
    case RowSense::kGreaterEqual:
      return oracle::Sense::kGe;
    case RowSense::kLessEqual:
      return oracle::Sense::kLe;
    case RowSense::kEqual:
      return oracle::Sense::kEq;
  }
  return oracle::Sense::kEq;
}

// Loads rows and the first `cols` columns of `lp` into a solver.
void Load(const oracle::DenseLp& lp, const std::vector<double>& upper,
          const std::vector<RowSense>& senses, size_t cols, SimplexSolver& s,
          std::vector<int>& ids) {
  for (size_t r = 0; r < lp.a.size(); ++r) s.AddRow(senses[r], lp.b[r]);
  for (size_t j = 0; j < cols; ++j) {
    std::vector<SparseEntry> e;
    for (size_t r = 0; r < lp.a.size(); ++r) {
      if (lp.a[r][j] != 0.0) e.push_back({static_cast<int>(r), lp.a[r][j]});
    }
    ids.push_back(s.AddColumn(lp.c[j], upper[j], e));
  }
}

// The oracle has no column bounds; finite ones become extra rows.
oracle::DenseLp WithBoundRows(oracle::DenseLp lp, const std::vector<double>& upper,
                              size_t cols) {
  lp.c.resize(cols);
  for (auto& row : lp.a) row.resize(cols);
  for (size_t j = 0; j < cols; ++j) {
    if (upper[j] == kInfinity) continue;
    std::vector<double> row(cols, 0.0);
    row[j] = 1.0;
    lp.a.push_back(row);
    lp.sense.push_back(oracle::Sense::kLe);
    lp.b.push_back(upper[j]);
  }
  return lp;
}

TEST(SimplexTest, TinyKnownOptimum) {
  // min x + y  s.t. x + 2y >= 4, 3x + y >= 6 -> x = 1.6, y = 1.2
  SimplexSolver s;
  s.AddRow(RowSense::kGreaterEqual, 4);
  s.AddRow(RowSense::kGreaterEqual, 6);
  const SparseEntry cx[] = {{0, 1}, {1, 3}};
  const SparseEntry cy[] = {{0, 2}, {1, 1}};
  const int x = s.AddColumn(1, kInfinity, cx);
  const int y = s.AddColumn(1, kInfinity, cy);
  ASSERT_EQ(s.Solve(), SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective(), 2.8, 1e-9);
  EXPECT_NEAR(s.value(x), 1.6, 1e-9);
  EXPECT_NEAR(s.value(y), 1.2, 1e-9);
  EXPECT_NEAR(s.row_dual(0), 0.4, 1e-9);
  EXPECT_NEAR(s.row_dual(1), 0.2, 1e-9);
}

TEST(SimplexTest, InfeasibleAndUnbounded) {
  SimplexSolver a;
  a.AddRow(RowSense::kLessEqual, 1);
  a.AddRow(RowSense::kGreaterEqual, 2);
  const SparseEntry e[] = {{0, 1}, {1, 1}};
  a.AddColumn(1, kInfinity, e);
  EXPECT_EQ(a.Solve(), SolveStatus::kInfeasible);

  SimplexSolver b;
  b.AddRow(RowSense::kGreaterEqual, 1);
  const SparseEntry f[] = {{0, 1}};
  b.AddColumn(-1, kInfinity, f);
  EXPECT_EQ(b.Solve(), SolveStatus::kUnbounded);
}

TEST(SimplexTest, UpperBoundFlip) {
  // min -x - y  s.t. x + y <= 3, x <= 1 (bound), y <= 5 (bound)
  SimplexSolver s;
  s.AddRow(RowSense::kLessEqual, 3);
  const SparseEntry e[] = {{0, 1}};
  const int x = s.AddColumn(-2, 1, e);
  const int y = s.AddColumn(-1, 5, e);
  ASSERT_EQ(s.Solve(), SolveStatus::kOptimal);
  EXPECT_NEAR(s.value(x), 1, 1e-9);
  EXPECT_NEAR(s.value(y), 2, 1e-9);
  EXPECT_NEAR(s.objective(), -4, 1e-9);
}

class RandomLpTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomLpTest, MatchesDenseOracle) {
  std::mt19937_64 rng(GetParam());
  const int m = std::uniform_int_distribution<int>(1, 7)(rng);
  const int n = std::uniform_int_distribution<int>(1, 12)(rng);
  oracle::DenseLp lp;
  std::vector<RowSense> senses;
  std::vector<double> upper;
  std::uniform_int_distribution<int> coef(-2, 4);
  for (int r = 0; r < m; ++r) {
    std::vector<double> row;
    for (int j = 0; j < n; ++j) {
      row.push_back(std::uniform_int_distribution<int>(0, 2)(rng) ? coef(rng) : 0);
    }
    lp.a.push_back(row);
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    senses.push_back(kind == 0   ? RowSense::kGreaterEqual
                     : kind == 1 ? RowSense::kLessEqual
                                 : RowSense::kEqual);
    lp.sense.push_back(ToOracle(senses.back()));
    lp.b.push_back(std::uniform_int_distribution<int>(-3, 8)(rng));
  }
  for (int j = 0; j < n; ++j) {
    // Nonnegative costs keep the LP bounded below.
    lp.c.push_back(std::uniform_int_distribution<int>(0, 9)(rng));
    upper.push_back(std::uniform_int_distribution<int>(0, 3)(rng) == 0
                        ? std::uniform_int_distribution<int>(1, 4)(rng)
                        : kInfinity);
  }

  // Cold solve on the first half, then warm re-solve with all columns.
  SimplexSolver s;
  std::vector<int> ids;
  const size_t half = static_cast<size_t>(n) / 2;
  Load(lp, upper, senses, half, s, ids);
  for (size_t step : {half, static_cast<size_t>(n)}) {
    for (size_t j = ids.size(); j < step; ++j) {
      std::vector<SparseEntry> e;
      for (int r = 0; r < m; ++r) {
        if (lp.a[r][j] != 0.0) e.push_back({r, lp.a[r][j]});
      }
      ids.push_back(s.AddColumn(lp.c[j], upper[j], e));
    }
    const oracle::DenseLpResult ref =
        oracle::SolveDenseLp(WithBoundRows(lp, upper, step));
    const SolveStatus st = s.Solve();
    if (!ref.feasible) {
      EXPECT_EQ(st, SolveStatus::kInfeasible) << "seed " << GetParam();
      continue;
    }
    ASSERT_EQ(st, SolveStatus::kOptimal) << "seed " << GetParam();
    EXPECT_NEAR(s.objective(), ref.objective, 1e-7) << "seed " << GetParam();
    // Primal feasibility of the reported point.
    for (int r = 0; r < m; ++r) {
      double act = 0.0;
      for (size_t j = 0; j < step; ++j) act += lp.a[r][j] * s.value(ids[j]);
      if (senses[r] != RowSense::kLessEqual) EXPECT_GE(act, lp.b[r] - 1e-7);
      if (senses[r] != RowSense::kGreaterEqual) EXPECT_LE(act, lp.b[r] + 1e-7);
    }
    // Dual signs and reduced-cost optimality.
    for (int r = 0; r < m; ++r) {
      if (senses[r] == RowSense::kGreaterEqual) EXPECT_GE(s.row_dual(r), -1e-7);
      if (senses[r] == RowSense::kLessEqual) EXPECT_LE(s.row_dual(r), 1e-7);
    }
    for (size_t j = 0; j < step; ++j) {
      const double v = s.value(ids[j]);
      const double d = s.reduced_cost(ids[j]);
      if (v < 1e-9) EXPECT_GE(d, -1e-7);
      if (v > upper[j] - 1e-9) EXPECT_LE(d, 1e-7);
      if (v > 1e-9 && v < upper[j] - 1e-9) EXPECT_NEAR(d, 0.0, 1e-7);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomLpTest, ::testing::Range(0, 150));

TEST(SimplexTest, RemoveColumnAndResolve) {
  // Cover two rows; removing the cheap column forces the expensive ones.
  SimplexSolver s;
  s.AddRow(RowSense::kGreaterEqual, 1);
  s.AddRow(RowSense::kGreaterEqual, 1);
  const SparseEntry both[] = {{0, 1}, {1, 1}};
  const SparseEntry r0[] = {{0, 1}};
  const SparseEntry r1[] = {{1, 1}};
  const int cheap = s.AddColumn(1, kInfinity, both);
  s.AddColumn(2, kInfinity, r0);
  s.AddColumn(2, kInfinity, r1);
  ASSERT_EQ(s.Solve(), SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective(), 1, 1e-9);
  EXPECT_TRUE(s.is_basic(cheap));
  s.RemoveColumn(cheap);
  EXPECT_FALSE(s.is_alive(cheap));
  ASSERT_EQ(s.Solve(), SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective(), 4, 1e-9);
}

TEST(SimplexTest, WarmStartNoPivotsWhenUnchanged) {
  SimplexSolver s;
  s.AddRow(RowSense::kGreaterEqual, 4);
  s.AddRow(RowSense::kGreaterEqual, 6);
  const SparseEntry cx[] = {{0, 1}, {1, 3}};
  const SparseEntry cy[] = {{0, 2}, {1, 1}};
  s.AddColumn(1, kInfinity, cx);
  s.AddColumn(1, kInfinity, cy);
  ASSERT_EQ(s.Solve(), SolveStatus::kOptimal);
  EXPECT_GT(s.last_iterations(), 0);
  ASSERT_EQ(s.Solve(), SolveStatus::kOptimal);
  EXPECT_EQ(s.last_iterations(), 0);
}

TEST(SimplexTest, DegenerateAssignmentLp) {
  // Highly degenerate: n x n assignment polytope.
  const int n = 12;
  std::mt19937_64 rng(9);
  SimplexSolver s;
  oracle::DenseLp lp;
  for (int r = 0; r < 2 * n; ++r) {
    s.AddRow(RowSense::kEqual, 1);
    lp.sense.push_back(oracle::Sense::kEq);
    lp.b.push_back(1);
  }
  lp.a.assign(2 * n, std::vector<double>(n * n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double c = std::uniform_int_distribution<int>(1, 3)(rng);
      const SparseEntry e[] = {{i, 1}, {n + j, 1}};
      s.AddColumn(c, kInfinity, e);
      lp.c.push_back(c);
      lp.a[i][i * n + j] = 1;
      lp.a[n + j][i * n + j] = 1;
    }
  }
  ASSERT_EQ(s.Solve(), SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective(), oracle::SolveDenseLp(lp).objective, 1e-7);
}

}  // namespace
}  // namespace gapcg::lp
