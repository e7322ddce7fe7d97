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

// Dense revised primal simplex with persistent basis.
//
// The solver keeps its basis between calls to Solve(), so adding columns or
// removing nonbasic ones and re-solving is a warm start. Each row owns a
// logical variable (surplus for >=, slack for <=, a fixed-at-zero variable
// for =), and the initial basis is all logicals. A composite phase 1
// (minimizing the sum of bound violations of basic variables) restores
// primal feasibility whenever the current basis is infeasible, so no big-M
// is required.
//
// The basis inverse is stored explicitly and updated in product form,
// with periodic refactorization; this is adequate for the master problems
// in this project (a few hundred rows).

#ifndef GAPCG_SIMPLEX_HPP_
#define GAPCG_SIMPLEX_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace gapcg::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kGreaterEqual, kLessEqual, kEqual };

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct SparseEntry {
  int row;
  double value;
};

struct SimplexOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 100;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak_limit = 50;
  int64_t max_iterations = 1'000'000;
};

class SimplexSolver {
 public:
  using ColumnId = int;

  explicit SimplexSolver(SimplexOptions options = {});

  // Rows must all be added before the first column.
  int AddRow(RowSense sense, double rhs);
  ColumnId AddColumn(double cost, double upper_bound,
                     std::span<const SparseEntry> entries);
  // Removing a basic column swaps a logical into its basis position; the
  // next Solve() repairs feasibility if needed.
  void RemoveColumn(ColumnId column);
  void SetCost(ColumnId column, double cost);

  SolveStatus Solve();

  int num_rows() const { return num_rows_; }
  // Simplex iterations (basis changes and bound flips) of the last Solve().
  int64_t last_iterations() const { return last_iterations_; }
  int64_t total_iterations() const { return total_iterations_; }

  double objective() const;
  double value(ColumnId column) const;
  bool is_basic(ColumnId column) const;
  bool is_alive(ColumnId column) const;
  // Duals y with reduced cost d_j = c_j - y^T a_j, valid after kOptimal.
  double row_dual(int row) const { return duals_[row]; }
  std::span<const double> duals() const { return duals_; }
  double reduced_cost(ColumnId column) const;

 private:
  enum class VarStatus : uint8_t { kBasic, kAtLower, kAtUpper };

  struct Column {
    double cost = 0.0;
    double upper = kInfinity;
    std::vector<SparseEntry> entries;
    bool alive = true;
  };

  int var_of(ColumnId column) const { return num_rows_ + column; }
  double Cost(int var) const;
  double Lower(int var) const { return -shift_[var]; }
  double Upper(int var) const;
  // Relaxes the lower bounds of basic variables by small random amounts to
  // break a degenerate stall; ClearShifts() undoes it.
  void ShiftBounds();
  void ClearShifts();
  // Computes dense B^{-1} a_var into `out`.
  void Ftran(int var, std::vector<double>& out) const;
  double DotColumn(const std::vector<double>& y, int var) const;
  void Refactor();
  void ComputeBasicValues();
  void Pivot(int position, int entering, const std::vector<double>& alpha);

  SimplexOptions options_;
  int num_rows_ = 0;
  std::vector<RowSense> sense_;
  std::vector<double> rhs_;
  std::vector<Column> columns_;
  std::vector<ColumnId> live_columns_;

  // Indexed by variable (logicals first, then structurals).
  std::vector<VarStatus> status_;
  std::vector<double> x_;
  std::vector<double> shift_;  // lower bound is -shift_ (normally 0)
  uint64_t shift_state_ = 0x9e3779b97f4a7c15ULL;
  std::vector<int> basis_;        // basis position -> variable
  std::vector<int> position_of_;  // variable -> basis position or -1
  std::vector<double> binv_;      // row-major num_rows_ x num_rows_
  bool needs_refactor_ = true;
  int updates_since_refactor_ = 0;

  std::vector<double> duals_;
  int64_t last_iterations_ = 0;
  int64_t total_iterations_ = 0;
};

}  // namespace gapcg::lp

#endif  // GAPCG_SIMPLEX_HPP_
