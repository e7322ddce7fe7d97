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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace gapcg::lp {
namespace {

// Threshold below which a candidate pivot in the refactorization is treated
// as zero, i.e. the basis column is dependent.
constexpr double kSingularTolerance = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr double kBlandTie = 1e-12;

}  // namespace

SimplexSolver::SimplexSolver(SimplexOptions options) : options_(options) {}

int SimplexSolver::AddRow(RowSense sense, double rhs) {
  if (!columns_.empty()) {
    throw std::logic_error("rows must be added before columns");
  }
  sense_.push_back(sense);
  rhs_.push_back(rhs);
  status_.push_back(VarStatus::kAtLower);
  x_.push_back(0.0);
  shift_.push_back(0.0);
  position_of_.push_back(-1);
  needs_refactor_ = true;
  basis_.clear();
  return num_rows_++;
}

SimplexSolver::ColumnId SimplexSolver::AddColumn(
    double cost, double upper_bound, std::span<const SparseEntry> entries) {
  Column column;
  column.cost = cost;
  column.upper = upper_bound;
  column.entries.assign(entries.begin(), entries.end());
  for (const SparseEntry& e : column.entries) {
    if (e.row < 0 || e.row >= num_rows_) {
      throw std::out_of_range("column entry row out of range");
    }
  }
  const ColumnId id = static_cast<ColumnId>(columns_.size());
  columns_.push_back(std::move(column));
  live_columns_.push_back(id);
  status_.push_back(VarStatus::kAtLower);
  x_.push_back(0.0);
  shift_.push_back(0.0);
  position_of_.push_back(-1);
  return id;
}

void SimplexSolver::RemoveColumn(ColumnId column) {
  Column& col = columns_.at(static_cast<size_t>(column));
  if (!col.alive) return;
  const int var = var_of(column);
  if (status_[var] == VarStatus::kBasic && !basis_.empty()) {
    // Swap in the nonbasic logical with the largest entry in this row of
    // B^{-1}; that keeps the basis nonsingular.
    const int pos = position_of_[var];
    if (needs_refactor_) Refactor();
    const double* row = binv_.data() + static_cast<size_t>(pos) * num_rows_;
    int best_row = -1;
    double best_abs = 0.0;
    for (int r = 0; r < num_rows_; ++r) {
      if (status_[r] == VarStatus::kBasic) continue;
      if (std::abs(row[r]) > best_abs) {
        best_abs = std::abs(row[r]);
        best_row = r;
      }
    }
    if (best_row < 0) throw std::logic_error("no logical available for swap");
    basis_[pos] = best_row;
    position_of_[best_row] = pos;
    status_[best_row] = VarStatus::kBasic;
    position_of_[var] = -1;
    needs_refactor_ = true;
  } else if (x_[var] != 0.0) {
    needs_refactor_ = true;
  }
  status_[var] = VarStatus::kAtLower;
  x_[var] = 0.0;
  shift_[var] = 0.0;
  col.alive = false;
  col.entries.clear();
  col.entries.shrink_to_fit();
  live_columns_.erase(
      std::find(live_columns_.begin(), live_columns_.end(), column));
}

void SimplexSolver::SetCost(ColumnId column, double cost) {
  columns_.at(static_cast<size_t>(column)).cost = cost;
}

double SimplexSolver::Cost(int var) const {
  return var < num_rows_ ? 0.0 : columns_[var - num_rows_].cost;
}

double SimplexSolver::Upper(int var) const {
  if (var < num_rows_) return sense_[var] == RowSense::kEqual ? 0.0 : kInfinity;
  return columns_[var - num_rows_].upper;
}

void SimplexSolver::Ftran(int var, std::vector<double>& out) const {
  const size_t m = static_cast<size_t>(num_rows_);
  out.assign(m, 0.0);
  if (var < num_rows_) {
    const double sign = sense_[var] == RowSense::kGreaterEqual ? -1.0 : 1.0;
    for (size_t pos = 0; pos < m; ++pos) out[pos] = sign * binv_[pos * m + var];
    return;
  }
  for (const SparseEntry& e : columns_[var - num_rows_].entries) {
    for (size_t pos = 0; pos < m; ++pos) {
      out[pos] += binv_[pos * m + e.row] * e.value;
    }
  }
}

double SimplexSolver::DotColumn(const std::vector<double>& y, int var) const {
  if (var < num_rows_) {
    return sense_[var] == RowSense::kGreaterEqual ? -y[var] : y[var];
  }
  double sum = 0.0;
  for (const SparseEntry& e : columns_[var - num_rows_].entries) {
    sum += y[e.row] * e.value;
  }
  return sum;
}

void SimplexSolver::Refactor() {
  const int m = num_rows_;
  const size_t mm = static_cast<size_t>(m);
  if (basis_.empty()) {
    basis_.resize(mm);
    for (int r = 0; r < m; ++r) {
      basis_[r] = r;
      position_of_[r] = r;
      status_[r] = VarStatus::kBasic;
    }
  }
  // Gauss-Jordan on [B | I] without physical row swaps.
  std::vector<double> b(mm * mm, 0.0);
  const auto load_column = [&](int pos, int var) {
    if (var < m) {
      b[static_cast<size_t>(var) * mm + pos] =
          sense_[var] == RowSense::kGreaterEqual ? -1.0 : 1.0;
    } else {
      for (const SparseEntry& e : columns_[var - m].entries) {
        b[static_cast<size_t>(e.row) * mm + pos] += e.value;
      }
    }
  };
  for (int pos = 0; pos < m; ++pos) load_column(pos, basis_[pos]);
  std::vector<double> t(mm * mm, 0.0);
  for (size_t r = 0; r < mm; ++r) t[r * mm + r] = 1.0;
  std::vector<int> pivot_row(mm, -1);
  std::vector<bool> row_used(mm, false);
  std::vector<int> deficient;

  const auto eliminate = [&](int pivot_r, int pos) {
    double* brow = b.data() + static_cast<size_t>(pivot_r) * mm;
    double* trow = t.data() + static_cast<size_t>(pivot_r) * mm;
    const double inv = 1.0 / brow[pos];
    for (size_t c = 0; c < mm; ++c) {
      brow[c] *= inv;
      trow[c] *= inv;
    }
    for (int r = 0; r < m; ++r) {
      if (r == pivot_r) continue;
      double* other_b = b.data() + static_cast<size_t>(r) * mm;
      const double factor = other_b[pos];
      if (factor == 0.0) continue;
      double* other_t = t.data() + static_cast<size_t>(r) * mm;
      for (size_t c = 0; c < mm; ++c) {
        other_b[c] -= factor * brow[c];
        other_t[c] -= factor * trow[c];
      }
    }
    row_used[pivot_r] = true;
    pivot_row[pos] = pivot_r;
  };

  for (int pos = 0; pos < m; ++pos) {
    int best = -1;
    double best_abs = kSingularTolerance;
    for (int r = 0; r < m; ++r) {
      if (row_used[r]) continue;
      const double v = std::abs(b[static_cast<size_t>(r) * mm + pos]);
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (best < 0) {
      deficient.push_back(pos);
    } else {
      eliminate(best, pos);
    }
  }
  // Dependent basis columns are replaced by logicals of uncovered rows. A
  // logical of an unused row cannot be basic (it would have pivoted on its
  // own row), and column r of the accumulated transform is still e_r, so
  // the transformed logical is +-e_r and the pivot is trivially stable.
  int next_free = 0;
  for (int pos : deficient) {
    while (row_used[next_free]) ++next_free;
    const int r = next_free;
    assert(status_[r] != VarStatus::kBasic);
    const int old_var = basis_[pos];
    status_[old_var] = VarStatus::kAtLower;
    x_[old_var] = Lower(old_var);
    position_of_[old_var] = -1;
    basis_[pos] = r;
    position_of_[r] = pos;
    status_[r] = VarStatus::kBasic;
    for (int rr = 0; rr < m; ++rr) b[static_cast<size_t>(rr) * mm + pos] = 0.0;
    b[static_cast<size_t>(r) * mm + pos] =
        sense_[r] == RowSense::kGreaterEqual ? -1.0 : 1.0;
    eliminate(r, pos);
  }
  binv_.assign(mm * mm, 0.0);
  for (int pos = 0; pos < m; ++pos) {
    std::copy_n(t.data() + static_cast<size_t>(pivot_row[pos]) * mm, mm,
                binv_.data() + static_cast<size_t>(pos) * mm);
  }
  needs_refactor_ = false;
  updates_since_refactor_ = 0;
  ComputeBasicValues();
}

void SimplexSolver::ComputeBasicValues() {
  const size_t m = static_cast<size_t>(num_rows_);
  std::vector<double> residual(rhs_.begin(), rhs_.end());
  for (int r = 0; r < num_rows_; ++r) {
    if (status_[r] == VarStatus::kBasic) continue;
    x_[r] = status_[r] == VarStatus::kAtUpper ? Upper(r) : Lower(r);
    if (x_[r] == 0.0) continue;
    residual[r] -= (sense_[r] == RowSense::kGreaterEqual ? -1.0 : 1.0) * x_[r];
  }
  for (ColumnId c : live_columns_) {
    const int var = var_of(c);
    if (status_[var] == VarStatus::kBasic) continue;
    x_[var] = status_[var] == VarStatus::kAtUpper ? columns_[c].upper : Lower(var);
    if (x_[var] == 0.0) continue;
    for (const SparseEntry& e : columns_[c].entries) {
      residual[e.row] -= e.value * x_[var];
    }
  }
  for (size_t pos = 0; pos < m; ++pos) {
    double sum = 0.0;
    const double* row = binv_.data() + pos * m;
    for (size_t r = 0; r < m; ++r) sum += row[r] * residual[r];
    x_[basis_[pos]] = sum;
  }
}

void SimplexSolver::ShiftBounds() {
  for (int var : basis_) {
    if (Upper(var) <= 0.0) continue;  // fixed logicals stay fixed
    // xorshift64; deterministic across runs.
    shift_state_ ^= shift_state_ << 13;
    shift_state_ ^= shift_state_ >> 7;
    shift_state_ ^= shift_state_ << 17;
    const double u = static_cast<double>(shift_state_ >> 11) * 0x1.0p-53;
    shift_[var] = 1e-7 * (1.0 + 9.0 * u);
  }
}

void SimplexSolver::ClearShifts() {
  std::fill(shift_.begin(), shift_.end(), 0.0);
  ComputeBasicValues();
}

void SimplexSolver::Pivot(int position, int entering,
                          const std::vector<double>& alpha) {
  const size_t m = static_cast<size_t>(num_rows_);
  double* prow = binv_.data() + static_cast<size_t>(position) * m;
  const double inv = 1.0 / alpha[position];
  for (size_t c = 0; c < m; ++c) prow[c] *= inv;
  for (size_t pos = 0; pos < m; ++pos) {
    if (static_cast<int>(pos) == position || alpha[pos] == 0.0) continue;
    const double factor = alpha[pos];
    double* row = binv_.data() + pos * m;
    for (size_t c = 0; c < m; ++c) row[c] -= factor * prow[c];
  }
  const int leaving = basis_[position];
  position_of_[leaving] = -1;
  basis_[position] = entering;
  position_of_[entering] = position;
  status_[entering] = VarStatus::kBasic;
  ++updates_since_refactor_;
}

SolveStatus SimplexSolver::Solve() {
  last_iterations_ = 0;
  const int m = num_rows_;
  const size_t mm = static_cast<size_t>(m);
  duals_.assign(mm, 0.0);
  if (m == 0) return SolveStatus::kOptimal;
  if (needs_refactor_ || basis_.empty()) Refactor();

  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  std::vector<double> cb(mm);
  std::vector<double> y(mm);
  std::vector<double> alpha;
  bool bland = false;
  bool shifted = false;
  bool shifted_once = false;
  int degenerate_streak = 0;
  bool verified = false;

  const auto price_candidates = [&](bool phase1, int& entering, int& dir) {
    entering = -1;
    dir = 0;
    double best_score = 0.0;
    const auto consider = [&](int var) -> bool {
      const VarStatus st = status_[var];
      if (st == VarStatus::kBasic) return false;
      if (Upper(var) <= Lower(var)) return false;  // fixed
      const double d = (phase1 ? 0.0 : Cost(var)) - DotColumn(y, var);
      double score = 0.0;
      int var_dir = 0;
      if (st == VarStatus::kAtLower && d < -dtol) {
        score = -d;
        var_dir = 1;
      } else if (st == VarStatus::kAtUpper && d > dtol) {
        score = d;
        var_dir = -1;
      } else {
        return false;
      }
      if (bland) {
        if (entering < 0 || var < entering) {
          entering = var;
          dir = var_dir;
        }
        return false;
      }
      if (score > best_score) {
        best_score = score;
        entering = var;
        dir = var_dir;
      }
      return false;
    };
    for (int r = 0; r < m; ++r) consider(r);
    for (ColumnId c : live_columns_) consider(var_of(c));
  };

  while (true) {
    if (last_iterations_ >= options_.max_iterations) {
      if (shifted) ClearShifts();
      return SolveStatus::kIterationLimit;
    }
    bool phase1 = false;
    for (size_t pos = 0; pos < mm; ++pos) {
      const int var = basis_[pos];
      const double v = x_[var];
      if (v < Lower(var) - ptol) {
        cb[pos] = -1.0;
        phase1 = true;
      } else if (v > Upper(var) + ptol) {
        cb[pos] = 1.0;
        phase1 = true;
      } else {
        cb[pos] = 0.0;
      }
    }
    if (!phase1) {
      for (size_t pos = 0; pos < mm; ++pos) cb[pos] = Cost(basis_[pos]);
    }
    std::fill(y.begin(), y.end(), 0.0);
    for (size_t pos = 0; pos < mm; ++pos) {
      if (cb[pos] == 0.0) continue;
      const double* row = binv_.data() + pos * mm;
      for (size_t r = 0; r < mm; ++r) y[r] += cb[pos] * row[r];
    }

    int entering = -1;
    int dir = 0;
    price_candidates(phase1, entering, dir);
    if (entering < 0) {
      if (!verified && updates_since_refactor_ > 0) {
        // Confirm optimality on a fresh factorization.
        Refactor();
        verified = true;
        continue;
      }
      if (shifted) {
        // Optimal for the relaxed bounds; restore them and clean up.
        ClearShifts();
        shifted = false;
        verified = false;
        degenerate_streak = 0;
        continue;
      }
      if (phase1) return SolveStatus::kInfeasible;
      duals_ = y;
      return SolveStatus::kOptimal;
    }
    verified = false;

    Ftran(entering, alpha);
    // Breakpoint of basic position `pos` along the step, with bounds relaxed
    // by `tol`. A variable outside its bounds blocks where it re-enters
    // them (lower side on the way up, upper side on the way down).
    const auto breakpoint = [&](size_t pos, double tol, double& ratio,
                                bool& at_upper) -> bool {
      const double a = dir * alpha[pos];
      if (std::abs(a) < options_.pivot_tolerance) return false;
      const int var = basis_[pos];
      const double v = x_[var];
      const double lo = Lower(var);
      const double up = Upper(var);
      if (a > 0.0) {  // decreasing
        if (v < lo - ptol) return false;
        if (v > up + ptol) {
          ratio = (v - up + tol) / a;
          at_upper = true;
        } else {
          ratio = (v - lo + tol) / a;
          at_upper = false;
        }
      } else {  // increasing
        if (v > up + ptol) return false;
        if (v < lo - ptol) {
          ratio = (lo - v + tol) / (-a);
          at_upper = false;
        } else {
          if (up == kInfinity) return false;
          ratio = (up - v + tol) / (-a);
          at_upper = true;
        }
      }
      ratio = std::max(0.0, ratio);
      return true;
    };
    // Harris two-pass ratio test.
    double theta_max = kInfinity;
    for (size_t pos = 0; pos < mm; ++pos) {
      double ratio;
      bool at_upper;
      if (breakpoint(pos, ptol, ratio, at_upper)) {
        theta_max = std::min(theta_max, ratio);
      }
    }
    int leave_pos = -1;
    double leave_theta = kInfinity;
    bool leave_at_upper = false;
    double best_pivot = 0.0;
    for (size_t pos = 0; pos < mm; ++pos) {
      double ratio;
      bool at_upper;
      if (!breakpoint(pos, 0.0, ratio, at_upper)) continue;
      const int var = basis_[pos];
      if (bland) {
        // Ratios within noise of each other are ties; Bland needs the
        // smallest index among them or it can cycle.
        if (ratio < kBlandTie) ratio = 0.0;
        if (leave_pos < 0 || ratio < leave_theta - kBlandTie ||
            (ratio <= leave_theta + kBlandTie && var < basis_[leave_pos])) {
          leave_pos = static_cast<int>(pos);
          leave_theta = ratio;
          leave_at_upper = at_upper;
        }
      } else if (ratio <= theta_max && std::abs(alpha[pos]) > best_pivot) {
        best_pivot = std::abs(alpha[pos]);
        leave_pos = static_cast<int>(pos);
        leave_theta = ratio;
        leave_at_upper = at_upper;
      }
    }

    const double entering_range = Upper(entering) - Lower(entering);
    const bool flip = entering_range < kInfinity &&
                      (leave_pos < 0 || entering_range <= leave_theta);
    if (leave_pos < 0 && !flip) {
      if (phase1) {
        throw std::runtime_error("simplex phase 1 found no blocking variable");
      }
      if (shifted) ClearShifts();
      return SolveStatus::kUnbounded;
    }
    const double theta = flip ? entering_range : leave_theta;
    if (theta != 0.0) {
      for (size_t pos = 0; pos < mm; ++pos) {
        if (alpha[pos] != 0.0) x_[basis_[pos]] -= dir * theta * alpha[pos];
      }
    }
    ++last_iterations_;
    ++total_iterations_;
    if (theta < kDegenerateStep) {
      if (++degenerate_streak > options_.degenerate_streak_limit) {
        if (!shifted_once) {
          ShiftBounds();
          shifted = shifted_once = true;
          degenerate_streak = 0;
        } else {
          bland = true;
        }
      }
    } else {
      degenerate_streak = 0;
      bland = false;
    }
    if (flip) {
      const bool to_upper = status_[entering] == VarStatus::kAtLower;
      status_[entering] = to_upper ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[entering] = to_upper ? Upper(entering) : Lower(entering);
      continue;
    }
    const int leaving = basis_[leave_pos];
    const double entering_value =
        (status_[entering] == VarStatus::kAtUpper ? Upper(entering) : Lower(entering)) +
        dir * theta;
    Pivot(leave_pos, entering, alpha);
    x_[entering] = entering_value;
    status_[leaving] = leave_at_upper ? VarStatus::kAtUpper : VarStatus::kAtLower;
    x_[leaving] = leave_at_upper ? Upper(leaving) : Lower(leaving);
    if (updates_since_refactor_ >= options_.refactor_interval) Refactor();
  }
}

double SimplexSolver::objective() const {
  double sum = 0.0;
  for (ColumnId c : live_columns_) sum += columns_[c].cost * x_[var_of(c)];
  return sum;
}

double SimplexSolver::value(ColumnId column) const {
  return x_[var_of(column)];
}

bool SimplexSolver::is_basic(ColumnId column) const {
  return status_[var_of(column)] == VarStatus::kBasic;
}

bool SimplexSolver::is_alive(ColumnId column) const {
  return columns_[static_cast<size_t>(column)].alive;
}

double SimplexSolver::reduced_cost(ColumnId column) const {
  const int var = var_of(column);
  return Cost(var) - DotColumn(duals_, var);
}

}  // namespace gapcg::lp
