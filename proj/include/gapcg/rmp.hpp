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

// Restricted master problem of the Dantzig-Wolfe reformulation of GAP.
//
//   min  sum_p cost_p lambda_p
//   s.t. sum_{p covers j} lambda_p >= 1          for every job j      (pi_j)
//        sum_{p on machine i} lambda_p = 1       for every machine i  (mu_i)
//        lambda >= 0
//
// Phase I replaces the objective by the sum of artificial variables
// y+_j, y-_j added to the cover rows (sum lambda - y+_j + y-_j >= 1) and
// ignores column costs.

#ifndef GAPCG_RMP_HPP_
#define GAPCG_RMP_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gapcg/instance.hpp"
#include "gapcg/simplex.hpp"
#include "gapcg/types.hpp"

namespace gapcg {

struct Column {
  int machine = 0;
  Selection jobs;
  int64_t cost = 0;
  int age = 0;  // last iteration in the basis, or the insertion iteration
  int64_t id = 0;
};

// Columns per machine. A fresh pool holds the empty assignment for each
// machine (always capacity-feasible), so the convexity rows are never
// structurally infeasible.
class ColumnPool {
 public:
  explicit ColumnPool(const GapInstance& instance);

  // Adds a capacity-feasible column with age = iteration(). Returns the new
  // id, or nullopt when the machine already holds the same job set.
  std::optional<int64_t> Add(int machine, Selection jobs);
  bool Contains(int machine, const Selection& jobs) const;
  // Removes columns matching the predicate; returns the number removed.
  template <typename Pred>
  int RemoveIf(Pred pred);

  const std::vector<Column>& columns(int machine) const {
    return by_machine_[machine];
  }
  std::vector<Column>& mutable_columns(int machine) {
    return by_machine_[machine];
  }
  const Column* Find(int64_t id) const;
  int num_machines() const { return static_cast<int>(by_machine_.size()); }
  size_t size() const;

  int iteration() const { return iteration_; }
  void set_iteration(int t) { iteration_ = t; }

 private:
  const GapInstance* instance_;
  std::vector<std::vector<Column>> by_machine_;
  std::vector<std::unordered_set<Selection>> seen_;
  std::unordered_map<int64_t, std::pair<int, size_t>> index_;
  int64_t next_id_ = 0;
  int iteration_ = 0;

  void Reindex(int machine);
};

enum class RmpMode { kPhase1, kPhase2 };

struct RmpSolution {
  double objective = 0.0;
  // (column id, lambda) for every pool column, ordered by id.
  std::vector<std::pair<int64_t, double>> lambda;
  std::vector<int64_t> basic_ids;
  std::vector<double> pi;  // per job, >= 0
  std::vector<double> mu;  // per machine
  int64_t pivots = 0;
  std::optional<double> phase1_objective;
  RmpMode mode = RmpMode::kPhase2;

  double Lambda(int64_t id) const;
};

// LP backend wrapper that mirrors a ColumnPool and keeps the simplex basis
// between solves (warm start). Switching from Phase I to Phase II removes
// the artificial variables and reinstates the true column costs; going
// back is not supported.
class RestrictedMaster {
 public:
  explicit RestrictedMaster(const GapInstance& instance,
                            lp::SimplexOptions options = {});

  // Synchronizes with the pool (adds new columns, drops removed ones) and
  // solves. Throws InfeasibleError for an infeasible Phase II and
  // NumericError when the backend gives up.
  RmpSolution Solve(const ColumnPool& pool, RmpMode mode);

  int64_t total_pivots() const { return lp_.total_iterations(); }

 private:
  void Sync(const ColumnPool& pool);
  void EnterPhase2();

  const GapInstance* instance_;
  lp::SimplexSolver lp_;
  std::unordered_map<int64_t, lp::SimplexSolver::ColumnId> lp_column_of_;
  std::vector<lp::SimplexSolver::ColumnId> artificials_;
  bool phase2_ = false;
};

// One-shot solve without warm start.
RmpSolution BuildAndSolve(const ColumnPool& pool, const GapInstance& instance,
                          RmpMode mode, RestrictedMaster* warm = nullptr);

// y^i_j = sum over machine-i columns of lambda_p * jobs_pj, clamped to
// [0, 1].
TemplateSet ProjectPrimal(const RmpSolution& solution, const ColumnPool& pool,
                          double delta);

// Refreshes the ages of basic columns to pool.iteration() and removes every
// column whose age is below iteration - tau. Returns the removal count.
int ManageColumns(ColumnPool& pool, const RmpSolution& solution, int tau);

// tau(r) = a2 r^2 + a1 r + a0 in the job/machine ratio r.
struct AgePolicy {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 1.0;

  static AgePolicy ForMethod(PricingMethod method);
};

int AgeThreshold(const AgePolicy& policy, const GapInstance& instance);

struct CompactLpSolution {
  double objective = 0.0;
  std::vector<double> x;  // row-major machines x jobs
  int64_t pivots = 0;

  double X(int machine, int job, int num_jobs) const {
    return x[static_cast<size_t>(machine) * num_jobs + job];
  }
};

// LP relaxation of the compact model with cover rows. Throws
// InfeasibleError when it has no solution.
CompactLpSolution SolveCompactLp(const GapInstance& instance);

// Integral lambda covering every job yields an assignment; jobs covered more
// than once stay on the cheapest covering machine.
std::optional<IntegerSolution> ExtractIntegerSolution(
    const RmpSolution& solution, const ColumnPool& pool,
    const GapInstance& instance);

template <typename Pred>
int ColumnPool::RemoveIf(Pred pred) {
  int removed = 0;
  for (int i = 0; i < num_machines(); ++i) {
    auto& cols = by_machine_[i];
    const size_t before = cols.size();
    for (const Column& c : cols) {
      if (pred(c)) {
        seen_[i].erase(c.jobs);
        index_.erase(c.id);
      }
    }
    std::erase_if(cols, [&](const Column& c) { return pred(c); });
    if (cols.size() != before) {
      removed += static_cast<int>(before - cols.size());
      Reindex(i);
    }
  }
  return removed;
}

}  // namespace gapcg

#endif  // GAPCG_RMP_HPP_
