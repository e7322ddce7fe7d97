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

#include "gapcg/rmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gapcg {
namespace {

constexpr double kIntegralityTolerance = 1e-6;

int64_t ColumnCost(const GapInstance& inst, int machine, const Selection& jobs) {
  int64_t cost = 0;
  for (int j = 0; j < inst.num_jobs; ++j) {
    if (jobs[j]) cost += inst.Cost(machine, j);
  }
  return cost;
}

int64_t ColumnLoad(const GapInstance& inst, int machine, const Selection& jobs) {
  int64_t load = 0;
  for (int j = 0; j < inst.num_jobs; ++j) {
    if (jobs[j]) load += inst.Resource(machine, j);
  }
  return load;
}

}  // namespace

// ---------------------------------------------------------------------------
// ColumnPool

ColumnPool::ColumnPool(const GapInstance& instance)
    : instance_(&instance),
      by_machine_(static_cast<size_t>(instance.num_machines)),
      seen_(static_cast<size_t>(instance.num_machines)) {
  for (int i = 0; i < instance.num_machines; ++i) {
    Add(i, Selection(static_cast<size_t>(instance.num_jobs), false));
  }
}

std::optional<int64_t> ColumnPool::Add(int machine, Selection jobs) {
  if (machine < 0 || machine >= num_machines()) {
    throw std::out_of_range("machine index out of range");
  }
  if (jobs.size() != static_cast<size_t>(instance_->num_jobs)) {
    throw std::invalid_argument("column length differs from job count");
  }
  if (ColumnLoad(*instance_, machine, jobs) > instance_->capacity[machine]) {
    throw std::invalid_argument("column exceeds machine capacity");
  }
  if (seen_[machine].contains(jobs)) return std::nullopt;
  Column column;
  column.machine = machine;
  column.cost = ColumnCost(*instance_, machine, jobs);
  column.age = iteration_;
  column.id = next_id_++;
  column.jobs = std::move(jobs);
  seen_[machine].insert(column.jobs);
  index_[column.id] = {machine, by_machine_[machine].size()};
  by_machine_[machine].push_back(std::move(column));
  return next_id_ - 1;
}

bool ColumnPool::Contains(int machine, const Selection& jobs) const {
  return seen_[machine].contains(jobs);
}

const Column* ColumnPool::Find(int64_t id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  return &by_machine_[it->second.first][it->second.second];
}

size_t ColumnPool::size() const {
  size_t total = 0;
  for (const auto& cols : by_machine_) total += cols.size();
  return total;
}

void ColumnPool::Reindex(int machine) {
  const auto& cols = by_machine_[machine];
  for (size_t k = 0; k < cols.size(); ++k) index_[cols[k].id] = {machine, k};
}

// ---------------------------------------------------------------------------
// RestrictedMaster

double RmpSolution::Lambda(int64_t id) const {
  const auto it = std::lower_bound(
      lambda.begin(), lambda.end(), id,
      [](const std::pair<int64_t, double>& e, int64_t key) { return e.first < key; });
  return it != lambda.end() && it->first == id ? it->second : 0.0;
}

RestrictedMaster::RestrictedMaster(const GapInstance& instance,
                                   lp::SimplexOptions options)
    : instance_(&instance), lp_(options) {
  for (int j = 0; j < instance.num_jobs; ++j) {
    lp_.AddRow(lp::RowSense::kGreaterEqual, 1.0);
  }
  for (int i = 0; i < instance.num_machines; ++i) {
    lp_.AddRow(lp::RowSense::kEqual, 1.0);
  }
  for (int j = 0; j < instance.num_jobs; ++j) {
    const lp::SparseEntry plus[] = {{j, -1.0}};
    const lp::SparseEntry minus[] = {{j, 1.0}};
    artificials_.push_back(lp_.AddColumn(1.0, lp::kInfinity, plus));
    artificials_.push_back(lp_.AddColumn(1.0, lp::kInfinity, minus));
  }
}

void RestrictedMaster::EnterPhase2() {
  for (const auto id : artificials_) lp_.RemoveColumn(id);
  artificials_.clear();
  phase2_ = true;
}

void RestrictedMaster::Sync(const ColumnPool& pool) {
  std::unordered_set<int64_t> live;
  std::vector<const Column*> fresh;
  for (int i = 0; i < pool.num_machines(); ++i) {
    for (const Column& c : pool.columns(i)) {
      live.insert(c.id);
      if (!lp_column_of_.contains(c.id)) fresh.push_back(&c);
    }
  }
  for (auto it = lp_column_of_.begin(); it != lp_column_of_.end();) {
    if (!live.contains(it->first)) {
      lp_.RemoveColumn(it->second);
      it = lp_column_of_.erase(it);
    } else {
      ++it;
    }
  }
  std::sort(fresh.begin(), fresh.end(),
            [](const Column* a, const Column* b) { return a->id < b->id; });
  const int num_jobs = instance_->num_jobs;
  std::vector<lp::SparseEntry> entries;
  for (const Column* c : fresh) {
    entries.clear();
    for (int j = 0; j < num_jobs; ++j) {
      if (c->jobs[j]) entries.push_back({j, 1.0});
    }
    entries.push_back({num_jobs + c->machine, 1.0});
    const double cost = phase2_ ? static_cast<double>(c->cost) : 0.0;
    lp_column_of_[c->id] = lp_.AddColumn(cost, lp::kInfinity, entries);
  }
  if (phase2_) {
    // Costs of columns added during Phase I are reinstated here.
    for (int i = 0; i < pool.num_machines(); ++i) {
      for (const Column& c : pool.columns(i)) {
        lp_.SetCost(lp_column_of_.at(c.id), static_cast<double>(c.cost));
      }
    }
  }
}

RmpSolution RestrictedMaster::Solve(const ColumnPool& pool, RmpMode mode) {
  if (mode == RmpMode::kPhase1 && phase2_) {
    throw std::logic_error("restricted master already left Phase I");
  }
  if (mode == RmpMode::kPhase2 && !phase2_) EnterPhase2();
  Sync(pool);
  const lp::SolveStatus status = lp_.Solve();
  if (status == lp::SolveStatus::kInfeasible) {
    throw InfeasibleError(mode == RmpMode::kPhase2
                              ? "Phase II restricted master is infeasible"
                              : "Phase I restricted master is infeasible");
  }
  if (status != lp::SolveStatus::kOptimal) {
    throw NumericError("restricted master LP did not reach optimality (status " +
                       std::to_string(static_cast<int>(status)) + ")");
  }
  RmpSolution sol;
  sol.mode = mode;
  sol.pivots = lp_.last_iterations();
  sol.objective = lp_.objective();
  if (mode == RmpMode::kPhase1) {
    double artificial_sum = 0.0;
    for (const auto id : artificials_) artificial_sum += lp_.value(id);
    sol.objective = artificial_sum;
    sol.phase1_objective = artificial_sum;
  }
  const int num_jobs = instance_->num_jobs;
  sol.pi.assign(lp_.duals().begin(), lp_.duals().begin() + num_jobs);
  sol.mu.assign(lp_.duals().begin() + num_jobs, lp_.duals().end());
  for (int i = 0; i < pool.num_machines(); ++i) {
    for (const Column& c : pool.columns(i)) {
      const auto lp_id = lp_column_of_.at(c.id);
      sol.lambda.emplace_back(c.id, lp_.value(lp_id));
      if (lp_.is_basic(lp_id)) sol.basic_ids.push_back(c.id);
    }
  }
  std::sort(sol.lambda.begin(), sol.lambda.end());
  std::sort(sol.basic_ids.begin(), sol.basic_ids.end());
  return sol;
}

RmpSolution BuildAndSolve(const ColumnPool& pool, const GapInstance& instance,
                          RmpMode mode, RestrictedMaster* warm) {
  if (warm != nullptr) return warm->Solve(pool, mode);
  RestrictedMaster cold(instance);
  return cold.Solve(pool, mode);
}

// ---------------------------------------------------------------------------
// Templates, column management, age policy

TemplateSet ProjectPrimal(const RmpSolution& solution, const ColumnPool& pool,
                          double delta) {
  TemplateSet templates;
  templates.delta = delta;
  templates.y.resize(static_cast<size_t>(pool.num_machines()));
  for (int i = 0; i < pool.num_machines(); ++i) {
    const auto& cols = pool.columns(i);
    const size_t n = cols.empty() ? 0 : cols.front().jobs.size();
    std::vector<double>& y = templates.y[i];
    y.assign(n, 0.0);
    for (const Column& c : cols) {
      const double lambda = solution.Lambda(c.id);
      if (lambda == 0.0) continue;
      for (size_t j = 0; j < n; ++j) {
        if (c.jobs[j]) y[j] += lambda;
      }
    }
    for (double& v : y) v = std::clamp(v, 0.0, 1.0);
  }
  return templates;
}

int ManageColumns(ColumnPool& pool, const RmpSolution& solution, int tau) {
  if (tau < 1) throw std::invalid_argument("age threshold must be >= 1");
  const int t = pool.iteration();
  for (int i = 0; i < pool.num_machines(); ++i) {
    for (Column& c : pool.mutable_columns(i)) {
      if (std::binary_search(solution.basic_ids.begin(), solution.basic_ids.end(),
                             c.id)) {
        c.age = t;
      }
    }
  }
  return pool.RemoveIf([t, tau](const Column& c) { return c.age < t - tau; });
}

AgePolicy AgePolicy::ForMethod(PricingMethod method) {
  switch (method) {
    case PricingMethod::kDantzig:
      return {0.081875, 0.0, 1.0};
    case PricingMethod::kPessoa:
      return {0.0, 0.3, 1.0};
    case PricingMethod::kLagrangeTemplate:
    case PricingMethod::kExactTemplate:
      return {0.00044, 0.0405, 1.0};
  }
  return {};
}

int AgeThreshold(const AgePolicy& policy, const GapInstance& instance) {
  const double r = instance.Ratio();
  const double tau = policy.a2 * r * r + policy.a1 * r + policy.a0;
  // Guard against float dust turning an exact integer into the next one.
  return std::max(1, static_cast<int>(std::ceil(tau - 1e-9)));
}

// ---------------------------------------------------------------------------
// Compact LP and integer extraction

CompactLpSolution SolveCompactLp(const GapInstance& inst) {
  lp::SimplexSolver lp;
  for (int j = 0; j < inst.num_jobs; ++j) lp.AddRow(lp::RowSense::kGreaterEqual, 1.0);
  for (int i = 0; i < inst.num_machines; ++i) {
    lp.AddRow(lp::RowSense::kLessEqual, static_cast<double>(inst.capacity[i]));
  }
  std::vector<lp::SimplexSolver::ColumnId> ids;
  ids.reserve(static_cast<size_t>(inst.num_machines) * inst.num_jobs);
  for (int i = 0; i < inst.num_machines; ++i) {
    for (int j = 0; j < inst.num_jobs; ++j) {
      const lp::SparseEntry entries[] = {
          {j, 1.0}, {inst.num_jobs + i, static_cast<double>(inst.Resource(i, j))}};
      // A job heavier than the machine can never be placed there.
      const double upper = inst.Resource(i, j) > inst.capacity[i] ? 0.0 : 1.0;
      ids.push_back(
          lp.AddColumn(static_cast<double>(inst.Cost(i, j)), upper, entries));
    }
  }
  const lp::SolveStatus status = lp.Solve();
  if (status == lp::SolveStatus::kInfeasible) {
    throw InfeasibleError("compact LP relaxation is infeasible");
  }
  if (status != lp::SolveStatus::kOptimal) {
    throw NumericError("compact LP did not reach optimality");
  }
  CompactLpSolution sol;
  sol.objective = lp.objective();
  sol.pivots = lp.last_iterations();
  sol.x.reserve(ids.size());
  for (const auto id : ids) sol.x.push_back(std::clamp(lp.value(id), 0.0, 1.0));
  return sol;
}

std::optional<IntegerSolution> ExtractIntegerSolution(
    const RmpSolution& solution, const ColumnPool& pool,
    const GapInstance& instance) {
  std::vector<const Column*> selected;
  for (const auto& [id, lambda] : solution.lambda) {
    const double frac = std::min(std::abs(lambda), std::abs(lambda - 1.0));
    if (frac > kIntegralityTolerance) return std::nullopt;
    if (lambda > 0.5) {
      const Column* c = pool.Find(id);
      if (c != nullptr) selected.push_back(c);
    }
  }
  IntegerSolution out;
  out.machine_of_job.assign(static_cast<size_t>(instance.num_jobs), -1);
  for (int j = 0; j < instance.num_jobs; ++j) {
    int best = -1;
    for (const Column* c : selected) {
      if (!c->jobs[j]) continue;
      if (best < 0 || instance.Cost(c->machine, j) < instance.Cost(best, j) ||
          (instance.Cost(c->machine, j) == instance.Cost(best, j) &&
           c->machine < best)) {
        best = c->machine;
      }
    }
    if (best < 0) return std::nullopt;
    out.machine_of_job[j] = best;
    out.cost += instance.Cost(best, j);
  }
  return out;
}

}  // namespace gapcg
