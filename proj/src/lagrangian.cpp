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

#include "gapcg/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "gapcg/knapsack.hpp"

namespace gapcg {
namespace {

using Clock = std::chrono::steady_clock;

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns H g for the inverse-Hessian estimate of -L.
std::vector<double> TwoLoop(const std::deque<Pair>& memory,
                            const std::vector<double>& g) {
  std::vector<double> q = g;
  std::vector<double> a(memory.size());
  for (size_t k = memory.size(); k-- > 0;) {
    a[k] = memory[k].rho * Dot(memory[k].s, q);
    for (size_t j = 0; j < q.size(); ++j) q[j] -= a[k] * memory[k].y[j];
  }
  if (!memory.empty()) {
    const Pair& last = memory.back();
    const double gamma = Dot(last.s, last.y) / Dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (size_t k = 0; k < memory.size(); ++k) {
    const double b = memory[k].rho * Dot(memory[k].y, q);
    for (size_t j = 0; j < q.size(); ++j) q[j] += memory[k].s[j] * (a[k] - b);
  }
  return q;
}

std::optional<IntegerSolution> PartitionFrom(const GapInstance& inst,
                                             const LrEvaluation& ev) {
  for (double g : ev.gradient) {
    if (g != 0.0) return std::nullopt;
  }
  IntegerSolution sol;
  sol.machine_of_job.assign(static_cast<size_t>(inst.num_jobs), -1);
  for (int i = 0; i < inst.num_machines; ++i) {
    for (int j = 0; j < inst.num_jobs; ++j) {
      if (ev.selections[i][j]) {
        sol.machine_of_job[j] = i;
        sol.cost += inst.Cost(i, j);
      }
    }
  }
  return sol;
}

}  // namespace

LrEvaluation LrEvaluate(const GapInstance& inst, std::span<const double> pi) {
  const size_t n = static_cast<size_t>(inst.num_jobs);
  LrEvaluation ev;
  ev.value = std::accumulate(pi.begin(), pi.end(), 0.0);
  ev.gradient.assign(n, 1.0);
  std::vector<double> profit(n);
  for (int i = 0; i < inst.num_machines; ++i) {
    for (size_t j = 0; j < n; ++j) {
      profit[j] = static_cast<double>(inst.Cost(i, static_cast<int>(j))) - pi[j];
    }
    KnapsackSolution ks = MinKnapsack(
        profit,
        std::span<const int64_t>(inst.resource.data() + static_cast<size_t>(i) * n, n),
        inst.capacity[i]);
    ev.value += ks.value;
    for (size_t j = 0; j < n; ++j) {
      if (ks.selection[j]) ev.gradient[j] -= 1.0;
    }
    ev.selections.push_back(std::move(ks.selection));
  }
  return ev;
}

LrResult LrSolve(const GapInstance& inst, const LrOptions& options) {
  const auto start = Clock::now();
  const size_t n = static_cast<size_t>(inst.num_jobs);
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  LrResult result;
  auto evaluate = [&](const std::vector<double>& pi, bool accepted) {
    LrEvaluation ev = LrEvaluate(inst, pi);
    ++result.evaluations;
    if (ev.value > result.best_bound || result.best_pi.empty()) {
      result.best_bound = ev.value;
      result.best_pi = pi;
    }
    if (auto sol = PartitionFrom(inst, ev)) {
      if (!result.integer_solution || sol->cost < result.integer_solution->cost) {
        result.integer_solution = std::move(sol);
      }
    }
    LrTraceRow row{result.evaluations, ev.value, result.best_bound, accepted,
                   elapsed(), std::nullopt};
    if (result.integer_solution) row.incumbent = result.integer_solution->cost;
    result.trace.push_back(row);
    return ev;
  };

  std::vector<double> pi(n, 0.0);
  LrEvaluation cur = evaluate(pi, true);
  if (options.time_limit.count() <= 0.0) {
    result.time_limit_hit = true;
    return result;
  }

  std::deque<Pair> memory;
  std::vector<double> cand(n);
  while (result.evaluations < options.max_evaluations) {
    if (elapsed() >= options.time_limit.count()) {
      result.time_limit_hit = true;
      break;
    }
    if (std::all_of(cur.gradient.begin(), cur.gradient.end(),
                    [](double g) { return g == 0.0; })) {
      break;  // pi is a maximizer
    }
    std::vector<double> d = TwoLoop(memory, cur.gradient);
    if (Dot(d, cur.gradient) <= 0.0) {
      d = cur.gradient;
      memory.clear();
      ++result.memory_resets;
    }

    std::optional<LrEvaluation> next;
    double step = 1.0;
    for (int b = 0; b <= options.max_backtracks; ++b, step *= 0.5) {
      double gd = 0.0;
      for (size_t j = 0; j < n; ++j) {
        cand[j] = std::max(0.0, pi[j] + step * d[j]);
        gd += cur.gradient[j] * (cand[j] - pi[j]);
      }
      if (gd <= 0.0) continue;  // projection killed the ascent
      LrEvaluation ev = evaluate(cand, false);
      if (ev.value >= cur.value + options.armijo * gd) {
        result.trace.back().accepted = true;
        next = std::move(ev);
        break;
      }
      if (elapsed() >= options.time_limit.count()) break;
    }
    if (!next) {
      for (size_t j = 0; j < n; ++j) {
        cand[j] = std::max(0.0, pi[j] + options.fallback_step * cur.gradient[j]);
      }
      next = evaluate(cand, true);
      memory.clear();
      ++result.memory_resets;
    }

    Pair pair;
    pair.s.resize(n);
    pair.y.resize(n);
    for (size_t j = 0; j < n; ++j) {
      pair.s[j] = cand[j] - pi[j];
      // Curvature of -L: difference of its gradients -g.
      pair.y[j] = cur.gradient[j] - next->gradient[j];
    }
    const double sy = Dot(pair.s, pair.y);
    if (sy > 1e-12) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (static_cast<int>(memory.size()) > options.memory) memory.pop_front();
    }
    const double change = next->value - cur.value;
    pi = cand;
    cur = std::move(*next);
    if (std::abs(change) < options.tolerance) break;
  }
  return result;
}

}  // namespace gapcg
