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

#include "gapcg/knapsack.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace gapcg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// True when `a` precedes `b` in the tie-breaking order (index 0 first,
// unselected before selected).
bool LexLess(const Selection& a, const Selection& b) {
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] != b[j]) return !a[j];
  }
  return false;
}

}  // namespace

KnapsackSolution MinKnapsack(std::span<const double> profit,
                             std::span<const int64_t> weight,
                             int64_t capacity) {
  assert(profit.size() == weight.size());
  const size_t n = profit.size();
  KnapsackSolution solution;
  solution.selection.assign(n, false);
  if (capacity < 0) return solution;

  // Zero-weight improving items are free; everything else that could
  // improve the objective goes through the DP.
  std::vector<size_t> candidates;
  int64_t total_weight = 0;
  for (size_t j = 0; j < n; ++j) {
    if (!(profit[j] < 0.0)) continue;
    if (weight[j] == 0) {
      solution.selection[j] = true;
    } else if (weight[j] <= capacity) {
      candidates.push_back(j);
      total_weight += weight[j];
    }
  }

  const int64_t cap = std::min(capacity, total_weight);
  const size_t width = static_cast<size_t>(cap) + 1;
  const size_t k_count = candidates.size();
  if (k_count > 0) {
    // best[c]: minimum value over the suffix of candidates with weight <= c.
    std::vector<double> best(width, 0.0);
    std::vector<uint8_t> take(k_count * width, 0);
    for (size_t k = k_count; k-- > 0;) {
      const size_t item = candidates[k];
      const int64_t w = weight[item];
      const double p = profit[item];
      uint8_t* take_row = take.data() + k * width;
      for (int64_t c = cap; c >= w; --c) {
        const double with_item = p + best[static_cast<size_t>(c - w)];
        if (with_item < best[static_cast<size_t>(c)]) {
          best[static_cast<size_t>(c)] = with_item;
          take_row[c] = 1;
        }
      }
    }
    int64_t c = cap;
    for (size_t k = 0; k < k_count; ++k) {
      if (take[k * width + static_cast<size_t>(c)]) {
        solution.selection[candidates[k]] = true;
        c -= weight[candidates[k]];
      }
    }
  }

  double value = 0.0;
  for (size_t j = 0; j < n; ++j) {
    if (solution.selection[j]) value += profit[j];
  }
  solution.value = value;
  return solution;
}

KnapsackSolution MinKnapsack(const KnapsackProblem& problem) {
  if (problem.profit.size() != problem.weight.size()) {
    throw std::invalid_argument("profit and weight lengths differ");
  }
  return MinKnapsack(problem.profit, problem.weight, problem.capacity);
}

std::optional<LexKnapsackResult> LexKnapsack(const LexKnapsackProblem& p) {
  const size_t n = p.sim.size();
  if (p.rc_coeff.size() != n || p.weight.size() != n) {
    throw std::invalid_argument("lex knapsack sequences differ in length");
  }
  if (p.capacity < 0) return std::nullopt;

  std::vector<size_t> items;
  int64_t total_weight = 0;
  int plus = 0;
  int minus = 0;
  for (size_t j = 0; j < n; ++j) {
    if (p.weight[j] > p.capacity) continue;
    items.push_back(j);
    total_weight += p.weight[j];
    if (p.sim[j] > 0) ++plus;
    if (p.sim[j] < 0) ++minus;
  }
  const int64_t cap = std::min(p.capacity, total_weight);
  const size_t width = static_cast<size_t>(cap) + 1;
  const size_t levels = static_cast<size_t>(plus + minus) + 1;
  const int offset = minus;  // level index of similarity 0
  const size_t layer = width * levels;
  const size_t k_count = items.size();

  // State (c, s): minimum reduced cost over suffix selections with weight
  // <= c and similarity exactly s.
  std::vector<double> next(layer, kInf);
  std::vector<double> cur(layer, kInf);
  for (size_t c = 0; c < width; ++c) next[c * levels + offset] = 0.0;
  std::vector<uint8_t> take(k_count * layer, 0);

  for (size_t k = k_count; k-- > 0;) {
    const size_t item = items[k];
    const int64_t w = p.weight[item];
    const int s_step = p.sim[item];
    const double rc = p.rc_coeff[item];
    uint8_t* take_layer = take.data() + k * layer;
    for (size_t c = 0; c < width; ++c) {
      for (size_t s = 0; s < levels; ++s) {
        const size_t idx = c * levels + s;
        double value = next[idx];
        const long from_s = static_cast<long>(s) - s_step;
        if (static_cast<int64_t>(c) >= w && from_s >= 0 &&
            from_s < static_cast<long>(levels)) {
          const double prev =
              next[(c - static_cast<size_t>(w)) * levels + static_cast<size_t>(from_s)];
          if (prev < kInf && rc + prev < value) {
            value = rc + prev;
            take_layer[idx] = 1;
          }
        }
        cur[idx] = value;
      }
    }
    std::swap(cur, next);
  }

  // Scanning downward subsumes "lower the similarity target by one and
  // retry" until some level fits the budget.
  for (long s = static_cast<long>(levels) - 1; s >= 0; --s) {
    const double best_rc = next[static_cast<size_t>(cap) * levels + static_cast<size_t>(s)];
    if (!(best_rc <= p.rc_budget)) continue;
    LexKnapsackResult result;
    result.best_sim = static_cast<int>(s) - offset;
    result.selection.assign(n, false);
    int64_t c = cap;
    long level = s;
    for (size_t k = 0; k < k_count; ++k) {
      const size_t idx = static_cast<size_t>(c) * levels + static_cast<size_t>(level);
      if (take[k * layer + idx]) {
        result.selection[items[k]] = true;
        c -= p.weight[items[k]];
        level -= p.sim[items[k]];
      }
    }
    assert(level == offset);
    double rc = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (result.selection[j]) rc += p.rc_coeff[j];
    }
    result.rc = rc;
    return result;
  }
  return std::nullopt;
}

std::optional<LexKnapsackResult> BruteForceLex(const LexKnapsackProblem& p) {
  const size_t n = p.sim.size();
  if (n > static_cast<size_t>(kMaxBruteForceItems)) {
    throw std::invalid_argument("brute force lex knapsack limited to 20 items");
  }
  if (p.rc_coeff.size() != n || p.weight.size() != n) {
    throw std::invalid_argument("lex knapsack sequences differ in length");
  }
  std::optional<LexKnapsackResult> best;
  Selection sel(n, false);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    int64_t weight = 0;
    int sim = 0;
    double rc = 0.0;
    for (size_t j = 0; j < n; ++j) {
      sel[j] = (mask >> j) & 1u;
      if (sel[j]) {
        weight += p.weight[j];
        sim += p.sim[j];
        rc += p.rc_coeff[j];
      }
    }
    if (weight > p.capacity || !(rc <= p.rc_budget)) continue;
    const bool better =
        !best || sim > best->best_sim ||
        (sim == best->best_sim &&
         (rc < best->rc || (rc == best->rc && LexLess(sel, best->selection))));
    if (better) best = LexKnapsackResult{sim, rc, sel};
  }
  return best;
}

}  // namespace gapcg
