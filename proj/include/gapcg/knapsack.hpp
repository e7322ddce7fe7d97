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

// Exact 0/1 knapsack kernels used by every pricing strategy and by the
// Lagrangian baseline.
//
// Both kernels are capacity-indexed dynamic programs with real-valued
// objective coefficients and integer weights. Ties between equally good
// selections are broken towards the lexicographically smallest bit vector
// (item 0 is the most significant position, "not selected" < "selected"),
// which keeps results reproducible.

#ifndef GAPCG_KNAPSACK_HPP_
#define GAPCG_KNAPSACK_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gapcg/types.hpp"

namespace gapcg {

struct KnapsackProblem {
  std::vector<double> profit;  // objective coefficient per item (minimized)
  std::vector<int64_t> weight;
  int64_t capacity = 0;
};

struct KnapsackSolution {
  double value = 0.0;
  Selection selection;
};

// Minimizes sum_j profit_j x_j subject to sum_j weight_j x_j <= capacity.
// Items with profit >= 0 are never selected.
KnapsackSolution MinKnapsack(std::span<const double> profit,
                             std::span<const int64_t> weight, int64_t capacity);
KnapsackSolution MinKnapsack(const KnapsackProblem& problem);

struct LexKnapsackProblem {
  std::vector<int> sim;          // similarity class per item, in {-1, 0, +1}
  std::vector<double> rc_coeff;  // reduced-cost coefficient per item
  std::vector<int64_t> weight;
  int64_t capacity = 0;
  double rc_budget = 0.0;
};

struct LexKnapsackResult {
  int best_sim = 0;
  double rc = 0.0;
  Selection selection;
};

// Among capacity-feasible selections with sum rc_coeff x <= rc_budget,
// maximizes sum sim x and then minimizes sum rc_coeff x. Returns nullopt
// when no selection meets the budget.
std::optional<LexKnapsackResult> LexKnapsack(const LexKnapsackProblem& problem);

// Exhaustive reference for LexKnapsack. Throws std::invalid_argument for
// more than kMaxBruteForceItems items.
inline constexpr int kMaxBruteForceItems = 20;
std::optional<LexKnapsackResult> BruteForceLex(const LexKnapsackProblem& problem);

}  // namespace gapcg

#endif  // GAPCG_KNAPSACK_HPP_
