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

// Per-machine pricing for the GAP master.
//
// A column x on machine i is good when
//   sum_j (c_ij - pi_j) x_j <= mu_i - epsilon
// under the true duals. Dantzig minimizes the left side. The template
// methods pick, among good columns, one that agrees with a target vector
// y^i; Pessoa prices with smoothed duals and keeps only the good columns.

#ifndef GAPCG_PRICING_HPP_
#define GAPCG_PRICING_HPP_

#include <optional>
#include <span>
#include <vector>

#include "gapcg/instance.hpp"
#include "gapcg/types.hpp"

namespace gapcg {

// +1 for y in (1 - delta, 1], 0 for y in [delta, 1 - delta], -1 below delta.
int SimilarityClass(double y, double delta);

// Shared read-only inputs of one pricing round.
struct PricingContext {
  const GapInstance* instance = nullptr;
  std::span<const double> pi;
  std::span<const double> mu;
  double epsilon = 1e-6;
  // Phase I: every cost c_ij is taken as zero.
  bool phase1 = false;

  // c_ij - pi_j, or -pi_j in Phase I.
  double RcCoeff(int machine, int job) const;
  // sum_j RcCoeff * x_j - mu_i.
  double ReducedCost(int machine, const Selection& x) const;
};

struct PricingOutcome {
  int machine = 0;
  std::optional<Selection> column;
  // Reduced cost of `column` under the true duals (mu included).
  double column_rc = 0.0;
  // min over the machine's feasible set of the true reduced cost, when the
  // round computed it.
  std::optional<double> dantzig_rc;
  std::optional<int> similarity;
  std::optional<double> alpha_used;
  // Template pricing: the Dantzig column was returned because the search
  // gave up.
  bool fallback = false;
  // LT: the similarity upper bound proved the returned column optimal.
  bool proof_fired = false;
  int search_iterations = 0;
};

PricingOutcome DantzigPrice(const PricingContext& ctx, int machine);

// Lagrange-Template bisection.
struct LtState {
  std::vector<double> alpha_warm;

  explicit LtState(int num_machines = 0) : alpha_warm(num_machines, 0.5) {}
};

struct LtOptions {
  int max_iterations = 64;
  double relative_gap = 1e-3;
  // Upper end of the interval treated as zero while l = 0.
  double absolute_floor = 1e-9;
  // Return x at alpha = u instead of the best good column seen.
  bool literal_return = false;
};

PricingOutcome LtPrice(const PricingContext& ctx, int machine,
                       std::span<const double> y, double delta, LtState& state,
                       const LtOptions& options = {});

// Exact template pricing: maximum similarity among good columns, ties by
// reduced cost.
PricingOutcome MtPrice(const PricingContext& ctx, int machine,
                       std::span<const double> y, double delta);

// Smoothing state carried between rounds.
struct PessoaState {
  std::vector<double> pi_hat;
  std::vector<double> g_hat;
  double alpha = 0.0;
  double last_rmp_objective = 0.0;
  bool initialized = false;
  // Keeps alpha at its current value (used to check degeneration).
  bool freeze_alpha = false;
};

struct PessoaRoundResult {
  std::vector<PricingOutcome> outcomes;  // one per machine
  // Backtracking index that produced columns, 1..9, or 10 for the
  // Dantzig fallback.
  int k_used = 0;
  // Whether the accepted round priced with the true duals, which makes
  // every outcome's dantzig_rc available.
  bool true_duals = false;
  std::vector<double> pi_tilde;
};

// One Pessoa round on Phase II duals. `rmp_objective` is RMP_t and drives
// the update of the best dual vector.
PessoaRoundResult PessoaRound(PessoaState& state, const PricingContext& ctx,
                              double rmp_objective);

}  // namespace gapcg

#endif  // GAPCG_PRICING_HPP_
