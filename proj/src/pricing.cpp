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

#include "gapcg/pricing.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "gapcg/knapsack.hpp"

namespace gapcg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::span<const int64_t> Weights(const GapInstance& inst, int machine) {
  return {inst.resource.data() + static_cast<size_t>(machine) * inst.num_jobs,
          static_cast<size_t>(inst.num_jobs)};
}

int Similarity(const Selection& x, const std::vector<int>& f) {
  int s = 0;
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j]) s += f[j];
  }
  return s;
}

double Norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

std::string_view ToString(PricingMethod method) {
  switch (method) {
    case PricingMethod::kDantzig:
      return "dantzig";
    case PricingMethod::kPessoa:
      return "pessoa";
    case PricingMethod::kLagrangeTemplate:
      return "lt";
    case PricingMethod::kExactTemplate:
      return "mt";
  }
  return "unknown";
}

std::optional<PricingMethod> ParsePricingMethod(std::string_view token) {
  if (token == "dantzig") return PricingMethod::kDantzig;
  if (token == "pessoa") return PricingMethod::kPessoa;
  if (token == "lt") return PricingMethod::kLagrangeTemplate;
  if (token == "mt") return PricingMethod::kExactTemplate;
  return std::nullopt;
}

int SimilarityClass(double y, double delta) {
  if (y > 1.0 - delta) return 1;
  if (y >= delta) return 0;
  return -1;
}

double PricingContext::RcCoeff(int machine, int job) const {
  const double c = phase1 ? 0.0 : static_cast<double>(instance->Cost(machine, job));
  return c - pi[job];
}

double PricingContext::ReducedCost(int machine, const Selection& x) const {
  double rc = 0.0;
  for (int j = 0; j < instance->num_jobs; ++j) {
    if (x[j]) rc += RcCoeff(machine, j);
  }
  return rc - mu[machine];
}

PricingOutcome DantzigPrice(const PricingContext& ctx, int machine) {
  const GapInstance& inst = *ctx.instance;
  std::vector<double> profit(static_cast<size_t>(inst.num_jobs));
  for (int j = 0; j < inst.num_jobs; ++j) profit[j] = ctx.RcCoeff(machine, j);
  KnapsackSolution ks =
      MinKnapsack(profit, Weights(inst, machine), inst.capacity[machine]);
  PricingOutcome out;
  out.machine = machine;
  out.dantzig_rc = ks.value - ctx.mu[machine];
  if (*out.dantzig_rc <= -ctx.epsilon) {
    out.column_rc = *out.dantzig_rc;
    out.column = std::move(ks.selection);
  }
  return out;
}

PricingOutcome LtPrice(const PricingContext& ctx, int machine,
                       std::span<const double> y, double delta, LtState& state,
                       const LtOptions& options) {
  PricingOutcome dantzig = DantzigPrice(ctx, machine);
  if (!dantzig.column) return dantzig;

  const GapInstance& inst = *ctx.instance;
  const size_t n = static_cast<size_t>(inst.num_jobs);
  std::vector<int> f(n);
  std::vector<double> rc(n);
  for (size_t j = 0; j < n; ++j) {
    f[j] = SimilarityClass(y[j], delta);
    rc[j] = ctx.RcCoeff(machine, static_cast<int>(j));
  }
  const double mu = ctx.mu[machine];
  const double budget = mu - ctx.epsilon;
  const auto weights = Weights(inst, machine);

  double l = 0.0;
  double u = kInf;
  double alpha = state.alpha_warm[machine];
  std::optional<Selection> best;
  int best_sim = 0;
  double best_rc = 0.0;
  std::optional<Selection> at_u;
  bool proof = false;
  int iterations = 0;
  std::vector<double> profit(n);
  while (iterations < options.max_iterations) {
    ++iterations;
    for (size_t j = 0; j < n; ++j) profit[j] = -f[j] + alpha * rc[j];
    KnapsackSolution ks = MinKnapsack(profit, weights, inst.capacity[machine]);
    double x_rc = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (ks.selection[j]) x_rc += rc[j];
    }
    if (x_rc <= budget) {
      u = alpha;
      const int sim = Similarity(ks.selection, f);
      if (!best || sim > best_sim || (sim == best_sim && x_rc < best_rc)) {
        best = ks.selection;
        best_sim = sim;
        best_rc = x_rc;
      }
      at_u = std::move(ks.selection);
      // Any good column has similarity <= alpha * mu - OPT(alpha).
      const double bound = std::floor(alpha * mu - ks.value + 1e-9);
      if (best_sim >= bound) {
        proof = true;
        break;
      }
    } else {
      l = alpha;
    }
    if (u < kInf) {
      if (l > 0.0 ? (u - l) / l <= options.relative_gap
                  : u <= options.absolute_floor) {
        break;
      }
      alpha = 0.5 * (l + u);
    } else {
      alpha *= 2.0;
    }
  }

  PricingOutcome out;
  out.machine = machine;
  out.dantzig_rc = dantzig.dantzig_rc;
  out.search_iterations = iterations;
  if (!best) {
    out.column = std::move(dantzig.column);
    out.column_rc = dantzig.column_rc;
    out.similarity = Similarity(*out.column, f);
    out.alpha_used = alpha;
    out.fallback = true;
    return out;
  }
  out.proof_fired = proof;
  out.column = options.literal_return ? std::move(at_u) : std::move(best);
  out.column_rc = ctx.ReducedCost(machine, *out.column);
  out.similarity = Similarity(*out.column, f);
  out.alpha_used = u;
  state.alpha_warm[machine] = std::max(u, std::numeric_limits<double>::min());
  return out;
}

PricingOutcome MtPrice(const PricingContext& ctx, int machine,
                       std::span<const double> y, double delta) {
  PricingOutcome dantzig = DantzigPrice(ctx, machine);
  if (!dantzig.column) return dantzig;

  const GapInstance& inst = *ctx.instance;
  LexKnapsackProblem lex;
  lex.capacity = inst.capacity[machine];
  lex.rc_budget = ctx.mu[machine] - ctx.epsilon;
  const auto weights = Weights(inst, machine);
  lex.weight.assign(weights.begin(), weights.end());
  for (int j = 0; j < inst.num_jobs; ++j) {
    lex.sim.push_back(SimilarityClass(y[j], delta));
    lex.rc_coeff.push_back(ctx.RcCoeff(machine, j));
  }
  std::optional<LexKnapsackResult> result = LexKnapsack(lex);
  PricingOutcome out;
  out.machine = machine;
  out.dantzig_rc = dantzig.dantzig_rc;
  if (!result) {
    // Only reachable through rounding in the budget comparison.
    assert(false && "lex knapsack lost the Dantzig column");
    out.column = std::move(dantzig.column);
    out.column_rc = dantzig.column_rc;
    out.fallback = true;
    return out;
  }
  out.similarity = result->best_sim;
  out.column = std::move(result->selection);
  out.column_rc = ctx.ReducedCost(machine, *out.column);
  return out;
}

PessoaRoundResult PessoaRound(PessoaState& state, const PricingContext& ctx,
                              double rmp_objective) {
  const GapInstance& inst = *ctx.instance;
  const size_t n = static_cast<size_t>(inst.num_jobs);
  const int m = inst.num_machines;
  const std::vector<double> pi(ctx.pi.begin(), ctx.pi.end());
  if (!state.initialized) {
    state.pi_hat = pi;
    state.g_hat.assign(n, 0.0);
    state.last_rmp_objective = kInf;
    state.initialized = true;
  }

  std::vector<double> diff(n);
  for (size_t j = 0; j < n; ++j) diff[j] = pi[j] - state.pi_hat[j];
  const double diff_norm = Norm(diff);
  const double g_norm = Norm(state.g_hat);

  PessoaRoundResult result;
  std::vector<Selection> minimizers(static_cast<size_t>(m));
  std::vector<double> values(static_cast<size_t>(m));
  std::vector<double> pi_tilde(n);
  std::vector<double> profit(n);

  auto price_all = [&](const std::vector<double>& duals) {
    bool any = false;
    for (int i = 0; i < m; ++i) {
      for (size_t j = 0; j < n; ++j) {
        profit[j] = static_cast<double>(inst.Cost(i, static_cast<int>(j))) - duals[j];
      }
      KnapsackSolution ks = MinKnapsack(profit, Weights(inst, i), inst.capacity[i]);
      values[i] = ks.value;
      minimizers[i] = std::move(ks.selection);
      if (ctx.ReducedCost(i, minimizers[i]) <= -ctx.epsilon) any = true;
    }
    return any;
  };

  int k_used = 0;
  bool smoothed = false;
  for (int k = 1; k <= 9; ++k) {
    const double alpha_k = std::max(0.0, 1.0 - k * (1.0 - state.alpha));
    for (size_t j = 0; j < n; ++j) {
      pi_tilde[j] = alpha_k * state.pi_hat[j] + (1.0 - alpha_k) * pi[j];
    }
    // The directional step is skipped once the mixing weight hits zero, so
    // that alpha = 0 prices with the RMP duals exactly.
    if (k == 1 && g_norm > 0.0 && diff_norm > 0.0 && alpha_k > 0.0) {
      std::vector<double> pi_g(n);
      double dot = 0.0;
      double g_step_norm = 0.0;
      for (size_t j = 0; j < n; ++j) {
        pi_g[j] = state.pi_hat[j] + diff_norm * state.g_hat[j] / g_norm;
        const double d = pi_g[j] - state.pi_hat[j];
        dot += diff[j] * d;
        g_step_norm += d * d;
      }
      g_step_norm = std::sqrt(g_step_norm);
      const double beta = dot / (diff_norm * g_step_norm);
      std::vector<double> rho_dir(n);
      for (size_t j = 0; j < n; ++j) {
        rho_dir[j] = beta * pi_g[j] + (1.0 - beta) * pi[j] - state.pi_hat[j];
      }
      const double rho_norm = Norm(rho_dir);
      if (rho_norm > 0.0) {
        double k_dist = 0.0;
        for (size_t j = 0; j < n; ++j) {
          const double d = pi_tilde[j] - state.pi_hat[j];
          k_dist += d * d;
        }
        k_dist = std::sqrt(k_dist);
        for (size_t j = 0; j < n; ++j) {
          pi_tilde[j] =
              std::max(0.0, state.pi_hat[j] + k_dist * rho_dir[j] / rho_norm);
        }
      }
    }
    smoothed = pi_tilde != pi;
    if (price_all(pi_tilde)) {
      k_used = k;
      break;
    }
    // Unsmoothed pricing already failed; the Dantzig fallback is the same.
    if (!smoothed) break;
  }
  if (k_used == 0) {
    k_used = 10;
    if (smoothed) {
      pi_tilde = pi;
      price_all(pi_tilde);
    }
    smoothed = false;
  }

  result.k_used = k_used;
  result.true_duals = !smoothed;
  std::vector<double> g_tilde(n, 1.0);
  for (int i = 0; i < m; ++i) {
    PricingOutcome out;
    out.machine = i;
    const double rc = ctx.ReducedCost(i, minimizers[i]);
    if (result.true_duals) out.dantzig_rc = values[i] - ctx.mu[i];
    for (size_t j = 0; j < n; ++j) {
      if (minimizers[i][j]) g_tilde[j] -= 1.0;
    }
    if (rc <= -ctx.epsilon) {
      out.column = minimizers[i];
      out.column_rc = rc;
    }
    result.outcomes.push_back(std::move(out));
  }
  result.pi_tilde = pi_tilde;

  if (!state.freeze_alpha) {
    double agreement = 0.0;
    for (size_t j = 0; j < n; ++j) agreement += g_tilde[j] * diff[j];
    state.alpha = agreement > 0.0 ? std::min(0.9999, 0.9 * state.alpha + 0.1)
                                  : std::max(0.0, state.alpha - 0.1);
  }
  if (rmp_objective < state.last_rmp_objective - 1e-9) {
    state.pi_hat = pi;
    state.g_hat = std::move(g_tilde);
    state.last_rmp_objective = rmp_objective;
  }
  return result;
}

}  // namespace gapcg
