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

#include "gapcg/cg_driver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "gapcg/lagrangian.hpp"

namespace gapcg {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kPhase1Done = 1e-7;
constexpr double kRcConverged = 1e-6;
constexpr double kCeilGuard = 1e-9;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int64_t CeilGuarded(double v) {
  return static_cast<int64_t>(std::ceil(v - kCeilGuard));
}

// Runs fn(0..count-1) on up to `workers` threads.
void ParallelFor(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::clamp(workers, 1, std::max(1, count));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (int k = w; k < count; k += workers) fn(k);
    });
  }
  for (auto& t : threads) t.join();
}

bool IsTemplateMethod(PricingMethod m) {
  return m == PricingMethod::kLagrangeTemplate || m == PricingMethod::kExactTemplate;
}

bool GapClosed(const Bounds& b, double mip_gap) {
  if (!b.ub || !b.lb_int) return false;
  const double ub = static_cast<double>(*b.ub);
  return *b.ub <= *b.lb_int ||
         ub - static_cast<double>(*b.lb_int) < mip_gap * std::abs(ub);
}

double LambdaCost(const RmpSolution& sol, const ColumnPool& pool) {
  double total = 0.0;
  for (const auto& [id, lambda] : sol.lambda) {
    if (const Column* c = pool.Find(id)) total += static_cast<double>(c->cost) * lambda;
  }
  return total;
}

class Driver {
 public:
  Driver(const GapInstance& inst, const CgConfig& cfg)
      : inst_(inst),
        cfg_(cfg),
        pool_(inst),
        rmp_(inst),
        lt_state_(inst.num_machines),
        rng_(cfg.seed) {
    report_.instance_name = inst.name;
    report_.method = std::string(ToString(cfg.method));
    report_.seed = cfg.seed;
    pessoa_.freeze_alpha = cfg.pessoa_freeze_alpha;
    const AgePolicy policy =
        cfg.age_policy_override.value_or(AgePolicy::ForMethod(cfg.method));
    tau_ = AgeThreshold(policy, inst);
  }

  RunReport Run() {
    start_ = Clock::now();
    try {
      if (IsTemplateMethod(cfg_.method)) InitTemplates();
      if (PhaseOne()) PhaseTwo();
    } catch (const InfeasibleError& e) {
      report_.status = RunStatus::kInfeasible;
      report_.note = e.what();
    }
    Finish();
    return std::move(report_);
  }

 private:
  bool TimeUp() const { return Seconds(start_) >= cfg_.time_limit.count(); }

  void InitTemplates() {
    const CompactLpSolution lp = SolveCompactLp(inst_);
    templates_.delta = cfg_.template_delta;
    templates_.y.assign(static_cast<size_t>(inst_.num_machines), {});
    for (int i = 0; i < inst_.num_machines; ++i) {
      for (int j = 0; j < inst_.num_jobs; ++j) {
        templates_.y[i].push_back(lp.X(i, j, inst_.num_jobs));
      }
    }
  }

  RmpSolution SolveRmp(RmpMode mode, IterationRow& row) {
    const auto t0 = Clock::now();
    RmpSolution sol = rmp_.Solve(pool_, mode);
    row.rmp_time = Seconds(t0);
    row.pivots = sol.pivots;
    row.rmp_objective = sol.objective;
    report_.rmp_time += row.rmp_time;
    report_.total_pivots += sol.pivots;
    return sol;
  }

  std::vector<PricingOutcome> PriceTrueDuals(const PricingContext& ctx,
                                             PricingMethod method) {
    const int m = inst_.num_machines;
    std::vector<PricingOutcome> outcomes(static_cast<size_t>(m));
    ParallelFor(m, cfg_.workers, [&](int i) {
      switch (method) {
        case PricingMethod::kLagrangeTemplate:
          outcomes[i] = LtPrice(ctx, i, templates_.y[i], templates_.delta,
                                lt_state_, cfg_.lt_options);
          break;
        case PricingMethod::kExactTemplate:
          outcomes[i] = MtPrice(ctx, i, templates_.y[i], templates_.delta);
          break;
        default:
          outcomes[i] = DantzigPrice(ctx, i);
          break;
      }
    });
    return outcomes;
  }

  // Inserts accepted columns in a seed-dependent order. Returns the number
  // added; `duplicates` counts columns already present.
  int AddColumns(const std::vector<PricingOutcome>& outcomes, int iteration,
                 int& duplicates) {
    std::vector<const PricingOutcome*> order;
    for (const auto& o : outcomes) {
      if (o.column) order.push_back(&o);
      if (o.fallback) ++report_.template_fallbacks;
      if (o.proof_fired) ++report_.template_proofs;
    }
    std::shuffle(order.begin(), order.end(), rng_);
    int added = 0;
    duplicates = 0;
    for (const PricingOutcome* o : order) {
      if (!pool_.Add(o->machine, *o->column)) {
        ++duplicates;
        continue;
      }
      ++added;
      report_.max_added_rc =
          std::max(report_.max_added_rc.value_or(-std::numeric_limits<double>::infinity()),
                   o->column_rc);
      if (cfg_.record_columns) {
        report_.added_columns.push_back({iteration, o->machine, *o->column, o->column_rc});
      }
    }
    report_.columns_generated += added;
    return added;
  }

  void AlphaStats(const std::vector<PricingOutcome>& outcomes, IterationRow& row) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    int count = 0;
    for (const auto& o : outcomes) {
      if (!o.alpha_used) continue;
      lo = std::min(lo, *o.alpha_used);
      hi = std::max(hi, *o.alpha_used);
      sum += *o.alpha_used;
      ++count;
    }
    if (count > 0) {
      row.alpha_min = lo;
      row.alpha_max = hi;
      row.alpha_avg = sum / count;
    }
  }

  // Returns true once the restricted master is feasible.
  bool PhaseOne() {
    const PricingMethod method =
        cfg_.method == PricingMethod::kPessoa ? PricingMethod::kDantzig : cfg_.method;
    bool first = true;
    while (true) {
      IterationRow row;
      row.phase = 1;
      row.iteration = ++iteration_;
      pool_.set_iteration(iteration_);
      RmpSolution sol = SolveRmp(RmpMode::kPhase1, row);
      ++report_.phase1_iterations;
      if (sol.objective < kPhase1Done) {
        report_.phase1_handoff_cost = LambdaCost(sol, pool_);
        report_.rows.push_back(row);
        return true;
      }
      if (TimeUp()) return Stop(RunStatus::kTimeLimit, 1, row);
      if (iteration_ >= cfg_.max_iterations) return Stop(RunStatus::kIterationLimit, 1, row);
      if (IsTemplateMethod(method) && !first) {
        templates_ = ProjectPrimal(sol, pool_, cfg_.template_delta);
      }
      first = false;
      PricingContext ctx{&inst_, sol.pi, sol.mu, cfg_.epsilon, /*phase1=*/true};
      const auto t0 = Clock::now();
      std::vector<PricingOutcome> outcomes = PriceTrueDuals(ctx, method);
      row.pricing_time = Seconds(t0);
      report_.pricing_time += row.pricing_time;
      AlphaStats(outcomes, row);
      int duplicates = 0;
      row.columns_added = AddColumns(outcomes, iteration_, duplicates);
      if (row.columns_added == 0) {
        // Positive artificial sum with no Farkas column: the cover LP is
        // infeasible (or numerics stalled on duplicates).
        report_.note = duplicates > 0 ? "Phase I stalled on duplicate columns"
                                      : "cover LP is infeasible";
        return Stop(duplicates > 0 ? RunStatus::kStalled : RunStatus::kInfeasible, 1,
                    row);
      }
      report_.rows.push_back(row);
    }
  }

  bool Stop(RunStatus status, int phase, const IterationRow& row) {
    report_.rows.push_back(row);
    report_.status = status;
    report_.final_phase = phase;
    return false;
  }

  void PhaseTwo() {
    const double eps = cfg_.epsilon;
    while (true) {
      IterationRow row;
      row.phase = 2;
      row.iteration = ++iteration_;
      pool_.set_iteration(iteration_);
      RmpSolution sol = SolveRmp(RmpMode::kPhase2, row);
      last_rmp_ = sol.objective;

      std::optional<IntegerSolution> integer = ExtractIntegerSolution(sol, pool_, inst_);
      integral_ = integer.has_value();
      if (integer && (!bounds_.ub || integer->cost < *bounds_.ub)) {
        bounds_.ub = integer->cost;
        report_.incumbent = std::move(integer);
      }
      CopyBounds(row);
      if (GapClosed(bounds_, cfg_.mip_gap)) {
        Stop(RunStatus::kGapClosed, 2, row);
        return;
      }
      if (bounds_.lb_int && static_cast<double>(*bounds_.lb_int) >= sol.objective - kCeilGuard) {
        Stop(RunStatus::kOptimal, 2, row);
        return;
      }
      if (IsTemplateMethod(cfg_.method)) {
        templates_ = ProjectPrimal(sol, pool_, cfg_.template_delta);
      }

      if (cfg_.manage_columns) {
        row.columns_removed = ManageColumns(pool_, sol, tau_);
        if (cfg_.verify_management) {
          RmpSolution again = rmp_.Solve(pool_, RmpMode::kPhase2);
          report_.management_checks.push_back(
              {iteration_, row.columns_removed, sol.objective, again.objective,
               again.pivots});
        }
      }

      PricingContext ctx{&inst_, sol.pi, sol.mu, eps, /*phase1=*/false};
      const auto t0 = Clock::now();
      std::vector<PricingOutcome> outcomes;
      bool smoothed = false;
      if (cfg_.method == PricingMethod::kPessoa) {
        PessoaRoundResult round = PessoaRound(pessoa_, ctx, sol.objective);
        outcomes = std::move(round.outcomes);
        smoothed = !round.true_duals;
        row.alpha_min = row.alpha_avg = row.alpha_max = pessoa_.alpha;
      } else {
        outcomes = PriceTrueDuals(ctx, cfg_.method);
        AlphaStats(outcomes, row);
      }
      row.pricing_time = Seconds(t0);
      report_.pricing_time += row.pricing_time;

      bounds_ = UpdateBounds(bounds_, outcomes, sol.objective, smoothed);
      if (!smoothed) row.rc_sum = bounds_.rc_sum;
      int duplicates = 0;
      row.columns_added = AddColumns(outcomes, iteration_, duplicates);
      CopyBounds(row);
      if (!smoothed) row.rc_sum = bounds_.rc_sum;
      else row.rc_sum.reset();

      if (!smoothed && std::abs(*bounds_.rc_sum) < kRcConverged) {
        Stop(RunStatus::kRcConverged, 2, row);
        return;
      }
      if (bounds_.lb_int && static_cast<double>(*bounds_.lb_int) >= sol.objective - kCeilGuard) {
        Stop(RunStatus::kOptimal, 2, row);
        return;
      }
      if (GapClosed(bounds_, cfg_.mip_gap)) {
        Stop(RunStatus::kGapClosed, 2, row);
        return;
      }
      if (row.columns_added == 0) {
        if (duplicates > 0) report_.note = "every priced column was already pooled";
        Stop(duplicates > 0 ? RunStatus::kStalled : RunStatus::kRcConverged, 2, row);
        return;
      }
      if (TimeUp()) {
        Stop(RunStatus::kTimeLimit, 2, row);
        return;
      }
      if (iteration_ >= cfg_.max_iterations) {
        Stop(RunStatus::kIterationLimit, 2, row);
        return;
      }
      report_.rows.push_back(row);
    }
  }

  void CopyBounds(IterationRow& row) const {
    row.lb_raw = bounds_.lb_raw;
    row.lb_int = bounds_.lb_int;
    row.ub = bounds_.ub;
  }

  void Finish() {
    report_.bounds = bounds_;
    report_.iterations = iteration_;
    report_.final_rmp_integral = integral_;
    report_.integral = report_.incumbent.has_value();
    report_.final_rmp_objective = last_rmp_;
    report_.total_time = Seconds(start_);
    if (bounds_.ub && bounds_.lb_int && *bounds_.ub != 0) {
      report_.integer_gap_percent =
          100.0 * static_cast<double>(*bounds_.ub - *bounds_.lb_int) /
          std::abs(static_cast<double>(*bounds_.ub));
    }
    const bool lp_solved = report_.status == RunStatus::kOptimal ||
                           report_.status == RunStatus::kRcConverged;
    if (lp_solved && last_rmp_ && report_.phase1_handoff_cost && *last_rmp_ != 0.0) {
      report_.phase1_gap_percent =
          100.0 * (*report_.phase1_handoff_cost - *last_rmp_) / std::abs(*last_rmp_);
    }
  }

  const GapInstance& inst_;
  const CgConfig& cfg_;
  ColumnPool pool_;
  RestrictedMaster rmp_;
  TemplateSet templates_;
  LtState lt_state_;
  PessoaState pessoa_;
  std::mt19937_64 rng_;
  int tau_ = 1;
  int iteration_ = 0;
  Bounds bounds_;
  bool integral_ = false;
  std::optional<double> last_rmp_;
  Clock::time_point start_;
  RunReport report_;
};

}  // namespace

Bounds UpdateBounds(const Bounds& bounds, std::span<const PricingOutcome> outcomes,
                    double rmp_objective, bool duals_were_smoothed) {
  if (duals_were_smoothed) return bounds;
  Bounds out = bounds;
  double rc_sum = 0.0;
  for (const auto& o : outcomes) {
    if (!o.dantzig_rc) {
      throw std::invalid_argument("true-dual round without a Dantzig reduced cost");
    }
    rc_sum += std::min(*o.dantzig_rc, 0.0);
  }
  out.rc_sum = rc_sum;
  const double candidate = rmp_objective + rc_sum;
  out.lb_raw = out.lb_raw ? std::max(*out.lb_raw, candidate) : candidate;
  out.lb_int = CeilGuarded(*out.lb_raw);
  return out;
}

std::string_view ToString(RunStatus status) {
  switch (status) {
    case RunStatus::kOptimal:
      return "optimal";
    case RunStatus::kGapClosed:
      return "gap_closed";
    case RunStatus::kRcConverged:
      return "rc_converged";
    case RunStatus::kTimeLimit:
      return "time_limit";
    case RunStatus::kStalled:
      return "stalled";
    case RunStatus::kInfeasible:
      return "infeasible";
    case RunStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

std::optional<double> RunReport::PivotsPerColumn() const {
  if (columns_generated == 0) return std::nullopt;
  return static_cast<double>(total_pivots) / static_cast<double>(columns_generated);
}

RunReport Run(const GapInstance& instance, const CgConfig& config) {
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(config.mip_gap >= 0.0)) throw std::invalid_argument("mip gap must be >= 0");
  if (!(config.template_delta >= 0.0 && config.template_delta <= 0.5)) {
    throw std::invalid_argument("template delta must lie in [0, 0.5]");
  }
  const ValidationReport v = Validate(instance);
  if (!v.ok()) throw std::invalid_argument(v.ToString());
  Driver driver(instance, config);
  return driver.Run();
}

RunReport RunLr(const GapInstance& instance, const CgConfig& config) {
  const ValidationReport v = Validate(instance);
  if (!v.ok()) throw std::invalid_argument(v.ToString());
  LrOptions options;
  options.time_limit = config.time_limit;
  const LrResult lr = LrSolve(instance, options);

  RunReport report;
  report.instance_name = instance.name;
  report.method = "lr";
  report.seed = config.seed;
  double best = -std::numeric_limits<double>::infinity();
  for (const LrTraceRow& t : lr.trace) {
    IterationRow row;
    row.iteration = static_cast<int>(t.evaluation);
    best = std::max(best, t.value);
    row.lb_raw = best;
    row.lb_int = CeilGuarded(best);
    row.ub = t.incumbent;
    report.rows.push_back(row);
  }
  report.iterations = static_cast<int>(lr.evaluations);
  report.bounds.lb_raw = lr.best_bound;
  report.bounds.lb_int = CeilGuarded(lr.best_bound);
  if (lr.integer_solution) {
    report.bounds.ub = lr.integer_solution->cost;
    report.incumbent = lr.integer_solution;
    report.integral = true;
  }
  report.status = lr.time_limit_hit ? RunStatus::kTimeLimit : RunStatus::kRcConverged;
  if (GapClosed(report.bounds, config.mip_gap) && !lr.time_limit_hit) {
    report.status = RunStatus::kGapClosed;
  }
  if (report.bounds.ub && *report.bounds.ub != 0) {
    report.integer_gap_percent =
        100.0 * static_cast<double>(*report.bounds.ub - *report.bounds.lb_int) /
        std::abs(static_cast<double>(*report.bounds.ub));
  }
  report.pricing_time = lr.trace.empty() ? 0.0 : lr.trace.back().time_seconds;
  report.total_time = report.pricing_time;
  report.note = "lbfgs memory " + std::to_string(options.memory) + ", armijo 1e-4, " +
                std::to_string(options.max_backtracks) + " halvings, " +
                std::to_string(lr.memory_resets) + " memory resets";
  return report;
}

}  // namespace gapcg
