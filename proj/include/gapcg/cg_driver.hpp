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

// Column generation loop: Phase I without big-M, Phase II with one of the
// four pricing methods, integrality-aware bounds and age-based column
// management. RunLr wraps the Lagrangian baseline into the same report.

#ifndef GAPCG_CG_DRIVER_HPP_
#define GAPCG_CG_DRIVER_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapcg/instance.hpp"
#include "gapcg/pricing.hpp"
#include "gapcg/rmp.hpp"
#include "gapcg/types.hpp"

namespace gapcg {

struct CgConfig {
  PricingMethod method = PricingMethod::kDantzig;
  double epsilon = 1e-6;
  std::chrono::duration<double> time_limit{60.0};
  double mip_gap = 1e-5;
  std::optional<AgePolicy> age_policy_override;
  double template_delta = 1e-6;
  uint64_t seed = 0;
  // Threads for per-machine pricing.
  int workers = 1;
  int max_iterations = 1'000'000;

  // Diagnostics and test hooks.
  bool pessoa_freeze_alpha = false;
  LtOptions lt_options;
  bool manage_columns = true;
  // Re-solve after every management step and record the outcome.
  bool verify_management = false;
  bool record_columns = false;
};

struct Bounds {
  std::optional<double> rc_sum;
  std::optional<double> lb_raw;
  std::optional<int64_t> lb_int;
  std::optional<int64_t> ub;
};

// Folds one pricing round into the bounds. Rounds priced with smoothed
// duals leave them untouched.
Bounds UpdateBounds(const Bounds& bounds, std::span<const PricingOutcome> outcomes,
                    double rmp_objective, bool duals_were_smoothed);

enum class RunStatus {
  kOptimal,      // lb_int >= RMP objective
  kGapClosed,    // incumbent within the MIP gap
  kRcConverged,  // no improving column
  kTimeLimit,
  kStalled,      // every priced column was already in the pool
  kInfeasible,   // the cover LP has no solution
  kIterationLimit,
};

std::string_view ToString(RunStatus status);

struct IterationRow {
  int iteration = 0;
  int phase = 2;
  std::optional<double> rmp_objective;
  std::optional<double> lb_raw;
  std::optional<int64_t> lb_int;
  std::optional<int64_t> ub;
  std::optional<double> rc_sum;
  int columns_added = 0;
  int columns_removed = 0;
  int64_t pivots = 0;
  double rmp_time = 0.0;
  double pricing_time = 0.0;
  std::optional<double> alpha_min;
  std::optional<double> alpha_avg;
  std::optional<double> alpha_max;
};

struct AddedColumn {
  int iteration = 0;
  int machine = 0;
  Selection jobs;
  double true_rc = 0.0;
};

struct ManagementCheck {
  int iteration = 0;
  int removed = 0;
  double objective_before = 0.0;
  double objective_after = 0.0;
  int64_t pivots = 0;
};

struct RunReport {
  std::string instance_name;
  std::string method;
  uint64_t seed = 0;
  std::vector<IterationRow> rows;
  RunStatus status = RunStatus::kRcConverged;
  int final_phase = 2;
  Bounds bounds;
  std::optional<double> final_rmp_objective;
  // An integral restricted-master solution was met during the run.
  bool integral = false;
  // The last restricted-master solution itself is integral.
  bool final_rmp_integral = false;
  std::optional<IntegerSolution> incumbent;
  std::optional<double> integer_gap_percent;

  int phase1_iterations = 0;
  // Cost of the first feasible restricted master, sum cost_p lambda_p.
  std::optional<double> phase1_handoff_cost;
  std::optional<double> phase1_gap_percent;

  int iterations = 0;
  int64_t total_pivots = 0;
  int64_t columns_generated = 0;
  double rmp_time = 0.0;
  double pricing_time = 0.0;
  double total_time = 0.0;
  // Largest true reduced cost among added columns (should be <= -epsilon).
  std::optional<double> max_added_rc;
  int template_fallbacks = 0;
  int template_proofs = 0;
  std::vector<AddedColumn> added_columns;
  std::vector<ManagementCheck> management_checks;
  std::string note;

  // Pivots per generated column, or nullopt when nothing was generated.
  std::optional<double> PivotsPerColumn() const;
};

// Throws std::invalid_argument when the instance fails validation.
RunReport Run(const GapInstance& instance, const CgConfig& config);

// Lagrangian baseline in the RunReport shape.
RunReport RunLr(const GapInstance& instance, const CgConfig& config);

}  // namespace gapcg

#endif  // GAPCG_CG_DRIVER_HPP_
