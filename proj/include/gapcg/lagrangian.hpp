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

// Lagrangian relaxation of the cover rows:
//
//   L(pi) = sum_j pi_j + sum_i min_{x in P_i} sum_j (c_ij - pi_j) x_j,
//
// maximized over pi >= 0 by limited-memory quasi-Newton ascent with a
// backtracking line search.

#ifndef GAPCG_LAGRANGIAN_HPP_
#define GAPCG_LAGRANGIAN_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gapcg/instance.hpp"
#include "gapcg/types.hpp"

namespace gapcg {

struct LrEvaluation {
  double value = 0.0;
  std::vector<double> gradient;       // g_j = 1 - #machines selecting j
  std::vector<Selection> selections;  // per machine
};

LrEvaluation LrEvaluate(const GapInstance& instance, std::span<const double> pi);

struct LrOptions {
  std::chrono::duration<double> time_limit{60.0};
  int memory = 256;
  double armijo = 1e-4;
  int max_backtracks = 30;
  double fallback_step = 1e-8;
  double tolerance = 1e-6;  // on |Delta L| between accepted iterates
  int64_t max_evaluations = 1'000'000;
};

struct LrTraceRow {
  int64_t evaluation = 0;  // 1-based knapsack-round counter
  double value = 0.0;      // L at the probe
  double best_bound = 0.0;
  bool accepted = false;
  double time_seconds = 0.0;
  std::optional<int64_t> incumbent;  // best partition cost so far
};

struct LrResult {
  double best_bound = 0.0;
  std::vector<double> best_pi;
  std::optional<IntegerSolution> integer_solution;
  std::vector<LrTraceRow> trace;
  int64_t evaluations = 0;
  int64_t memory_resets = 0;
  bool time_limit_hit = false;
};

LrResult LrSolve(const GapInstance& instance, const LrOptions& options = {});

}  // namespace gapcg

#endif  // GAPCG_LAGRANGIAN_HPP_
