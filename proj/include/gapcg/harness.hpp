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

// Method benchmarks and age-threshold sweeps.

#ifndef GAPCG_HARNESS_HPP_
#define GAPCG_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gapcg/cg_driver.hpp"
#include "gapcg/instance.hpp"

namespace gapcg {

// "dantzig", "pessoa", "lt", "mt" or "lr".
RunReport RunMethod(const GapInstance& instance, const std::string& method,
                    const CgConfig& base);

struct BenchRow {
  std::string instance;
  std::string method;
  uint64_t seed = 0;
  std::optional<RunReport> report;
  std::string error;  // set when the run threw
};

// One row per (instance, method, seed), cells spread over `workers` threads.
// Row order is instance-major, then method, then seed.
std::vector<BenchRow> RunBench(std::span<const GapInstance> instances,
                               std::span<const std::string> methods,
                               std::span<const uint64_t> seeds, const CgConfig& base,
                               int workers);

double GeometricMean(std::span<const double> values);

// Data rows plus one geometric-mean summary row per method.
void WriteBenchTsv(std::span<const BenchRow> rows, std::ostream& out);

struct SweepSpec {
  std::vector<int> tau_values;  // strictly increasing
  int replications = 5;
  double time_limit = 60.0;
  int smoothing_window = 5;  // odd
  double relative_tie = 0.01;
  double absolute_tie = 1.0;  // seconds
};

struct SweepSelection {
  std::vector<double> smoothed;
  size_t index = 0;
  int tau = 0;
};

// Centered rolling geometric mean (window truncated at the ends) and the
// smallest tau whose smoothed time is within relative_tie of, or
// absolute_tie above, the smoothed minimum.
SweepSelection SelectThreshold(std::span<const int> taus,
                               std::span<const double> times, int window,
                               double relative_tie, double absolute_tie);

struct SweepResult {
  std::vector<int> taus;
  // times[k][r]: solve time of replication r at taus[k].
  std::vector<std::vector<double>> times;
  std::vector<double> raw;  // per-tau geometric mean
  SweepSelection selection;
};

// Timing source for one (tau, replication) cell; returns seconds.
using SweepTimer = std::function<double(int tau, int replication)>;

SweepResult RunSweep(const SweepSpec& spec, const SweepTimer& timer);
// Times real runs: seed = base.seed + replication, age policy fixed to tau,
// time-outs counted at the limit.
SweepResult RunSweep(const GapInstance& instance, const std::string& method,
                     const SweepSpec& spec, const CgConfig& base);

void WriteSweepTsv(const SweepResult& result, std::ostream& out);

}  // namespace gapcg

#endif  // GAPCG_HARNESS_HPP_
