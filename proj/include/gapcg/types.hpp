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

#ifndef GAPCG_TYPES_HPP_
#define GAPCG_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gapcg {

// One bit per job; true means the job is assigned by the column.
using Selection = std::vector<bool>;

enum class PricingMethod { kDantzig, kPessoa, kLagrangeTemplate, kExactTemplate };

std::string_view ToString(PricingMethod method);
std::optional<PricingMethod> ParsePricingMethod(std::string_view token);

// Per-machine template vectors y^i together with the similarity threshold.
struct TemplateSet {
  std::vector<std::vector<double>> y;
  double delta = 1e-6;
};

// A complete job -> machine assignment and its cost.
struct IntegerSolution {
  std::vector<int> machine_of_job;
  int64_t cost = 0;
};

// Thrown when an LP that must be feasible is not (e.g. Phase II of the
// master after a successful Phase I).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gapcg

#endif  // GAPCG_TYPES_HPP_
