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

// Generalized Assignment Problem instances: the in-memory model, the
// OR-Library style text format, a seeded generator and a validator.

#ifndef GAPCG_INSTANCE_HPP_
#define GAPCG_INSTANCE_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gapcg {

// Minimization GAP: assign every job to one machine, paying cost(i, j) and
// consuming resource(i, j) of capacity(i). Matrices are row-major by
// machine.
struct GapInstance {
  std::string name;
  int num_machines = 0;
  int num_jobs = 0;
  std::vector<int64_t> cost;
  std::vector<int64_t> resource;
  std::vector<int64_t> capacity;

  int64_t Cost(int machine, int job) const {
    return cost[static_cast<size_t>(machine) * num_jobs + job];
  }
  int64_t Resource(int machine, int job) const {
    return resource[static_cast<size_t>(machine) * num_jobs + job];
  }
  // Job to machine ratio |J| / |I|, the degeneracy proxy used by the age
  // policies.
  double Ratio() const {
    return static_cast<double>(num_jobs) / static_cast<double>(num_machines);
  }

  friend bool operator==(const GapInstance&, const GapInstance&) = default;
};

enum class InstanceFormat {
  kOrlibMulti,  // leading instance count, then that many blocks
  kSingle,      // exactly one block
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, size_t token_offset)
      : std::runtime_error(message), token_offset_(token_offset) {}
  // Zero-based index of the offending token (or of the first missing one).
  size_t token_offset() const { return token_offset_; }

 private:
  size_t token_offset_;
};

std::vector<GapInstance> ParseInstances(std::string_view text,
                                        InstanceFormat format);
std::vector<GapInstance> ReadInstanceFile(const std::string& path,
                                          InstanceFormat format);

// Single-block format, one matrix row per line.
std::string SerializeInstance(const GapInstance& instance);
void WriteInstanceFile(const GapInstance& instance, const std::string& path);

struct GeneratorSpec {
  int num_machines = 5;
  int num_jobs = 50;
  int64_t cost_min = 10;
  int64_t cost_max = 50;
  int64_t resource_min = 5;
  int64_t resource_max = 25;
  // capacity_i = round(capacity_slack * sum_j resource_ij / num_machines)
  double capacity_slack = 0.8;
  uint64_t seed = 0;
};

// Pure function of the spec. Throws std::invalid_argument on empty
// intervals or non-positive sizes.
GapInstance GenerateInstance(const GeneratorSpec& spec);

struct ValidationIssue {
  enum class Kind {
    kNonPositiveSize,
    kDimensionMismatch,
    kNegativeResource,
    kNegativeCapacity,
    kUnassignableJob,
  };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string ToString() const;
};

ValidationReport Validate(const GapInstance& instance);

}  // namespace gapcg

#endif  // GAPCG_INSTANCE_HPP_
