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

#include "gapcg/instance.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "gapcg/types.hpp"

namespace gapcg {
namespace {

class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : text_(text) {}

  bool AtEnd() {
    SkipSpace();
    return pos_ >= text_.size();
  }

  size_t offset() const { return token_index_; }

  int64_t Next(std::string_view section) {
    SkipSpace();
    if (pos_ >= text_.size()) {
      throw ParseError("truncated input while reading " + std::string(section),
                       token_index_);
    }
    const size_t begin = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::string_view token = text_.substr(begin, pos_ - begin);
    int64_t value = 0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    const auto [ptr, ec] =
        std::from_chars(first, token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() ||
        first == token.data() + token.size()) {
      throw ParseError("non-integer token '" + std::string(token) + "' in " +
                           std::string(section),
                       token_index_);
    }
    ++token_index_;
    return value;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t token_index_ = 0;
};

GapInstance ReadBlock(TokenReader& reader, std::string name) {
  GapInstance inst;
  inst.name = std::move(name);
  const size_t header_offset = reader.offset();
  const int64_t m = reader.Next("header (machines)");
  const int64_t n = reader.Next("header (jobs)");
  if (m <= 0 || n <= 0 || m > (1 << 20) || n > (1 << 20)) {
    throw ParseError("dimension mismatch: header declares " +
                         std::to_string(m) + " machines and " +
                         std::to_string(n) + " jobs",
                     header_offset);
  }
  inst.num_machines = static_cast<int>(m);
  inst.num_jobs = static_cast<int>(n);
  const size_t cells = static_cast<size_t>(m) * static_cast<size_t>(n);
  inst.cost.reserve(cells);
  for (size_t k = 0; k < cells; ++k) inst.cost.push_back(reader.Next("costs"));
  inst.resource.reserve(cells);
  for (size_t k = 0; k < cells; ++k) {
    const size_t at = reader.offset();
    const int64_t r = reader.Next("resources");
    if (r < 0) throw ParseError("negative resource in resources", at);
    inst.resource.push_back(r);
  }
  inst.capacity.reserve(static_cast<size_t>(m));
  for (int64_t i = 0; i < m; ++i) {
    const size_t at = reader.offset();
    const int64_t b = reader.Next("capacities");
    if (b < 0) throw ParseError("negative capacity in capacities", at);
    inst.capacity.push_back(b);
  }
  return inst;
}

}  // namespace

std::vector<GapInstance> ParseInstances(std::string_view text,
                                        InstanceFormat format) {
  TokenReader reader(text);
  std::vector<GapInstance> out;
  if (format == InstanceFormat::kSingle) {
    out.push_back(ReadBlock(reader, "instance"));
  } else {
    const size_t at = reader.offset();
    const int64_t count = reader.Next("instance count");
    if (count <= 0) {
      throw ParseError("dimension mismatch: instance count must be positive",
                       at);
    }
    for (int64_t p = 0; p < count; ++p) {
      out.push_back(ReadBlock(reader, "instance" + std::to_string(p + 1)));
    }
  }
  if (!reader.AtEnd()) {
    throw ParseError("dimension mismatch: trailing tokens after last block",
                     reader.offset());
  }
  return out;
}

std::vector<GapInstance> ReadInstanceFile(const std::string& path,
                                          InstanceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::vector<GapInstance> instances = ParseInstances(buffer.str(), format);
  // Name instances after the file stem.
  std::string stem = path.substr(path.find_last_of("/\\") + 1);
  if (const size_t dot = stem.rfind('.'); dot != std::string::npos && dot > 0) {
    stem.resize(dot);
  }
  for (size_t p = 0; p < instances.size(); ++p) {
    instances[p].name =
        instances.size() == 1 ? stem : stem + "_" + std::to_string(p + 1);
  }
  return instances;
}

std::string SerializeInstance(const GapInstance& instance) {
  std::ostringstream out;
  out << instance.num_machines << ' ' << instance.num_jobs << '\n';
  const auto write_matrix = [&](const std::vector<int64_t>& matrix) {
    for (int i = 0; i < instance.num_machines; ++i) {
      for (int j = 0; j < instance.num_jobs; ++j) {
        if (j > 0) out << ' ';
        out << matrix[static_cast<size_t>(i) * instance.num_jobs + j];
      }
      out << '\n';
    }
  };
  write_matrix(instance.cost);
  write_matrix(instance.resource);
  for (int i = 0; i < instance.num_machines; ++i) {
    if (i > 0) out << ' ';
    out << instance.capacity[i];
  }
  out << '\n';
  return out.str();
}

void WriteInstanceFile(const GapInstance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << SerializeInstance(instance);
  if (!out) throw std::runtime_error("write failed: " + path);
}

GapInstance GenerateInstance(const GeneratorSpec& spec) {
  if (spec.num_machines <= 0 || spec.num_jobs <= 0) {
    throw std::invalid_argument("generator sizes must be positive");
  }
  if (spec.cost_min > spec.cost_max) {
    throw std::invalid_argument("empty cost range");
  }
  if (spec.resource_min > spec.resource_max || spec.resource_min < 1) {
    throw std::invalid_argument("resource range must be a nonempty positive interval");
  }
  if (!(spec.capacity_slack > 0.0 && spec.capacity_slack <= 1.0)) {
    throw std::invalid_argument("capacity_slack must lie in (0, 1]");
  }
  GapInstance inst;
  inst.name = "gen_m" + std::to_string(spec.num_machines) + "_n" +
              std::to_string(spec.num_jobs) + "_s" + std::to_string(spec.seed);
  inst.num_machines = spec.num_machines;
  inst.num_jobs = spec.num_jobs;
  const size_t cells =
      static_cast<size_t>(spec.num_machines) * static_cast<size_t>(spec.num_jobs);
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int64_t> cost_dist(spec.cost_min, spec.cost_max);
  std::uniform_int_distribution<int64_t> res_dist(spec.resource_min,
                                                  spec.resource_max);
  inst.cost.resize(cells);
  inst.resource.resize(cells);
  for (size_t k = 0; k < cells; ++k) inst.cost[k] = cost_dist(rng);
  for (size_t k = 0; k < cells; ++k) inst.resource[k] = res_dist(rng);
  inst.capacity.resize(static_cast<size_t>(spec.num_machines));
  for (int i = 0; i < spec.num_machines; ++i) {
    int64_t load = 0;
    for (int j = 0; j < spec.num_jobs; ++j) load += inst.Resource(i, j);
    inst.capacity[i] = std::llround(spec.capacity_slack *
                                    static_cast<double>(load) /
                                    static_cast<double>(spec.num_machines));
  }
  return inst;
}

std::string ValidationReport::ToString() const {
  std::string out;
  for (const ValidationIssue& issue : issues) {
    if (!out.empty()) out += '\n';
    out += issue.message;
  }
  return out;
}

ValidationReport Validate(const GapInstance& inst) {
  ValidationReport report;
  const auto add = [&](ValidationIssue::Kind kind, std::string message) {
    report.issues.push_back({kind, std::move(message)});
  };
  if (inst.num_machines <= 0 || inst.num_jobs <= 0) {
    add(ValidationIssue::Kind::kNonPositiveSize,
        "machine and job counts must be positive");
    return report;
  }
  const size_t cells =
      static_cast<size_t>(inst.num_machines) * static_cast<size_t>(inst.num_jobs);
  bool shape_ok = true;
  if (inst.cost.size() != cells || inst.resource.size() != cells) {
    add(ValidationIssue::Kind::kDimensionMismatch,
        "cost/resource matrices must be num_machines x num_jobs");
    shape_ok = false;
  }
  if (inst.capacity.size() != static_cast<size_t>(inst.num_machines)) {
    add(ValidationIssue::Kind::kDimensionMismatch,
        "capacity length must equal num_machines");
    shape_ok = false;
  }
  if (!shape_ok) return report;
  for (size_t k = 0; k < cells; ++k) {
    if (inst.resource[k] < 0) {
      add(ValidationIssue::Kind::kNegativeResource,
          "negative resource at machine " + std::to_string(k / inst.num_jobs) +
              ", job " + std::to_string(k % inst.num_jobs));
    }
  }
  for (int i = 0; i < inst.num_machines; ++i) {
    if (inst.capacity[i] < 0) {
      add(ValidationIssue::Kind::kNegativeCapacity,
          "negative capacity on machine " + std::to_string(i));
    }
  }
  for (int j = 0; j < inst.num_jobs; ++j) {
    bool fits_somewhere = false;
    for (int i = 0; i < inst.num_machines && !fits_somewhere; ++i) {
      fits_somewhere = inst.Resource(i, j) <= inst.capacity[i];
    }
    if (!fits_somewhere) {
      add(ValidationIssue::Kind::kUnassignableJob,
          "unassignable job " + std::to_string(j) +
              ": its resource exceeds every machine capacity");
    }
  }
  return report;
}

}  // namespace gapcg
