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

#include "gapcg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "gapcg/report.hpp"

namespace gapcg {
namespace {

// Zero times happen on tiny instances; keep the logarithm finite.
constexpr double kGeoFloor = 1e-6;

}  // namespace

RunReport RunMethod(const GapInstance& instance, const std::string& method,
                    const CgConfig& base) {
  if (method == "lr") return RunLr(instance, base);
  const std::optional<PricingMethod> parsed = ParsePricingMethod(method);
  if (!parsed) throw std::invalid_argument("unknown method: " + method);
  CgConfig cfg = base;
  cfg.method = *parsed;
  return Run(instance, cfg);
}

std::vector<BenchRow> RunBench(std::span<const GapInstance> instances,
                               std::span<const std::string> methods,
                               std::span<const uint64_t> seeds, const CgConfig& base,
                               int workers) {
  std::vector<BenchRow> rows;
  for (const GapInstance& inst : instances) {
    for (const std::string& m : methods) {
      for (uint64_t s : seeds) rows.push_back({inst.name, m, s, std::nullopt, ""});
    }
  }
  const size_t per_instance = methods.size() * seeds.size();
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k = next++; k < rows.size(); k = next++) {
      BenchRow& row = rows[k];
      CgConfig cfg = base;
      cfg.seed = row.seed;
      try {
        row.report = RunMethod(instances[k / per_instance], row.method, cfg);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return rows;
}

double GeometricMean(std::span<const double> values) {
  if (values.empty()) return std::nan("");
  double acc = 0.0;
  for (double v : values) acc += std::log(std::max(v, kGeoFloor));
  return std::exp(acc / static_cast<double>(values.size()));
}

void WriteBenchTsv(std::span<const BenchRow> rows, std::ostream& out) {
  out << "instance\tmethod\tseed\tstatus\titerations\trmp_time\tpricing_time"
         "\ttotal_time\tpivots\tcolumns\tpivots_per_col\tintegral\tlb_int\tub"
         "\tgap_pct\terror\n";
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunReport*>> by_method;
  for (const BenchRow& row : rows) {
    if (!by_method.contains(row.method)) order.push_back(row.method);
    auto& list = by_method[row.method];
    out << row.instance << '\t' << row.method << '\t' << row.seed << '\t';
    if (!row.report) {
      // Tabs or newlines in an exception message would break the record.
      std::string msg = row.error;
      std::replace_if(msg.begin(), msg.end(),
                      [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
      out << "error\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t" << msg << '\n';
      continue;
    }
    const RunReport& r = *row.report;
    list.push_back(&r);
    out << ToString(r.status) << '\t' << r.iterations << '\t'
        << FormatNumber(r.rmp_time) << '\t' << FormatNumber(r.pricing_time) << '\t'
        << FormatNumber(r.total_time) << '\t' << r.total_pivots << '\t'
        << r.columns_generated << '\t' << FormatCell(r.PivotsPerColumn()) << '\t'
        << (r.integral ? 1 : 0) << '\t' << FormatCell(r.bounds.lb_int) << '\t'
        << FormatCell(r.bounds.ub) << '\t' << FormatCell(r.integer_gap_percent)
        << "\t-\n";
  }
  // Summary: geometric means, integral as a percentage, gap as a plain mean.
  for (const std::string& m : order) {
    const auto& list = by_method[m];
    out << "geomean\t" << m << "\t-\tn=" << list.size() << '\t';
    if (list.empty()) {
      out << "-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\tno successful runs\n";
      continue;
    }
    auto geo = [&list](auto field) {
      std::vector<double> v;
      for (const RunReport* r : list) {
        if (auto x = field(*r)) v.push_back(*x);
      }
      return v.empty() ? std::string("-") : FormatNumber(GeometricMean(v));
    };
    int integral = 0;
    double gap_sum = 0.0;
    int gap_count = 0;
    for (const RunReport* r : list) {
      integral += r->integral ? 1 : 0;
      if (r->integer_gap_percent) {
        gap_sum += *r->integer_gap_percent;
        ++gap_count;
      }
    }
    using Opt = std::optional<double>;
    out << geo([](const RunReport& r) -> Opt { return r.iterations; }) << '\t'
        << geo([](const RunReport& r) -> Opt { return r.rmp_time; }) << '\t'
        << geo([](const RunReport& r) -> Opt { return r.pricing_time; }) << '\t'
        << geo([](const RunReport& r) -> Opt { return r.total_time; }) << '\t'
        << geo([](const RunReport& r) -> Opt {
             return static_cast<double>(r.total_pivots);
           })
        << '\t'
        << geo([](const RunReport& r) -> Opt {
             return static_cast<double>(r.columns_generated);
           })
        << '\t' << geo([](const RunReport& r) { return r.PivotsPerColumn(); })
        << '\t' << FormatNumber(100.0 * integral / static_cast<double>(list.size()))
        << "\t-\t-\t"
        << (gap_count ? FormatNumber(gap_sum / gap_count) : std::string("-"))
        << "\t-\n";
  }
}

SweepSelection SelectThreshold(std::span<const int> taus,
                               std::span<const double> times, int window,
                               double relative_tie, double absolute_tie) {
  if (taus.empty() || taus.size() != times.size()) {
    throw std::invalid_argument("sweep: taus and times must be non-empty and aligned");
  }
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("sweep: smoothing window must be odd and positive");
  }
  for (size_t k = 1; k < taus.size(); ++k) {
    if (taus[k] <= taus[k - 1]) {
      throw std::invalid_argument("sweep: tau values must be strictly increasing");
    }
  }
  const size_t n = times.size();
  const size_t half = static_cast<size_t>(window / 2);
  SweepSelection sel;
  sel.smoothed.resize(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t lo = k >= half ? k - half : 0;
    const size_t hi = std::min(n - 1, k + half);
    sel.smoothed[k] = GeometricMean(times.subspan(lo, hi - lo + 1));
  }
  const double best = *std::min_element(sel.smoothed.begin(), sel.smoothed.end());
  for (size_t k = 0; k < n; ++k) {
    const double s = sel.smoothed[k];
    if (s <= best * (1.0 + relative_tie) || s <= best + absolute_tie) {
      sel.index = k;
      sel.tau = taus[k];
      break;
    }
  }
  return sel;
}

SweepResult RunSweep(const SweepSpec& spec, const SweepTimer& timer) {
  if (spec.tau_values.empty()) throw std::invalid_argument("sweep: no tau values");
  if (spec.replications < 1) throw std::invalid_argument("sweep: replications < 1");
  SweepResult result;
  result.taus = spec.tau_values;
  for (int tau : spec.tau_values) {
    std::vector<double> reps;
    for (int r = 0; r < spec.replications; ++r) reps.push_back(timer(tau, r));
    result.raw.push_back(GeometricMean(reps));
    result.times.push_back(std::move(reps));
  }
  result.selection = SelectThreshold(result.taus, result.raw, spec.smoothing_window,
                                     spec.relative_tie, spec.absolute_tie);
  return result;
}

SweepResult RunSweep(const GapInstance& instance, const std::string& method,
                     const SweepSpec& spec, const CgConfig& base) {
  for (int tau : spec.tau_values) {
    if (tau < 1) throw std::invalid_argument("sweep: tau values must be >= 1");
  }
  return RunSweep(spec, [&](int tau, int rep) {
    CgConfig cfg = base;
    cfg.seed = base.seed + static_cast<uint64_t>(rep);
    cfg.time_limit = std::chrono::duration<double>(spec.time_limit);
    cfg.age_policy_override = AgePolicy{0.0, 0.0, static_cast<double>(tau)};
    const RunReport r = RunMethod(instance, method, cfg);
    if (r.status == RunStatus::kTimeLimit) return spec.time_limit;
    return std::min(r.total_time, spec.time_limit);
  });
}

void WriteSweepTsv(const SweepResult& result, std::ostream& out) {
  out << "tau";
  const size_t reps = result.times.empty() ? 0 : result.times.front().size();
  for (size_t r = 0; r < reps; ++r) out << "\ttime_" << r;
  out << "\traw_geomean\tsmoothed\tselected\n";
  for (size_t k = 0; k < result.taus.size(); ++k) {
    out << result.taus[k];
    for (double t : result.times[k]) out << '\t' << FormatNumber(t);
    out << '\t' << FormatNumber(result.raw[k]) << '\t'
        << FormatNumber(result.selection.smoothed[k]) << '\t'
        << (k == result.selection.index ? 1 : 0) << '\n';
  }
  out << "# selected_tau=" << result.selection.tau << '\n';
}

}  // namespace gapcg
