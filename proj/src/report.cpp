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

#include "gapcg/report.hpp"

#include <cmath>
#include <cstdio>

namespace gapcg {

std::string FormatNumber(double v) {
  if (!std::isfinite(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string FormatCell(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : "-";
}

std::string FormatCell(const std::optional<int64_t>& v) {
  return v ? std::to_string(*v) : "-";
}

void WriteRunTsv(const RunReport& report, std::ostream& out) {
  out << "iteration\tphase\trmp_objective\tlb_raw\tlb_int\tub\trc_sum"
         "\tcolumns_added\tcolumns_removed\tpivots\trmp_time\tpricing_time"
         "\talpha_min\talpha_avg\talpha_max\n";
  for (const IterationRow& r : report.rows) {
    out << r.iteration << '\t' << r.phase << '\t' << FormatCell(r.rmp_objective)
        << '\t' << FormatCell(r.lb_raw) << '\t' << FormatCell(r.lb_int) << '\t'
        << FormatCell(r.ub) << '\t' << FormatCell(r.rc_sum) << '\t'
        << r.columns_added << '\t' << r.columns_removed << '\t' << r.pivots << '\t'
        << FormatNumber(r.rmp_time) << '\t' << FormatNumber(r.pricing_time) << '\t'
        << FormatCell(r.alpha_min) << '\t' << FormatCell(r.alpha_avg) << '\t'
        << FormatCell(r.alpha_max) << '\n';
  }
  out << SummaryLine(report) << '\n';
}

std::string SummaryLine(const RunReport& r) {
  std::string s = "# summary";
  const auto add = [&s](const char* key, const std::string& value) {
    s += '\t';
    s += key;
    s += '=';
    s += value;
  };
  add("instance", r.instance_name);
  add("method", r.method);
  add("seed", std::to_string(r.seed));
  add("status", std::string(ToString(r.status)));
  add("phase", std::to_string(r.final_phase));
  add("lb_int", FormatCell(r.bounds.lb_int));
  add("ub", FormatCell(r.bounds.ub));
  add("rmp_objective", FormatCell(r.final_rmp_objective));
  add("iterations", std::to_string(r.iterations));
  add("rmp_time", FormatNumber(r.rmp_time));
  add("pricing_time", FormatNumber(r.pricing_time));
  add("total_time", FormatNumber(r.total_time));
  add("pivots", std::to_string(r.total_pivots));
  add("columns", std::to_string(r.columns_generated));
  add("integral", r.integral ? "1" : "0");
  add("gap_pct", FormatCell(r.integer_gap_percent));
  return s;
}

}  // namespace gapcg
