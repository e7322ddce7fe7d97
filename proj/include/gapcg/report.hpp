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

// Tab-separated output. Every file starts with a header row; numbers use
// "%.10g" and a missing value is a single "-".

#ifndef GAPCG_REPORT_HPP_
#define GAPCG_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "gapcg/cg_driver.hpp"

namespace gapcg {

std::string FormatNumber(double v);
std::string FormatCell(const std::optional<double>& v);
std::string FormatCell(const std::optional<int64_t>& v);

// Per-iteration rows, then one "# summary" line.
void WriteRunTsv(const RunReport& report, std::ostream& out);
std::string SummaryLine(const RunReport& report);

}  // namespace gapcg

#endif  // GAPCG_REPORT_HPP_
