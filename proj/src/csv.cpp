// Copyright 2026 The nvpol Authors
//
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

#include "nvpol/csv.hpp"

#include <cstdio>

namespace nvpol {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  for (const std::string& line : comment_lines) os << line << '\n';
  for (size_t c = 0; c < columns.size(); ++c) {
    os << columns[c] << (c + 1 < columns.size() ? "," : "");
  }
  os << '\n';
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      os << format_g9(row[c]) << (c + 1 < row.size() ? "," : "");
    }
    os << '\n';
  }
}

void write_plot_data(std::ostream& os, const std::vector<std::string>& comment_lines,
                     const std::vector<PlotSeries>& series) {
  for (const std::string& line : comment_lines) os << line << '\n';
  for (size_t s = 0; s < series.size(); ++s) {
    if (s > 0) os << '\n';
    os << "# series " << series[s].label << '\n';
    for (const auto& pt : series[s].points) {
      os << format_g9(pt[0]) << ' ' << format_g9(pt[1]) << '\n';
    }
  }
}

}  // namespace nvpol
