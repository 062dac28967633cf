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

#ifndef NVPOL_CSV_HPP
#define NVPOL_CSV_HPP

#include <array>
#include <ostream>
#include <string>
#include <vector>

// Deterministic text output.  All numbers are rendered with %.9g so that
// a fixed configuration always produces byte-identical files.

namespace nvpol {

// Shortest fixed-precision rendering (9 significant digits).
std::string format_g9(double v);

// Comment lines (written verbatim, callers include the leading '#'),
// a header row, then one CSV row per entry.
void write_csv(std::ostream& os, const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// gnuplot-style two-column series, blank-line separated, each preceded by
// a '# series <label>' comment.
struct PlotSeries {
  std::string label;
  std::vector<std::array<double, 2>> points;
};
void write_plot_data(std::ostream& os, const std::vector<std::string>& comment_lines,
                     const std::vector<PlotSeries>& series);

}  // namespace nvpol

#endif  // NVPOL_CSV_HPP
