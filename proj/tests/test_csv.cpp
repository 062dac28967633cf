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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include "nvpol/csv.hpp"

using namespace nvpol;

TEST_CASE("format_g9: compact, stable rendering of doubles") {
  CHECK(format_g9(0.0) == "0");
  CHECK(format_g9(22.0) == "22");
  CHECK(format_g9(50.45) == "50.45");
  CHECK(format_g9(-0.00202838702) == "-0.00202838702");
  CHECK(format_g9(1e-9) == "1e-09");
  CHECK(format_g9(1.25e300) == "1.25e+300");

  // Nine significant digits survive a parse round trip well within the
  // tolerance the outputs are consumed at.
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng) * std::pow(10.0, (k % 13) - 6);
    const double back = std::strtod(format_g9(x).c_str(), nullptr);
    CHECK(std::abs(back - x) <= 1e-8 * std::abs(x));
  }
}

TEST_CASE("write_csv: comments, header and g9-formatted rows") {
  std::ostringstream os;
  write_csv(os, {"# a comment", "# another"}, {"x", "y", "z"},
            {{1.0, 2.5, -3.0}, {4.0, 5.0, 6.0e-9}});
  CHECK(os.str() ==
        "# a comment\n"
        "# another\n"
        "x,y,z\n"
        "1,2.5,-3\n"
        "4,5,6e-09\n");
}

TEST_CASE("write_csv: no comments, single column") {
  std::ostringstream os;
  write_csv(os, {}, {"only"}, {{7.125}});
  CHECK(os.str() == "only\n7.125\n");
}

TEST_CASE("write_plot_data: labeled blocks separated by blank lines") {
  PlotSeries a{"rise", {{0.0, 0.0}, {1.0, 0.5}}};
  PlotSeries b{"fall", {{0.0, 1.0}, {1.0, 0.25}}};
  std::ostringstream os;
  write_plot_data(os, {"# head"}, {a, b});
  CHECK(os.str() ==
        "# head\n"
        "# series rise\n"
        "0 0\n"
        "1 0.5\n"
        "\n"
        "# series fall\n"
        "0 1\n"
        "1 0.25\n");
}
