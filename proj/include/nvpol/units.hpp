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

#ifndef NVPOL_UNITS_HPP
#define NVPOL_UNITS_HPP

// Unit conventions used throughout the library.
//
// Internally every energy/rate is expressed in MHz and every time in
// microseconds, so MHz == 1/us and no 2*pi factors appear anywhere: the
// Hamiltonian enters the equation of motion as-is and decay rates are the
// inverse 1/e times of the populations they drive.  Magnetic fields are
// held in millitesla.  Conversions to SI (seconds, tesla) happen only at
// the user-facing boundaries (CLI flags, config files, CSV columns that
// say so in their name).

namespace nvpol::units {

inline constexpr double mT_per_T = 1.0e3;
inline constexpr double T_per_mT = 1.0e-3;
inline constexpr double us_per_s = 1.0e6;
inline constexpr double s_per_us = 1.0e-6;
inline constexpr double kHz_per_MHz = 1.0e3;
inline constexpr double MHz_per_kHz = 1.0e-3;
inline constexpr double nm_per_cm = 1.0e7;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double deg_per_rad = 180.0 / pi;
inline constexpr double rad_per_deg = pi / 180.0;

}  // namespace nvpol::units

#endif  // NVPOL_UNITS_HPP
