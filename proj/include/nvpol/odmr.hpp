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

#ifndef NVPOL_ODMR_HPP
#define NVPOL_ODMR_HPP

#include <array>

#include "nvpol/hamiltonian.hpp"

// Ground-state ODMR model for aligning the magnetic field to one NV
// crystallographic axis: transition frequencies versus field angle for
// all four <111> defect orientations, the line-collapse alignment test,
// and angular sensitivities.

namespace nvpol {

// The four NV symmetry axes as unit vectors in the crystal frame.
struct CrystalFrame {
  std::array<RealVector3, 4> nv_axes;

  // The (1,1,1) family: (1,1,1), (-1,1,1), (1,-1,1), (1,1,-1), normalized.
  static CrystalFrame diamond();

  // Throws DomainError unless every axis has unit norm within 1e-12.
  void validate() const;
};

struct TransitionPair {
  double f_minus_MHz = 0.0;
  double f_plus_MHz = 0.0;
};

// Ground-state transition frequencies at field magnitude b_mag_mT tilted
// by theta_rad from the defect axis: diagonalizes
// d_gs*Sz^2 + gamma_nv*B*(cos(theta) Sz + sin(theta) Sx), identifies the
// m_s = 0-like level (largest |<0|psi>|^2), and returns the two
// transition frequencies out of it, ascending.  theta must lie in
// [0, pi].
TransitionPair transition_frequencies(double b_mag_mT, double theta_rad,
                                      const SpinSystemParams& p);

// Line-collapse figure of merit for a candidate field direction: the
// angle to each axis (folded, since +-n produce the same spin-1
// spectrum), transition pairs per axis, and the largest f_minus
// difference among the three axes that are not the best-aligned one.
// Aligned field -> the three off-axis lines coincide and spread ~ 0.
struct AlignmentSpread {
  double spread_MHz = 0.0;
  std::array<TransitionPair, 4> per_axis;  // in nv_axes order
  std::array<double, 4> theta_rad{};       // in nv_axes order
  int aligned_axis = 0;                    // index of the smallest angle
};
AlignmentSpread alignment_spread(const FieldVector& b, const CrystalFrame& cf,
                                 const SpinSystemParams& p);

// d f / d theta of both transitions at theta0, by central finite
// difference with a 0.01 degree step, reported in MHz per degree.
struct SensitivityPair {
  double df_minus_MHz_per_deg = 0.0;
  double df_plus_MHz_per_deg = 0.0;
};
SensitivityPair angular_sensitivity(double b_mag_mT, double theta0_rad,
                                    const SpinSystemParams& p);

}  // namespace nvpol

#endif  // NVPOL_ODMR_HPP
