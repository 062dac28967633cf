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

#include "nvpol/odmr.hpp"

#include <algorithm>
#include <cmath>

#include "nvpol/errors.hpp"
#include "nvpol/units.hpp"

namespace nvpol {

namespace {

// Core evaluation without the [0, pi] range guard; the spin-1 spectrum is
// even in theta, so internal callers may step slightly outside.
TransitionPair transitions_at(double b_mag_mT, double theta_rad, const SpinSystemParams& p) {
  const SpinOperators s = spin_operators(1.0);
  const double b_T = b_mag_mT * units::T_per_mT;
  const ComplexMatrix h =
      p.d_gs_MHz * s.sz * s.sz +
      p.gamma_nv_MHz_per_T * b_T * (std::cos(theta_rad) * s.sz + std::sin(theta_rad) * s.sx);
  const HermitianEigen eig = eig_hermitian(h);

  // The optically bright reference level is the one with the largest
  // m_s = 0 weight (basis row 1), not a fixed eigenvalue index: at large
  // tilt the energy ordering changes but the label must not.
  int zero_like = 0;
  double best = -1.0;
  for (int k = 0; k < 3; ++k) {
    const double w = std::norm(eig.eigenvectors(1, k));
    if (w > best) {
      best = w;
      zero_like = k;
    }
  }
  double f[2];
  int idx = 0;
  for (int k = 0; k < 3; ++k) {
    if (k != zero_like) f[idx++] = eig.eigenvalues(k) - eig.eigenvalues(zero_like);
  }
  if (f[0] > f[1]) std::swap(f[0], f[1]);
  return {f[0], f[1]};
}

}  // namespace

CrystalFrame CrystalFrame::diamond() {
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CrystalFrame cf;
  cf.nv_axes[0] = RealVector3(1, 1, 1) * inv_sqrt3;
  cf.nv_axes[1] = RealVector3(-1, 1, 1) * inv_sqrt3;
  cf.nv_axes[2] = RealVector3(1, -1, 1) * inv_sqrt3;
  cf.nv_axes[3] = RealVector3(1, 1, -1) * inv_sqrt3;
  return cf;
}

void CrystalFrame::validate() const {
  for (const RealVector3& n : nv_axes) {
    if (std::abs(n.norm() - 1.0) > 1.0e-12) {
      throw DomainError("CrystalFrame: axes must be unit vectors");
    }
  }
}

TransitionPair transition_frequencies(double b_mag_mT, double theta_rad,
                                      const SpinSystemParams& p) {
  p.validate();
  if (b_mag_mT < 0.0) throw DomainError("transition_frequencies: field must be >= 0");
  if (theta_rad < 0.0 || theta_rad > units::pi) {
    throw DomainError("transition_frequencies: theta must lie in [0, pi]");
  }
  return transitions_at(b_mag_mT, theta_rad, p);
}

AlignmentSpread alignment_spread(const FieldVector& b, const CrystalFrame& cf,
                                 const SpinSystemParams& p) {
  p.validate();
  cf.validate();
  const double b_mag = b.magnitude_mT();
  if (!(b_mag > 0.0)) throw DomainError("alignment_spread: field magnitude must be > 0");
  const RealVector3 b_hat = b.as_vector() / b_mag;

  AlignmentSpread out;
  for (int i = 0; i < 4; ++i) {
    // Fold the angle: n and -n are the same defect axis, and the spin-1
    // Zeeman spectrum cannot tell them apart.
    const double c = std::clamp(std::abs(b_hat.dot(cf.nv_axes[i])), 0.0, 1.0);
    out.theta_rad[i] = std::acos(c);
    out.per_axis[i] = transitions_at(b_mag, out.theta_rad[i], p);
  }

  out.aligned_axis = 0;
  for (int i = 1; i < 4; ++i) {
    if (out.theta_rad[i] < out.theta_rad[out.aligned_axis]) out.aligned_axis = i;
  }
  double spread = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (i == out.aligned_axis) continue;
    for (int j = i + 1; j < 4; ++j) {
      if (j == out.aligned_axis) continue;
      spread = std::max(spread,
                        std::abs(out.per_axis[i].f_minus_MHz - out.per_axis[j].f_minus_MHz));
    }
  }
  out.spread_MHz = spread;
  return out;
}

SensitivityPair angular_sensitivity(double b_mag_mT, double theta0_rad,
                                    const SpinSystemParams& p) {
  p.validate();
  if (!(b_mag_mT > 0.0)) throw DomainError("angular_sensitivity: field must be > 0");
  const double h_rad = 0.01 * units::rad_per_deg;
  const TransitionPair hi = transitions_at(b_mag_mT, theta0_rad + h_rad, p);
  const TransitionPair lo = transitions_at(b_mag_mT, theta0_rad - h_rad, p);
  SensitivityPair out;
  out.df_minus_MHz_per_deg = (hi.f_minus_MHz - lo.f_minus_MHz) / 0.02;
  out.df_plus_MHz_per_deg = (hi.f_plus_MHz - lo.f_plus_MHz) / 0.02;
  return out;
}

}  // namespace nvpol
