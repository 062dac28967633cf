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

#ifndef NVPOL_HAMILTONIAN_HPP
#define NVPOL_HAMILTONIAN_HPP

#include <filesystem>
#include <vector>

#include "nvpol/spin_core.hpp"

// Spin Hamiltonian of a single NV- electron spin (S = 1) coupled to one
// 13C nuclear spin (I = 1/2).
//
// The joint basis is |m_s> (x) |m_I|> with electron states ordered
// m_s = +1, 0, -1 and nuclear states ordered up, down, i.e. index
// 2*e + n for e in {0:+1, 1:0, 2:-1} and n in {0:up, 1:down}:
//
//   0:|+1,up>  1:|+1,dn>  2:|0,up>  3:|0,dn>  4:|-1,up>  5:|-1,dn>
//
// Energies are in MHz, fields in mT (gyromagnetic ratios are stored per
// tesla and converted internally).

namespace nvpol {

// Zero-field splittings and gyromagnetic ratios.  The defaults are the
// textbook NV- values; the optically active level anti-crossing this
// library cares about lives in the excited-state branch (d_es).
struct SpinSystemParams {
  double d_es_MHz = 1420.0;            // excited-state zero-field splitting
  double d_gs_MHz = 2870.0;            // ground-state zero-field splitting
  double gamma_nv_MHz_per_T = 2.8e4;    // electron gyromagnetic ratio
  double gamma_c13_MHz_per_T = 10.0;   // 13C gyromagnetic ratio

  // Throws DomainError unless all four entries are strictly positive.
  void validate() const;
};

// z-y-z Euler angles (radians) of an active rotation
// R = Rz(alpha) * Ry(beta) * Rz(gamma).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

RealMatrix3 euler_rotation(const EulerAngles& e);

// Hyperfine coupling tensor in MHz, stored in its reference frame together
// with the Euler angles that carry it into the lab frame.  The matrix must
// be symmetric within 1e-9 (relative to its largest entry).
struct HyperfineTensor {
  RealMatrix3 a_MHz = RealMatrix3::Zero();
  EulerAngles euler;

  // Throws DomainError if the matrix is not symmetric within tolerance.
  void validate() const;

  // Coupling tensor of the strongly coupled third-shell 13C site used as
  // the default throughout the library.
  static HyperfineTensor reference();

  // Reads nine whitespace-separated numbers (row-major, MHz) from a text
  // file; lines starting with '#' are skipped.  Euler angles are zero.
  static HyperfineTensor from_file(const std::filesystem::path& path);
};

// Rotated lab-frame tensor R * A * R^T.
RealMatrix3 rotate_tensor(const HyperfineTensor& t);

// Static magnetic field, components in mT.
struct FieldVector {
  double bx_mT = 0.0;
  double by_mT = 0.0;
  double bz_mT = 0.0;

  static FieldVector axial(double bz_mT) { return {0.0, 0.0, bz_mT}; }
  RealVector3 as_vector() const { return {bx_mT, by_mT, bz_mT}; }
  double magnitude_mT() const { return as_vector().norm(); }
};

// Full 6x6 excited-state Hamiltonian in MHz:
//   d_es * Sz^2 (x) 1  +  gamma_nv B.S (x) 1  +  gamma_c13 1 (x) B.I
//   + sum_ab A_ab S_a (x) I_b
// with A the lab-frame (rotated) hyperfine tensor.
ComplexMatrix build_hamiltonian(const SpinSystemParams& params, const HyperfineTensor& tensor,
                                const FieldVector& field);

// Axial field (mT) at which the m_s = 0 and m_s = -1 excited-state levels
// cross: d_es / gamma_nv.
double lac_field_mT(const SpinSystemParams& params);

// Ascending eigenvalues (MHz) of the Hamiltonian at each field of an axial
// field scan; one 6-entry vector per grid point.
std::vector<RealVector> level_diagram(const SpinSystemParams& params,
                                      const HyperfineTensor& tensor,
                                      const std::vector<double>& field_grid_mT);

}  // namespace nvpol

#endif  // NVPOL_HAMILTONIAN_HPP
