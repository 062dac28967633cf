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

#ifndef NVPOL_ESTIMATES_HPP
#define NVPOL_ESTIMATES_HPP

// Closed-form back-of-the-envelope estimators around hyperpolarized
// diamond samples: NMR signal enhancement with error propagation, average
// NV-NV spacing, nuclear spin-diffusion length, and the polarized-13C per
// NV head count.

namespace nvpol {

// Two NMR measurements to compare: an optically pumped sample against a
// thermal reference.  Signals are integrated intensities in any common
// unit; sigmas are their absolute uncertainties; nt counts averaged
// transients; masses in mg.
struct EnhancementInputs {
  double s_op = 1.0;
  double s_op_sigma = 0.0;
  double s_ref = 1.0;
  double s_ref_sigma = 0.0;
  double nt_op = 1.0;
  double nt_ref = 1.0;
  double m_op_mg = 1.0;
  double m_ref_mg = 1.0;

  // Throws DomainError unless signals/transients/masses are > 0 and
  // uncertainties >= 0.
  void validate() const;
};

struct Enhancement {
  double eta = 0.0;
  double sigma = 0.0;
};

// Mass- and transient-normalized signal ratio
//   eta = (s_op * sqrt(nt_ref) * m_ref) / (s_ref * sqrt(nt_op) * m_op),
// with the uncertainty propagated to first order from the two signal
// uncertainties only: sigma/eta = hypot(s_op_sigma/s_op, s_ref_sigma/s_ref).
Enhancement enhancement_factor(const EnhancementInputs& in);

// Bulk material constants of NV-doped diamond with the usual defaults.
struct MaterialParams {
  double c_nv = 10.0e-6;              // NV concentration per carbon atom
  double aligned_fraction = 0.25;     // share of NVs on the field-aligned axis
  double c_13c = 0.011;               // 13C natural abundance
  double rho_g_cm3 = 3.52;            // diamond density
  double molar_mass_g_mol = 12.01;    // carbon molar mass
  double d_coeff_cm2_s = 6.7e-15;     // nuclear spin-diffusion coefficient

  // Throws DomainError unless fractions are in (0, 1] and the physical
  // constants are strictly positive.
  void validate() const;
};

// Mean spacing (N_A * rho / M * c_nv * aligned_fraction)^(-1/3) between
// the NV centers that participate, in nm.  Set aligned_fraction = 1 for
// the raw all-orientations spacing.
double avg_defect_distance_nm(const MaterialParams& mp);

// Spin-diffusion length sqrt(D * tau) in nm from D in cm^2/s and tau in s.
double diffusion_length_nm(double d_coeff_cm2_s, double tau_s);

// Number of polarized 13C nuclei per participating NV center:
// (c_13c * p_13c) / (aligned_fraction * c_nv), with p_13c the achieved
// 13C polarization.
double polarized_ratio(double c_13c, double p_13c, double c_nv, double aligned_fraction);

}  // namespace nvpol

#endif  // NVPOL_ESTIMATES_HPP
