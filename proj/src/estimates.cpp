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

#include "nvpol/estimates.hpp"

#include <cmath>

#include "nvpol/errors.hpp"
#include "nvpol/units.hpp"

namespace nvpol {

namespace {
constexpr double kAvogadro = 6.02214076e23;  // 1/mol
}

void EnhancementInputs::validate() const {
  if (!(s_op > 0.0)) throw DomainError("EnhancementInputs: s_op must be > 0");
  if (!(s_ref > 0.0)) throw DomainError("EnhancementInputs: s_ref must be > 0");
  if (s_op_sigma < 0.0 || s_ref_sigma < 0.0) {
    throw DomainError("EnhancementInputs: signal uncertainties must be >= 0");
  }
  if (!(nt_op > 0.0) || !(nt_ref > 0.0)) {
    throw DomainError("EnhancementInputs: transient counts must be > 0");
  }
  if (!(m_op_mg > 0.0) || !(m_ref_mg > 0.0)) {
    throw DomainError("EnhancementInputs: masses must be > 0");
  }
}

Enhancement enhancement_factor(const EnhancementInputs& in) {
  in.validate();
  Enhancement out;
  out.eta = in.s_op * std::sqrt(in.nt_ref) * in.m_ref_mg /
            (in.s_ref * std::sqrt(in.nt_op) * in.m_op_mg);
  // Only the signal integrals carry uncertainty; masses and transient
  // counts are exact bookkeeping.
  out.sigma = out.eta * std::hypot(in.s_op_sigma / in.s_op, in.s_ref_sigma / in.s_ref);
  return out;
}

void MaterialParams::validate() const {
  if (!(c_nv > 0.0) || c_nv > 1.0) throw DomainError("MaterialParams: c_nv must be in (0, 1]");
  if (!(aligned_fraction > 0.0) || aligned_fraction > 1.0) {
    throw DomainError("MaterialParams: aligned_fraction must be in (0, 1]");
  }
  if (!(c_13c > 0.0) || c_13c > 1.0) throw DomainError("MaterialParams: c_13c must be in (0, 1]");
  if (!(rho_g_cm3 > 0.0)) throw DomainError("MaterialParams: rho_g_cm3 must be > 0");
  if (!(molar_mass_g_mol > 0.0)) throw DomainError("MaterialParams: molar_mass_g_mol must be > 0");
  if (!(d_coeff_cm2_s >= 0.0)) throw DomainError("MaterialParams: d_coeff_cm2_s must be >= 0");
}

double avg_defect_distance_nm(const MaterialParams& mp) {
  mp.validate();
  // Number density of participating NVs per cm^3; spacing is its inverse
  // cube root.
  const double density =
      kAvogadro * mp.rho_g_cm3 / mp.molar_mass_g_mol * mp.c_nv * mp.aligned_fraction;
  return std::pow(density, -1.0 / 3.0) * units::nm_per_cm;
}

double diffusion_length_nm(double d_coeff_cm2_s, double tau_s) {
  if (d_coeff_cm2_s < 0.0) throw DomainError("diffusion_length_nm: D must be >= 0");
  if (tau_s < 0.0) throw DomainError("diffusion_length_nm: tau must be >= 0");
  return std::sqrt(d_coeff_cm2_s * tau_s) * units::nm_per_cm;
}

double polarized_ratio(double c_13c, double p_13c, double c_nv, double aligned_fraction) {
  if (!(c_13c > 0.0)) throw DomainError("polarized_ratio: c_13c must be > 0");
  if (p_13c < 0.0 || p_13c > 1.0) throw DomainError("polarized_ratio: p_13c must be in [0, 1]");
  if (!(c_nv > 0.0)) throw DomainError("polarized_ratio: c_nv must be > 0");
  if (!(aligned_fraction > 0.0)) {
    throw DomainError("polarized_ratio: aligned_fraction must be > 0");
  }
  return c_13c * p_13c / (aligned_fraction * c_nv);
}

}  // namespace nvpol
