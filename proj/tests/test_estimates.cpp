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

#include "nvpol/errors.hpp"
#include "nvpol/estimates.hpp"

using namespace nvpol;

TEST_CASE("avg_defect_distance_nm: reference concentrations") {
  MaterialParams p;  // 10 ppm NV, 1/4 aligned, diamond density

  MaterialParams all = p;
  all.aligned_fraction = 1.0;
  CHECK(avg_defect_distance_nm(all) == doctest::Approx(8.28).epsilon(0.003));
  CHECK(avg_defect_distance_nm(p) == doctest::Approx(13.1).epsilon(0.008));

  // n^(-1/3) scaling: 8x the concentration halves the distance.
  MaterialParams dense = all;
  dense.c_nv *= 8.0;
  CHECK(avg_defect_distance_nm(dense) ==
        doctest::Approx(0.5 * avg_defect_distance_nm(all)).epsilon(1e-12));

  // Independent oracle: direct number-density evaluation in SI units.
  const double n_per_cm3 = 6.02214076e23 * 3.52 / 12.01 * 10e-6;  // all axes
  const double expect_nm = std::pow(n_per_cm3, -1.0 / 3.0) * 1e7;
  CHECK(avg_defect_distance_nm(all) == doctest::Approx(expect_nm).epsilon(1e-12));
}

TEST_CASE("diffusion_length_nm: sqrt(D tau) with unit conversion") {
  CHECK(diffusion_length_nm(6.7e-15, 10.0) == doctest::Approx(2.588).epsilon(2e-3));
  // Quadrupling the time doubles the length.
  CHECK(diffusion_length_nm(6.7e-15, 40.0) ==
        doctest::Approx(2.0 * diffusion_length_nm(6.7e-15, 10.0)).epsilon(1e-12));
  // 1 cm^2/s for 1 s is 1 cm, i.e. 1e7 nm.
  CHECK(diffusion_length_nm(1.0, 1.0) == doctest::Approx(1e7).epsilon(1e-12));
  CHECK_THROWS_AS(diffusion_length_nm(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(diffusion_length_nm(1.0, -1.0), DomainError);
}

TEST_CASE("polarized_ratio: polarized-13C to aligned-NV spin ratio") {
  CHECK(polarized_ratio(0.011, 0.005, 10e-6, 0.25) ==
        doctest::Approx(22.0).epsilon(2e-3));
  // Linear in the polarization level.
  CHECK(polarized_ratio(0.011, 0.010, 10e-6, 0.25) ==
        doctest::Approx(44.0).epsilon(2e-3));
  CHECK_THROWS_AS(polarized_ratio(0.011, 0.005, 0.0, 0.25), DomainError);
}

TEST_CASE("MaterialParams::validate") {
  MaterialParams p;
  CHECK_NOTHROW(p.validate());
  p.c_nv = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = MaterialParams{};
  p.aligned_fraction = 1.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = MaterialParams{};
  p.rho_g_cm3 = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = MaterialParams{};
  p.d_coeff_cm2_s = -1e-15;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("enhancement_factor: identity, inversion and quadrature errors") {
  EnhancementInputs in;  // all ones
  const Enhancement unity = enhancement_factor(in);
  CHECK(unity.eta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unity.sigma == 0.0);

  // Swapping the roles of the two measurements inverts the factor.
  in.s_op = 3.7;
  in.s_ref = 1.4;
  in.nt_op = 4.0;
  in.nt_ref = 25.0;
  in.m_op_mg = 12.0;
  in.m_ref_mg = 310.0;
  const Enhancement fwd = enhancement_factor(in);
  EnhancementInputs swapped;
  swapped.s_op = in.s_ref;
  swapped.s_ref = in.s_op;
  swapped.nt_op = in.nt_ref;
  swapped.nt_ref = in.nt_op;
  swapped.m_op_mg = in.m_ref_mg;
  swapped.m_ref_mg = in.m_op_mg;
  const Enhancement rev = enhancement_factor(swapped);
  CHECK(std::abs(fwd.eta * rev.eta - 1.0) < 1e-12);

  // Equal signals, masses 800/16 mg, transients 10/1.
  EnhancementInputs ref;
  ref.s_op = 2.2;
  ref.s_ref = 2.2;
  ref.nt_op = 1.0;
  ref.nt_ref = 10.0;
  ref.m_op_mg = 16.0;
  ref.m_ref_mg = 800.0;
  const Enhancement golden = enhancement_factor(ref);
  CHECK(golden.eta == doctest::Approx(std::sqrt(10.0) * 50.0).epsilon(1e-12));
  CHECK(std::abs(golden.eta - 158.11) < 0.01);

  // 10% relative error on both signals adds in quadrature to ~14.1%.
  ref.s_op_sigma = 0.22;
  ref.s_ref_sigma = 0.22;
  const Enhancement noisy = enhancement_factor(ref);
  CHECK(noisy.sigma / noisy.eta ==
        doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("enhancement_factor: input validation") {
  EnhancementInputs in;
  in.s_ref = 0.0;
  CHECK_THROWS_AS(enhancement_factor(in), DomainError);
  in = EnhancementInputs{};
  in.nt_op = -1.0;
  CHECK_THROWS_AS(enhancement_factor(in), DomainError);
  in = EnhancementInputs{};
  in.m_ref_mg = 0.0;
  CHECK_THROWS_AS(enhancement_factor(in), DomainError);
  in = EnhancementInputs{};
  in.s_op_sigma = -0.1;
  CHECK_THROWS_AS(enhancement_factor(in), DomainError);
}
