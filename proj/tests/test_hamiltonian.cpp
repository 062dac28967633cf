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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "nvpol/errors.hpp"
#include "nvpol/hamiltonian.hpp"
#include "test_helpers.hpp"

using namespace nvpol;
using nvpol_test::max_abs;

TEST_CASE("euler_rotation: identity, axis actions and orthogonality") {
  CHECK((euler_rotation({0, 0, 0}) - RealMatrix3::Identity()).cwiseAbs().maxCoeff() <
        1e-15);

  // Rz(pi/2) maps x onto y.
  const RealMatrix3 rz = euler_rotation({M_PI / 2, 0, 0});
  CHECK((rz * RealVector3::UnitX() - RealVector3::UnitY()).norm() < 1e-12);

  // Ry(pi/2) maps z onto x.
  const RealMatrix3 ry = euler_rotation({0, M_PI / 2, 0});
  CHECK((ry * RealVector3::UnitZ() - RealVector3::UnitX()).norm() < 1e-12);

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int trial = 0; trial < 5; ++trial) {
    const EulerAngles e{u(rng), u(rng), u(rng)};
    const RealMatrix3 r = euler_rotation(e);
    CHECK((r * r.transpose() - RealMatrix3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    // z-y-z composition: R(a, b, g) = Rz(a) Ry(b) Rz(g).
    const RealMatrix3 composed = euler_rotation({e.alpha, 0, 0}) *
                                 euler_rotation({0, e.beta, 0}) *
                                 euler_rotation({e.gamma, 0, 0});
    CHECK((r - composed).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hyperfine tensor: built-in reference values and symmetry checks") {
  const HyperfineTensor t = HyperfineTensor::reference();
  CHECK(t.a_MHz(0, 0) == 5.0);
  CHECK(t.a_MHz(0, 1) == -6.3);
  CHECK(t.a_MHz(0, 2) == -2.9);
  CHECK(t.a_MHz(1, 1) == 4.2);
  CHECK(t.a_MHz(1, 2) == -2.3);
  CHECK(t.a_MHz(2, 2) == 8.2);
  CHECK((t.a_MHz - t.a_MHz.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_NOTHROW(t.validate());

  HyperfineTensor bad = t;
  bad.a_MHz(0, 1) += 1e-3;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("rotate_tensor: orthogonal similarity preserves the spectrum") {
  HyperfineTensor t = HyperfineTensor::reference();
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const Eigen::SelfAdjointEigenSolver<RealMatrix3> base(t.a_MHz);
  for (int trial = 0; trial < 5; ++trial) {
    t.euler = {u(rng), std::abs(u(rng)), u(rng)};
    const RealMatrix3 lab = rotate_tensor(t);
    CHECK((lab - lab.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::SelfAdjointEigenSolver<RealMatrix3> rotated(lab);
    CHECK((rotated.eigenvalues() - base.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }

  // Hand-checked product for a quarter turn about y: rows/columns of A get
  // permuted with signs, A' = Ry A Ry^T.
  t.euler = {0, M_PI / 2, 0};
  const RealMatrix3 ry = euler_rotation(t.euler);
  CHECK((rotate_tensor(t) - ry * t.a_MHz * ry.transpose()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("hyperfine tensor file parsing") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "nvpol_tensor_test.txt";
  {
    std::ofstream out(path);
    out << "# strongly coupled site, MHz\n";
    out << "5 -6.3 -2.9\n";
    out << "-6.3 4.2 -2.3\n";
    out << "-2.9 -2.3 8.2\n";
  }
  const HyperfineTensor t = HyperfineTensor::from_file(path);
  CHECK((t.a_MHz - HyperfineTensor::reference().a_MHz).cwiseAbs().maxCoeff() == 0.0);

  {
    std::ofstream out(path);
    out << "1 2 3 4\n";  // too few numbers
  }
  CHECK_THROWS_AS(HyperfineTensor::from_file(path), DomainError);
  CHECK_THROWS_AS(HyperfineTensor::from_file(fs::path("/nonexistent/t.txt")),
                  DomainError);
  fs::remove(path);
}

TEST_CASE("build_hamiltonian: exact diagonal without hyperfine coupling") {
  SpinSystemParams p;
  HyperfineTensor zero;  // zero matrix, valid
  const double b_mT = 50.0;
  const ComplexMatrix h = build_hamiltonian(p, zero, FieldVector::axial(b_mT));
  REQUIRE(h.rows() == 6);

  const double ez = p.gamma_nv_MHz_per_T * 0.050;   // 1400
  const double nz = p.gamma_c13_MHz_per_T * 0.050;  // 0.5
  const std::vector<double> expected = {
      p.d_es_MHz + ez + nz / 2, p.d_es_MHz + ez - nz / 2,  // m_s = +1
      nz / 2,                   -nz / 2,                   // m_s = 0
      p.d_es_MHz - ez + nz / 2, p.d_es_MHz - ez - nz / 2,  // m_s = -1
  };
  for (int i = 0; i < 6; ++i) {
    CHECK(h(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(std::abs(h(i, i).imag()) < 1e-15);
  }
  CHECK(max_abs(h - ComplexMatrix(h.diagonal().asDiagonal()))  < 1e-15);

  // At zero field only the zero-field splitting survives.
  const ComplexMatrix h0 = build_hamiltonian(p, zero, FieldVector{});
  for (int i = 0; i < 6; ++i) {
    const double want = (i == 2 || i == 3) ? 0.0 : p.d_es_MHz;
    CHECK(h0(i, i).real() == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("build_hamiltonian: Hermitian, correct trace, hyperfine block") {
  SpinSystemParams p;
  HyperfineTensor t = HyperfineTensor::reference();
  t.euler = {0.3, 1.1, -0.7};
  const FieldVector b{12.0, -7.5, 44.0};
  const ComplexMatrix h = build_hamiltonian(p, t, b);

  CHECK(is_hermitian(h, 1e-12));
  // Zeeman and hyperfine terms are traceless; tr(Sz^2 x 1) = 4.
  CHECK(h.trace().real() == doctest::Approx(4.0 * p.d_es_MHz).epsilon(1e-12));

  // The hyperfine part alone: difference against the zero-tensor case
  // equals sum_pq A_pq S_p x I_q.
  HyperfineTensor zero;
  const ComplexMatrix hf = h - build_hamiltonian(p, zero, b);
  const SpinOperators se = spin_operators(1.0);
  const SpinOperators in = spin_operators(0.5);
  const ComplexMatrix s_ops[3] = {se.sx, se.sy, se.sz};
  const ComplexMatrix i_ops[3] = {in.sx, in.sy, in.sz};
  const RealMatrix3 lab = rotate_tensor(t);
  ComplexMatrix want = ComplexMatrix::Zero(6, 6);
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 3; ++c) {
      want += lab(a, c) * kron(s_ops[a], i_ops[c]);
    }
  }
  CHECK(max_abs(hf - want) < 1e-10);
}

TEST_CASE("build_hamiltonian: input validation") {
  SpinSystemParams p;
  p.d_es_MHz = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = SpinSystemParams{};
  p.gamma_c13_MHz_per_T = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("lac_field_mT: crossing field of the default parameters") {
  SpinSystemParams p;
  CHECK(lac_field_mT(p) == doctest::Approx(1420.0 / 28000.0 * 1000.0).epsilon(1e-12));
  p.d_es_MHz = 1400.0;
  p.gamma_nv_MHz_per_T = 2.8e4;
  CHECK(lac_field_mT(p) == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("level_diagram: exact degeneracy at the crossing without coupling") {
  SpinSystemParams p;
  p.gamma_c13_MHz_per_T = 1e-12;  // isolate the electron levels
  HyperfineTensor zero;
  const double bc = lac_field_mT(p);
  const std::vector<RealVector> levels = level_diagram(p, zero, {bc});
  REQUIRE(levels.size() == 1);
  // m_s = 0 and m_s = -1 meet at zero; m_s = +1 sits at 2 d_es.
  for (int i = 0; i < 4; ++i) CHECK(std::abs(levels[0](i)) < 1e-6);
  CHECK(levels[0](4) == doctest::Approx(2.0 * p.d_es_MHz).epsilon(1e-9));
  CHECK(levels[0](5) == doctest::Approx(2.0 * p.d_es_MHz).epsilon(1e-9));
}

TEST_CASE("level_diagram: hyperfine coupling opens an avoided crossing") {
  SpinSystemParams p;
  std::vector<double> grid;
  for (double b = 50.0; b <= 51.5; b += 0.002) grid.push_back(b);

  HyperfineTensor zero;
  const std::vector<RealVector> bare = level_diagram(p, zero, grid);
  const std::vector<RealVector> coupled =
      level_diagram(p, HyperfineTensor::reference(), grid);
  REQUIRE(bare.size() == grid.size());

  // Ascending order everywhere.
  for (const RealVector& e : coupled) {
    for (int i = 1; i < 6; ++i) CHECK(e(i) >= e(i - 1));
  }

  // Minimum splitting between the two lowest branches across the scan:
  // essentially closed without coupling (levels cross), held open by it.
  double min_bare = 1e300, min_coupled = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    min_bare = std::min(min_bare, bare[i](1) - bare[i](0));
    min_coupled = std::min(min_coupled, coupled[i](1) - coupled[i](0));
  }
  CHECK(min_bare < 0.05);
  CHECK(min_coupled > 0.5);
}
