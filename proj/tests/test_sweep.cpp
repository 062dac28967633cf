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
#include <vector>

#include "nvpol/errors.hpp"
#include "nvpol/lindblad.hpp"
#include "nvpol/sweep.hpp"
#include "nvpol/units.hpp"
#include "test_helpers.hpp"

using namespace nvpol;
using nvpol_test::max_abs;

namespace {

std::vector<double> linear_grid(double first_mT, double last_mT, double step_mT) {
  std::vector<double> g;
  for (double b = first_mT; b <= last_mT + 1e-9; b += step_mT) g.push_back(b);
  return g;
}

}  // namespace

TEST_CASE("nuclear_polarization: projection of simple states") {
  ComplexMatrix rho = ComplexMatrix::Zero(6, 6);
  rho(0, 0) = 1.0;  // |+1, up>
  CHECK(nuclear_polarization(rho) == doctest::Approx(1.0).epsilon(1e-15));

  rho.setZero();
  rho(3, 3) = 1.0;  // |0, down>
  CHECK(nuclear_polarization(rho) == doctest::Approx(-1.0).epsilon(1e-15));

  rho.setZero();
  rho(2, 2) = 0.75;
  rho(3, 3) = 0.25;
  CHECK(nuclear_polarization(rho) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(nuclear_polarization(ComplexMatrix::Identity(6, 6) / 6.0) ==
        doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(nuclear_polarization(ComplexMatrix::Identity(4, 4)), DomainError);
}

TEST_CASE("haar_orientations: deterministic, in range, seed-sensitive") {
  const std::vector<EulerAngles> a = haar_orientations(32, 7);
  const std::vector<EulerAngles> b = haar_orientations(32, 7);
  const std::vector<EulerAngles> c = haar_orientations(32, 8);
  REQUIRE(a.size() == 32);
  double max_same = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].alpha >= 0.0);
    CHECK(a[i].alpha < 2.0 * units::pi);
    CHECK(a[i].beta >= 0.0);
    CHECK(a[i].beta <= units::pi);
    CHECK(a[i].gamma >= 0.0);
    CHECK(a[i].gamma < 2.0 * units::pi);
    CHECK(a[i].alpha == b[i].alpha);
    CHECK(a[i].beta == b[i].beta);
    CHECK(a[i].gamma == b[i].gamma);
    max_same = std::max(max_same, std::abs(a[i].alpha - c[i].alpha));
  }
  CHECK(max_same > 1e-3);  // different seed, different stream

  // cos(beta) should be roughly centered for a uniform orientation measure.
  double mean_cos = 0.0;
  const std::vector<EulerAngles> many = haar_orientations(2000, 123);
  for (const EulerAngles& e : many) mean_cos += std::cos(e.beta);
  mean_cos /= static_cast<double>(many.size());
  CHECK(std::abs(mean_cos) < 0.05);
}

TEST_CASE("find_zero_crossings: interpolation and zero-run handling") {
  using V = std::vector<double>;

  // Strict sign flip: linear interpolation.
  CHECK(find_zero_crossings(V{50.0, 51.0}, V{-1.0, 1.0}) == V{50.5});
  CHECK(find_zero_crossings(V{0.0, 1.0}, V{-1.0, 3.0}) == V{0.25});

  // A numerically-zero sample bracketed by opposite signs: midpoint of the
  // zero run.
  CHECK(find_zero_crossings(V{50.0, 51.0, 52.0}, V{1.0, 1e-9, -1.0}) == V{51.0});
  CHECK(find_zero_crossings(V{0.0, 1.0, 2.0, 3.0}, V{1.0, 1e-8, -1e-8, -1.0}) ==
        V{1.5});

  // Zero dip without a sign change: no crossing.
  CHECK(find_zero_crossings(V{0.0, 1.0, 2.0}, V{1.0, 1e-9, 1.0}).empty());

  // Zero runs touching the grid ends: no crossing.
  CHECK(find_zero_crossings(V{0.0, 1.0, 2.0}, V{1e-9, 1.0, 2.0}).empty());
  CHECK(find_zero_crossings(V{0.0, 1.0, 2.0}, V{2.0, 1.0, 1e-9}).empty());

  // Alternating signs: one crossing per flip.
  CHECK(find_zero_crossings(V{0.0, 1.0, 2.0, 3.0}, V{1.0, -1.0, 1.0, -1.0}) ==
        V{0.5, 1.5, 2.5});

  CHECK(find_zero_crossings(V{}, V{}).empty());
  CHECK_THROWS_AS(find_zero_crossings(V{0.0, 1.0}, V{1.0}), DomainError);
}

TEST_CASE("field_sweep: matches a hand-assembled single-point solve") {
  SweepConfig cfg;
  cfg.field_grid_mT = {50.6};
  const SweepResult res = field_sweep(cfg);
  REQUIRE(res.fields_mT == std::vector<double>{50.6});
  REQUIRE(res.per_orientation.rows() == 1);
  REQUIRE(res.per_orientation.cols() == 1);
  CHECK(res.mean[0] == res.per_orientation(0, 0));

  const ComplexMatrix h = build_hamiltonian(
      SpinSystemParams{}, HyperfineTensor::reference(), FieldVector::axial(50.6));
  const double direct =
      nuclear_polarization(steady_state(assemble_liouvillian(h, PumpModel{})));
  CHECK(std::abs(res.per_orientation(0, 0) - direct) < 1e-12);
}

TEST_CASE("field_sweep: result is independent of the thread count") {
  SweepConfig cfg;
  cfg.field_grid_mT = linear_grid(50.0, 51.0, 0.25);
  cfg.orientations = haar_orientations(3, 42);

  cfg.threads = 1;
  const SweepResult serial = field_sweep(cfg);
  cfg.threads = 4;
  const SweepResult parallel = field_sweep(cfg);

  CHECK((serial.per_orientation - parallel.per_orientation).cwiseAbs().maxCoeff() ==
        0.0);
  REQUIRE(serial.mean.size() == parallel.mean.size());
  for (std::size_t i = 0; i < serial.mean.size(); ++i) {
    CHECK(serial.mean[i] == parallel.mean[i]);
  }
}

TEST_CASE("field_sweep: no hyperfine coupling, no polarization transfer") {
  SweepConfig cfg;
  cfg.field_grid_mT = {49.0, 50.7, 52.0};
  cfg.hyperfine_scale = 0.0;
  const SweepResult res = field_sweep(cfg);
  // Below the numerical-zero gate of the crossing detector.
  for (double p : res.mean) CHECK(std::abs(p) < 1e-6);
  CHECK(res.zero_crossings_mT.empty());  // all-zero curve has no sign changes
}

TEST_CASE("field_sweep: mean is the orientation average") {
  SweepConfig cfg;
  cfg.field_grid_mT = {50.4, 50.8};
  cfg.orientations = haar_orientations(4, 3);
  const SweepResult res = field_sweep(cfg);
  for (int i = 0; i < 2; ++i) {
    CHECK(res.mean[static_cast<std::size_t>(i)] ==
          doctest::Approx(res.per_orientation.row(i).mean()).epsilon(1e-15));
  }
}

TEST_CASE("field_sweep: failures carry the offending grid point") {
  SweepConfig cfg;
  cfg.field_grid_mT = {48.0, 49.0};
  cfg.tensor = HyperfineTensor{};  // zero coupling
  cfg.pump.nuclear_t1_s = 0.0;    // disconnected sectors -> no unique state
  try {
    field_sweep(cfg);
    FAIL("expected SweepSolverError");
  } catch (const SweepSolverError& e) {
    CHECK(e.orientation() == 0);
    CHECK(e.field_mT() == 48.0);
  }
}

TEST_CASE("SweepConfig::validate rejects malformed scans") {
  SweepConfig cfg;
  cfg.field_grid_mT = {};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.field_grid_mT = {50.0, 50.0};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.field_grid_mT = {51.0, 50.0};
  CHECK_THROWS_AS(cfg.validate(), DomainError);

  cfg = SweepConfig{};
  cfg.field_grid_mT = {50.0};
  cfg.orientations.clear();
  CHECK_THROWS_AS(cfg.validate(), DomainError);

  cfg = SweepConfig{};
  cfg.field_grid_mT = {50.0};
  cfg.threads = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);

  cfg = SweepConfig{};
  cfg.field_grid_mT = {50.0};
  cfg.hyperfine_scale = -0.5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("buildup_curve: starts at zero and relaxes to the steady state") {
  SweepConfig cfg;
  cfg.field_grid_mT = {50.6};
  cfg.pump.nuclear_t1_s = 1.0;  // shorten the slowest mode for the test

  const std::vector<double> t_s = {0.0, 0.05, 0.2, 1.0, 5.0, 20.0};
  const std::vector<double> p = buildup_curve(cfg, t_s);
  REQUIRE(p.size() == t_s.size());
  CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-12));
  for (double v : p) CHECK(std::abs(v) <= 1.0 + 1e-12);

  const double p_ss = field_sweep(cfg).mean[0];
  CHECK(std::abs(p.back() - p_ss) < 1e-6);
  // The curve heads monotonically toward its limit at these spacings.
  for (std::size_t i = 1; i < p.size(); ++i) {
    CHECK(std::abs(p_ss - p[i]) <= std::abs(p_ss - p[i - 1]) + 1e-12);
  }
}

TEST_CASE("buildup_curve: input validation") {
  SweepConfig cfg;
  cfg.field_grid_mT = {50.0, 51.0};  // two fields: ambiguous
  CHECK_THROWS_AS(buildup_curve(cfg, {0.0, 1.0}), DomainError);

  cfg.field_grid_mT = {50.0};
  CHECK_THROWS_AS(buildup_curve(cfg, {}), DomainError);
  CHECK_THROWS_AS(buildup_curve(cfg, {0.5, 1.0}), DomainError);   // misses t = 0
  CHECK_THROWS_AS(buildup_curve(cfg, {0.0, 2.0, 1.0}), DomainError);
}

TEST_CASE("buildup_timescales: stronger coupling pumps faster") {
  SweepConfig base;
  base.field_grid_mT = linear_grid(50.0, 51.2, 0.05);
  base.pump.nuclear_t1_s = 4.5;

  const BuildupResult res = buildup_timescales({10.0, 1000.0}, base);
  REQUIRE(res.timescales_s.size() == 2);
  REQUIRE(res.hyperfine_magnitudes_kHz == std::vector<double>{10.0, 1000.0});
  CHECK(res.converged[0]);
  CHECK(res.converged[1]);
  CHECK(res.timescales_s[1] < res.timescales_s[0]);
  CHECK(res.fit_residuals[0] < 1e-2);
  CHECK(res.fit_residuals[1] < 1e-2);
  for (double f : res.field_mT) {
    CHECK(f >= base.field_grid_mT.front());
    CHECK(f <= base.field_grid_mT.back());
  }
  // Strong coupling pushes the buildup far below the relaxation limit.
  CHECK(res.timescales_s[1] < 0.1 * res.timescales_s[0]);

  CHECK_THROWS_AS(buildup_timescales({}, base), DomainError);
  CHECK_THROWS_AS(buildup_timescales({-5.0}, base), DomainError);
}
