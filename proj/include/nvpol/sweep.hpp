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

#ifndef NVPOL_SWEEP_HPP
#define NVPOL_SWEEP_HPP

#include <cstdint>
#include <vector>

#include "nvpol/hamiltonian.hpp"
#include "nvpol/lindblad.hpp"

// Steady-state nuclear polarization scans across magnetic field and
// hyperfine orientation, plus polarization buildup against time.

namespace nvpol {

// Scan definition.  The field grid is in mT and must be strictly
// increasing.  Each orientation is applied on top of the tensor's own
// frame: A_lab = R(orientation) * rotate_tensor(tensor) * R^T, with the
// tensor scaled by hyperfine_scale first.  threads >= 1 selects how many
// worker threads share the (orientation, field) grid; the result is
// bitwise independent of that choice.
struct SweepConfig {
  std::vector<double> field_grid_mT;
  std::vector<EulerAngles> orientations = {EulerAngles{}};
  HyperfineTensor tensor = HyperfineTensor::reference();
  double hyperfine_scale = 1.0;
  SpinSystemParams params;
  PumpModel pump;
  int threads = 1;

  void validate() const;
};

// Orientation-resolved polarizations: per_orientation(i, j) is the steady
// state P at field i for orientation j; mean is the row average and
// zero_crossings_mT the sign changes of that mean curve.
struct SweepResult {
  std::vector<double> fields_mT;
  Eigen::MatrixXd per_orientation;
  std::vector<double> mean;
  std::vector<double> zero_crossings_mT;
};

// count orientations drawn uniformly over rotations (z-y-z angles with
// alpha, gamma uniform on [0, 2pi) and cos(beta) uniform on [-1, 1]),
// from a 64-bit Mersenne Twister seeded as given.  The draw order per
// orientation is alpha, cos(beta), gamma, with each uniform taken from
// the top 53 bits of one generator output — reproducible across
// platforms for a fixed seed.
std::vector<EulerAngles> haar_orientations(int count, std::uint64_t seed);

// Net nuclear spin projection 2<I_z> of a 6x6 state, in [-1, 1] for a
// normalized state.
double nuclear_polarization(const ComplexMatrix& rho);

// Steady-state polarization over the whole (field x orientation) grid.
// Numerical failures abort the sweep with SweepSolverError tagged by the
// first offending grid point.
SweepResult field_sweep(const SweepConfig& cfg);

// Sign changes of values(fields).  Entries with |value| < 1e-6 count as
// zero.  A strict sign flip between adjacent samples yields the linearly
// interpolated root; a run of zeros bracketed by opposite signs yields one
// crossing at the run's midpoint; zero runs bracketed by equal signs, or
// touching either end of the grid, yield none.
std::vector<double> find_zero_crossings(const std::vector<double>& fields_mT,
                                        const std::vector<double>& values);

// Polarization buildup P(t) from the maximally mixed state at a single
// grid point: cfg must have exactly one field and at least one
// orientation (the first is used).  Times in seconds, strictly
// increasing, starting at 0.
std::vector<double> buildup_curve(const SweepConfig& cfg, const std::vector<double>& t_grid_s);

// Exponential-fit summary of buildup curves for a set of hyperfine
// coupling strengths.  fit_residuals holds the RMS misfit of
// P(t) = p_infinity * (1 - exp(-t/tau)); converged flags fits that
// stayed inside the search window with a resolvable amplitude.
struct BuildupResult {
  std::vector<double> hyperfine_magnitudes_kHz;
  std::vector<double> timescales_s;
  std::vector<double> fit_residuals;
  std::vector<double> p_infinity;
  std::vector<double> field_mT;  // transfer-optimal field used per magnitude
  std::vector<bool> converged;
};

// For each requested coupling strength (the largest-magnitude eigenvalue
// of the tensor, in kHz): rescales base.tensor to that strength, locates
// the field in base.field_grid_mT with the largest steady-state |P| (first
// orientation only), integrates the buildup there, and fits the
// single-exponential timescale.
BuildupResult buildup_timescales(const std::vector<double>& magnitudes_kHz,
                                 const SweepConfig& base);

}  // namespace nvpol

#endif  // NVPOL_SWEEP_HPP
