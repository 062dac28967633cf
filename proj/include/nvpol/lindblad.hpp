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

#ifndef NVPOL_LINDBLAD_HPP
#define NVPOL_LINDBLAD_HPP

#include <vector>

#include "nvpol/spin_core.hpp"

// Open-system dynamics of the pumped NV-13C pair.
//
// The density matrix evolves under
//
//   d rho / dt = -i [H, rho]
//                + sum_n ( C_n rho C_n^+ - 1/2 {C_n^+ C_n, rho} )
//
// with H in MHz and t in microseconds.  The generator is represented as a
// d^2 x d^2 matrix acting on the column-stacked density matrix: vec(rho)
// places entry rho_ij at position j*d + i.

namespace nvpol {

// One incoherent population-transfer channel.  rate_MHz is the transfer
// rate (inverse 1/e time of the source population fed into this channel);
// the jump operator is sqrt(rate) |to><from|, and from_state must differ
// from to_state.
struct CollapseSpec {
  double rate_MHz = 0.0;
  int from_state = 0;
  int to_state = 0;
};

// Effective description of the optical cycle plus slow relaxation, in the
// 6-state basis of hamiltonian.hpp.
//
// Spin-selective optical pumping restores m_s = 0 population at
// pump_rate_to_0_MHz (from each of m_s = +-1, nuclear state preserved)
// while a weaker leak_rate_to_pm1_MHz scatters m_s = 0 back out to +-1.
// With the default 20:1 ratio the cycle parks ~91% of the electron
// population in m_s = 0.
//
// nuclear_t1_s / electron_t1_s add longitudinal relaxation; a value of 0
// disables the channel.  The slow nuclear channel is on by default: it is
// physically present and it tie-breaks the stationary state when the
// coherent dynamics alone leaves disconnected sectors.  dephasing_rate_MHz
// adds pure electron dephasing (an Sz jump operator, no population
// transfer).  cross_leak routes a direct m_s = +1 <-> -1 exchange at the
// leak rate.
struct PumpModel {
  double pump_rate_to_0_MHz = 10.0;
  double leak_rate_to_pm1_MHz = 0.5;
  double nuclear_t1_s = 100.0;
  double electron_t1_s = 0.0;
  double dephasing_rate_MHz = 0.0;
  bool cross_leak = false;

  // Throws DomainError on any negative rate or time.
  void validate() const;
};

// Expands a PumpModel into its population-transfer channels, in a fixed
// documented order (pump, leak, cross-leak, nuclear T1, electron T1);
// zero-rate channels are omitted.  Nuclear T1 contributes rate 1/(2 T1)
// per direction for each electron level; electron T1 contributes
// 1/(3 T1) for each ordered electron pair at fixed nuclear state.
std::vector<CollapseSpec> build_collapse_ops(const PumpModel& pump);

// Pure-dephasing jump operator sqrt(rate) * Sz (x) 1_2 for the 6-state
// basis.  Not expressible as a CollapseSpec (it moves no population), so
// it is passed to build_liouvillian through the extra-operator list.
ComplexMatrix dephasing_operator(double rate_MHz);

struct Liouvillian {
  ComplexMatrix matrix;  // d^2 x d^2
  int dim = 0;           // d
};

// Assembles the generator from a Hamiltonian (Hermitian within 1e-9),
// population-transfer channels, and optional arbitrary extra jump
// operators (e.g. dephasing_operator).  Channel indices must lie in
// [0, dim); rates must be >= 0.
Liouvillian build_liouvillian(const ComplexMatrix& h, const std::vector<CollapseSpec>& collapse,
                              const std::vector<ComplexMatrix>& extra_ops = {});

// Convenience: Hamiltonian + PumpModel in one step, dephasing included.
Liouvillian assemble_liouvillian(const ComplexMatrix& h, const PumpModel& pump);

// Column-stacking vectorization and its inverse.
ComplexVector vec_density(const ComplexMatrix& rho);
ComplexMatrix unvec_density(const ComplexVector& v);

// Unique stationary density matrix of the generator.
//
// Solves the trace-augmented least-squares system [L; vec-trace-row] x =
// (0, ..., 0, 1), then Hermitizes and normalizes the trace exactly.  Before
// solving, the kernel dimension of L is checked (singular values below
// 1e-13 of the largest count as zero): more than one stationary direction
// raises NonUniqueSteadyStateError with a hint to enable nuclear_t1.
ComplexMatrix steady_state(const Liouvillian& l);

// Time evolution rho(t) from rho0 (Hermitian, unit trace within 1e-6) over
// t_s >= 0 seconds.  Build one of these when many times are needed for the
// same generator; the spectral data is computed once.
//
// The implementation diagonalizes L and propagates the deviation from the
// stationary state, which keeps t -> infinity exactly on the steady state
// instead of amplifying rounding noise in the near-degenerate slow modes.
// If L is too close to defective for the eigenbasis to be trusted
// (reconstruction error above 1e-8 relative), evaluation falls back to a
// scaling-and-squaring matrix exponential and spectral_ok() reports false.
class Propagator {
 public:
  explicit Propagator(const Liouvillian& l);

  ComplexMatrix at(const ComplexMatrix& rho0, double t_s) const;
  bool spectral_ok() const { return spectral_ok_; }

  // Slowest and fastest nonzero decay rates (1/s) of the generator's
  // spectrum; zero if no decaying mode exists.  Used to pick sensible
  // time grids for relaxation curves.
  double slowest_rate_per_s() const { return slowest_rate_per_s_; }
  double fastest_rate_per_s() const { return fastest_rate_per_s_; }

 private:
  int dim_ = 0;
  ComplexMatrix l_;
  ComplexMatrix v_;
  ComplexMatrix v_inv_;
  ComplexVector lambda_;
  ComplexVector stationary_vec_;
  ComplexMatrix stationary_;
  bool spectral_ok_ = false;
  double slowest_rate_per_s_ = 0.0;
  double fastest_rate_per_s_ = 0.0;
};

// One-shot convenience wrapper around Propagator.
ComplexMatrix propagate(const Liouvillian& l, const ComplexMatrix& rho0, double t_s);

}  // namespace nvpol

#endif  // NVPOL_LINDBLAD_HPP
