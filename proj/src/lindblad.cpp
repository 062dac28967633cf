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

#include "nvpol/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "nvpol/errors.hpp"
#include "nvpol/units.hpp"

namespace nvpol {

namespace {

// Relative singular-value / pivot cutoff below which a direction counts as
// part of the kernel.  The physical slow modes of this problem (nuclear T1
// of minutes against MHz pumping) sit around 1e-12 relative, the true
// kernel at 1e-16; 1e-13 separates them with margin on both sides.
constexpr double kKernelTol = 1.0e-13;

// Eigenbasis reconstruction quality required to trust the spectral
// propagation path.
constexpr double kSpectralTol = 1.0e-8;

// Below this exponent exp() underflows anyway; short-circuit to zero.
constexpr double kExpUnderflow = -700.0;

void check_liouvillian_shape(const Liouvillian& l, const char* where) {
  const Eigen::Index n = static_cast<Eigen::Index>(l.dim) * l.dim;
  if (l.dim <= 0 || l.matrix.rows() != n || l.matrix.cols() != n) {
    throw DomainError(std::string(where) + ": generator matrix must be dim^2 x dim^2");
  }
}

// Trace-augmented stationary system [L; trace-row] x = (0,...,0,1), solved
// in the least-squares sense with a rank threshold so that a degenerate
// kernel still yields the minimum-norm representative.  Shared between
// steady_state (which checks uniqueness first) and Propagator (which only
// needs some stationary reference).
ComplexVector stationary_solution(const Liouvillian& l) {
  const Eigen::Index n = l.matrix.rows();
  ComplexMatrix a(n + 1, n);
  a.topRows(n) = l.matrix;
  a.row(n).setZero();
  for (int i = 0; i < l.dim; ++i) a(n, static_cast<Eigen::Index>(i) * l.dim + i) = 1.0;
  ComplexVector b = ComplexVector::Zero(n + 1);
  b(n) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod;
  cod.setThreshold(kKernelTol);
  cod.compute(a);
  return cod.solve(b);
}

}  // namespace

void PumpModel::validate() const {
  if (pump_rate_to_0_MHz < 0.0) throw DomainError("PumpModel: pump_rate_to_0_MHz must be >= 0");
  if (leak_rate_to_pm1_MHz < 0.0) {
    throw DomainError("PumpModel: leak_rate_to_pm1_MHz must be >= 0");
  }
  if (nuclear_t1_s < 0.0) throw DomainError("PumpModel: nuclear_t1_s must be >= 0");
  if (electron_t1_s < 0.0) throw DomainError("PumpModel: electron_t1_s must be >= 0");
  if (dephasing_rate_MHz < 0.0) throw DomainError("PumpModel: dephasing_rate_MHz must be >= 0");
}

std::vector<CollapseSpec> build_collapse_ops(const PumpModel& pump) {
  pump.validate();
  std::vector<CollapseSpec> out;
  const auto add = [&out](double rate, int from, int to) {
    if (rate > 0.0) out.push_back({rate, from, to});
  };

  // Basis indices: 2*e + n with e in {0:m_s=+1, 1:m_s=0, 2:m_s=-1} and
  // n in {0:up, 1:down}.  The optical cycle preserves the nuclear state.
  for (int n = 0; n < 2; ++n) add(pump.pump_rate_to_0_MHz, 0 + n, 2 + n);    // +1 -> 0
  for (int n = 0; n < 2; ++n) add(pump.pump_rate_to_0_MHz, 4 + n, 2 + n);    // -1 -> 0
  for (int n = 0; n < 2; ++n) add(pump.leak_rate_to_pm1_MHz, 2 + n, 0 + n);  //  0 -> +1
  for (int n = 0; n < 2; ++n) add(pump.leak_rate_to_pm1_MHz, 2 + n, 4 + n);  //  0 -> -1
  if (pump.cross_leak) {
    for (int n = 0; n < 2; ++n) add(pump.leak_rate_to_pm1_MHz, 0 + n, 4 + n);  // +1 -> -1
    for (int n = 0; n < 2; ++n) add(pump.leak_rate_to_pm1_MHz, 4 + n, 0 + n);  // -1 -> +1
  }
  if (pump.nuclear_t1_s > 0.0) {
    // T1 is the relaxation time of <I_z>; each direction carries 1/(2 T1).
    const double r = 1.0 / (2.0 * pump.nuclear_t1_s * units::us_per_s);
    for (int e = 0; e < 6; e += 2) {
      add(r, e, e + 1);
      add(r, e + 1, e);
    }
  }
  if (pump.electron_t1_s > 0.0) {
    // Uniform hopping among the three electron levels; 1/(3 T1) per pair
    // gives population equilibration on the T1 scale.
    const double r = 1.0 / (3.0 * pump.electron_t1_s * units::us_per_s);
    for (int ef = 0; ef < 6; ef += 2)
      for (int et = 0; et < 6; et += 2) {
        if (ef == et) continue;
        for (int n = 0; n < 2; ++n) add(r, ef + n, et + n);
      }
  }
  return out;
}

ComplexMatrix dephasing_operator(double rate_MHz) {
  if (rate_MHz < 0.0) throw DomainError("dephasing_operator: rate must be >= 0");
  const SpinOperators s = spin_operators(1.0);
  return std::sqrt(rate_MHz) * kron(s.sz, ComplexMatrix::Identity(2, 2));
}

Liouvillian build_liouvillian(const ComplexMatrix& h, const std::vector<CollapseSpec>& collapse,
                              const std::vector<ComplexMatrix>& extra_ops) {
  if (h.rows() != h.cols()) throw DomainError("build_liouvillian: H must be square");
  if (!is_hermitian(h, 1.0e-9)) {
    throw DomainError("build_liouvillian: H must be Hermitian within tolerance");
  }
  const int d = static_cast<int>(h.rows());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  // Column stacking turns d rho / dt into a d^2 x d^2 linear system:
  //   vec(H rho)   = (1 (x) H)   vec(rho)
  //   vec(rho H)   = (H^T (x) 1) vec(rho)
  //   vec(C rho C^+) = (conj(C) (x) C) vec(rho)
  Liouvillian l;
  l.dim = d;
  l.matrix = Complex(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));

  const auto add_jump = [&](const ComplexMatrix& c) {
    const ComplexMatrix cdc = c.adjoint() * c;
    l.matrix += kron(c.conjugate(), c);
    l.matrix -= 0.5 * kron(id, cdc);
    l.matrix -= 0.5 * kron(cdc.transpose(), id);
  };

  for (const CollapseSpec& spec : collapse) {
    if (spec.rate_MHz < 0.0) throw DomainError("build_liouvillian: collapse rate must be >= 0");
    if (spec.from_state < 0 || spec.from_state >= d || spec.to_state < 0 || spec.to_state >= d) {
      throw DomainError("build_liouvillian: collapse indices out of range");
    }
    if (spec.from_state == spec.to_state) {
      throw DomainError("build_liouvillian: collapse channel must connect distinct states");
    }
    if (spec.rate_MHz == 0.0) continue;
    ComplexMatrix c = ComplexMatrix::Zero(d, d);
    c(spec.to_state, spec.from_state) = std::sqrt(spec.rate_MHz);
    add_jump(c);
  }
  for (const ComplexMatrix& c : extra_ops) {
    if (c.rows() != d || c.cols() != d) {
      throw DomainError("build_liouvillian: extra operator has wrong dimension");
    }
    add_jump(c);
  }
  return l;
}

Liouvillian assemble_liouvillian(const ComplexMatrix& h, const PumpModel& pump) {
  std::vector<ComplexMatrix> extra;
  if (pump.dephasing_rate_MHz > 0.0) extra.push_back(dephasing_operator(pump.dephasing_rate_MHz));
  return build_liouvillian(h, build_collapse_ops(pump), extra);
}

ComplexVector vec_density(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DomainError("vec_density: matrix must be square");
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unvec_density(const ComplexVector& v) {
  const auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw DomainError("unvec_density: length must be a perfect square");
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix steady_state(const Liouvillian& l) {
  check_liouvillian_shape(l, "steady_state");

  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod;
  cod.setThreshold(kKernelTol);
  cod.compute(l.matrix);
  const Eigen::Index kernel = l.matrix.cols() - cod.rank();
  if (kernel > 1) {
    throw NonUniqueSteadyStateError(
        "steady_state: generator has " + std::to_string(kernel) +
        " independent stationary directions; add a weak relaxation channel "
        "(e.g. nuclear_t1) to select a unique steady state");
  }

  const ComplexVector x = stationary_solution(l);
  const double residual = (l.matrix * x).norm();
  if (!(residual <= 1.0e-9 * l.matrix.norm())) {
    throw SingularMatrixError(
        "steady_state: stationary solve residual " + std::to_string(residual) +
            " is too large; the generator admits no stationary density matrix",
        0.0);
  }

  const ComplexMatrix raw = unvec_density(x);
  const ComplexMatrix rho = 0.5 * (raw + raw.adjoint());
  const double tr = rho.trace().real();
  if (std::abs(tr) < 1.0e-6) {
    throw SingularMatrixError("steady_state: stationary solution has vanishing trace", 0.0);
  }
  return rho / tr;
}

Propagator::Propagator(const Liouvillian& l) : dim_(l.dim), l_(l.matrix) {
  check_liouvillian_shape(l, "Propagator");

  // Stationary reference (minimum-norm if the kernel is degenerate).  If
  // the generator has no trace-1 stationary state at all — possible with
  // hand-made extra operators — fall back to a zero reference, which turns
  // the deviation propagation below into plain propagation.
  const ComplexMatrix raw_ref = unvec_density(stationary_solution(l));
  ComplexMatrix ref = 0.5 * (raw_ref + raw_ref.adjoint());
  const double tr = ref.trace().real();
  if (std::abs(tr) > 1.0e-6) {
    ref /= tr;
  } else {
    ref.setZero();
  }
  stationary_ = ref;
  stationary_vec_ = vec_density(stationary_);

  Eigen::ComplexEigenSolver<ComplexMatrix> es(l_);
  if (es.info() == Eigen::Success) {
    v_ = es.eigenvectors();
    lambda_ = es.eigenvalues();
    Eigen::PartialPivLU<ComplexMatrix> lu(v_);
    v_inv_ = lu.inverse();
    const double scale = std::max(1.0, l_.norm());
    const double err = (v_ * lambda_.asDiagonal() * v_inv_ - l_).norm();
    spectral_ok_ = err <= kSpectralTol * scale;
  } else {
    spectral_ok_ = false;
  }

  if (spectral_ok_) {
    // A generator spectrum has Re <= 0; tiny positive real parts are
    // rounding noise and would blow up exp(lambda t) at large t.
    double max_decay = 0.0;
    for (Eigen::Index k = 0; k < lambda_.size(); ++k) {
      const double re = std::min(lambda_(k).real(), 0.0);
      lambda_(k) = Complex(re, lambda_(k).imag());
      max_decay = std::max(max_decay, -re);
    }
    const double cut = 1.0e-12 * max_decay;
    double slowest = 0.0, fastest = 0.0;
    for (Eigen::Index k = 0; k < lambda_.size(); ++k) {
      const double decay = -lambda_(k).real();  // 1/us
      if (decay > cut && decay > 0.0) {
        slowest = (slowest == 0.0) ? decay : std::min(slowest, decay);
        fastest = std::max(fastest, decay);
      }
    }
    slowest_rate_per_s_ = slowest * units::us_per_s;
    fastest_rate_per_s_ = fastest * units::us_per_s;
  }
}

ComplexMatrix Propagator::at(const ComplexMatrix& rho0, double t_s) const {
  if (rho0.rows() != dim_ || rho0.cols() != dim_) {
    throw DomainError("Propagator::at: state has wrong dimension");
  }
  if (!is_hermitian(rho0, 1.0e-9)) {
    throw DomainError("Propagator::at: state must be Hermitian");
  }
  if (std::abs(rho0.trace().real() - 1.0) > 1.0e-6 || std::abs(rho0.trace().imag()) > 1.0e-6) {
    throw DomainError("Propagator::at: state must have unit trace");
  }
  if (!(t_s >= 0.0)) throw DomainError("Propagator::at: time must be >= 0");
  if (t_s == 0.0) return rho0;
  const double t_us = t_s * units::us_per_s;  // generator entries are 1/us

  if (!spectral_ok_) {
    // Scaling-and-squaring fallback; slower but works for (numerically)
    // defective generators.
    const ComplexMatrix expm = (l_ * Complex(t_us, 0.0)).exp();
    const ComplexMatrix raw = unvec_density(expm * vec_density(rho0));
    ComplexMatrix rho = 0.5 * (raw + raw.adjoint());
    const double tr = rho.trace().real();
    if (std::abs(tr) > 1.0e-6) rho /= tr;
    return rho;
  }

  // Propagate the deviation from the stationary state.  At large t every
  // decaying mode underflows to zero and the result lands exactly on the
  // reference instead of accumulating eigenvector rounding noise.
  ComplexVector w = v_inv_ * (vec_density(rho0) - stationary_vec_);
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double re_t = lambda_(k).real() * t_us;
    w(k) = (re_t < kExpUnderflow) ? Complex(0.0, 0.0) : w(k) * std::exp(lambda_(k) * t_us);
  }
  const ComplexMatrix dev = unvec_density(v_ * w);
  // The deviation is traceless in exact arithmetic; project out whatever
  // trace the stationary (non-decaying) direction picked up numerically.
  const ComplexMatrix raw = stationary_ + dev - dev.trace() * stationary_;
  return 0.5 * (raw + raw.adjoint());
}

ComplexMatrix propagate(const Liouvillian& l, const ComplexMatrix& rho0, double t_s) {
  return Propagator(l).at(rho0, t_s);
}

}  // namespace nvpol
