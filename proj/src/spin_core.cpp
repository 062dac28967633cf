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

#include "nvpol/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nvpol/errors.hpp"

namespace nvpol {

namespace {
constexpr double kRankTol = 1.0e-13;  // relative sigma cutoff for rank decisions
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

SpinOperators spin_operators(double s) {
  const double two_s = 2.0 * s;
  if (!(s > 0.0) || std::abs(two_s - std::round(two_s)) > 1.0e-9) {
    throw DomainError("spin_operators: s must be a positive integer or half-integer, got " +
                      std::to_string(s));
  }
  const int dim = static_cast<int>(std::lround(two_s)) + 1;
  if (dim > 16) {
    throw DomainError("spin_operators: dimension 2s+1 = " + std::to_string(dim) +
                      " exceeds the supported maximum of 16");
  }

  SpinOperators ops;
  ops.dim = dim;
  ops.s_plus = ComplexMatrix::Zero(dim, dim);
  ops.sz = ComplexMatrix::Zero(dim, dim);

  // Basis index k corresponds to m = s - k.
  for (int k = 0; k < dim; ++k) {
    const double m = s - k;
    ops.sz(k, k) = m;
    if (k > 0) {
      // S+ |s, m> = sqrt(s(s+1) - m(m+1)) |s, m+1>
      ops.s_plus(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
  }
  ops.s_minus = ops.s_plus.adjoint();
  ops.sx = 0.5 * (ops.s_plus + ops.s_minus);
  ops.sy = Complex(0.0, -0.5) * (ops.s_plus - ops.s_minus);
  return ops;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DomainError("eig_hermitian: matrix must be square");
  }
  if (!is_hermitian(m, 1.0e-10)) {
    throw DomainError("eig_hermitian: matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw SingularMatrixError("eig_hermitian: eigensolver failed to converge", 0.0);
  }

  HermitianEigen out;
  out.eigenvalues = solver.eigenvalues();  // ascending by construction
  out.eigenvectors = solver.eigenvectors();

  // Fix the arbitrary per-column phase: rotate each eigenvector so that its
  // largest-magnitude entry (first such index on ties) is real and positive.
  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < out.eigenvectors.rows(); ++r) {
      const double mag = std::abs(out.eigenvectors(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best > 0.0) {
      const Complex phase = std::conj(out.eigenvectors(pivot, c)) / best;
      out.eigenvectors.col(c) *= phase;
    }
  }
  return out;
}

LinearSolution solve_linear(const ComplexMatrix& a, const ComplexVector& b) {
  if (a.rows() != b.size()) {
    throw DomainError("solve_linear: dimension mismatch between A and b");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() ? sigma(0) : 0.0;
  const double smin = sigma.size() ? sigma(sigma.size() - 1) : 0.0;
  const double condition = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  if (smax == 0.0 || smin < kRankTol * smax) {
    throw SingularMatrixError("solve_linear: matrix is singular to working precision", condition);
  }

  LinearSolution out;
  out.x = svd.solve(b);
  out.residual = (a * out.x - b).norm();
  out.condition = condition;
  return out;
}

}  // namespace nvpol
