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

#ifndef NVPOL_SPIN_CORE_HPP
#define NVPOL_SPIN_CORE_HPP

#include <complex>

#include <Eigen/Dense>

// Small dense complex linear algebra for spin problems.  Matrices are
// Eigen::MatrixXcd under a project-local alias; everything here is sized
// for single-defect Hilbert spaces (dimension <= 64), not for sparse or
// large-scale work.

namespace nvpol {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix3 = Eigen::Matrix3d;
using RealVector3 = Eigen::Vector3d;

// True if max_ij |M_ij - conj(M_ji)| <= tol * max(1, max_ij |M_ij|).
bool is_hermitian(const ComplexMatrix& m, double tol = 1.0e-9);

// Angular momentum operators for a single spin in the standard |s,m> basis
// ordered m = s, s-1, ..., -s.  Dimensionless (hbar = 1).
struct SpinOperators {
  ComplexMatrix sx;
  ComplexMatrix sy;
  ComplexMatrix sz;
  ComplexMatrix s_plus;   // raising,  S+ = Sx + i Sy
  ComplexMatrix s_minus;  // lowering, S- = Sx - i Sy
  int dim = 0;            // 2s + 1
};

// Builds the operator set for spin s.  s must be a positive integer or
// half-integer with 2s + 1 <= 16; anything else raises DomainError.
SpinOperators spin_operators(double s);

// Kronecker product, row-major convention: (A (x) B)_{(i*p+k),(j*q+l)} =
// A_ij * B_kl for B of size p x q.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition of a Hermitian matrix.
//
// Eigenvalues come out ascending; eigenvectors are the matching columns,
// orthonormal, with a deterministic phase: in each column the entry of
// largest magnitude (first such index on ties) is made real and positive.
// The input must satisfy is_hermitian(m, 1e-10); the solve itself runs on
// the symmetrized (M + M^dagger)/2.
struct HermitianEigen {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};
HermitianEigen eig_hermitian(const ComplexMatrix& m);

// Least-squares solve of A x = b by SVD.  For square nonsingular A this is
// the exact solution; for rectangular A the minimum-norm least-squares
// solution.  residual = |A x - b|_2, condition = sigma_max / sigma_min.
// If A is rank-deficient (sigma_min < 1e-13 * sigma_max) the solve refuses
// and throws SingularMatrixError carrying the condition estimate.
struct LinearSolution {
  ComplexVector x;
  double residual = 0.0;
  double condition = 0.0;
};
LinearSolution solve_linear(const ComplexMatrix& a, const ComplexVector& b);

}  // namespace nvpol

#endif  // NVPOL_SPIN_CORE_HPP
