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

#include "nvpol/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "nvpol/errors.hpp"
#include "nvpol/units.hpp"

namespace nvpol {

void SpinSystemParams::validate() const {
  if (!(d_es_MHz > 0.0)) throw DomainError("SpinSystemParams: d_es_MHz must be > 0");
  if (!(d_gs_MHz > 0.0)) throw DomainError("SpinSystemParams: d_gs_MHz must be > 0");
  if (!(gamma_nv_MHz_per_T > 0.0))
    throw DomainError("SpinSystemParams: gamma_nv_MHz_per_T must be > 0");
  if (!(gamma_c13_MHz_per_T > 0.0))
    throw DomainError("SpinSystemParams: gamma_c13_MHz_per_T must be > 0");
}

RealMatrix3 euler_rotation(const EulerAngles& e) {
  const double ca = std::cos(e.alpha), sa = std::sin(e.alpha);
  const double cb = std::cos(e.beta), sb = std::sin(e.beta);
  const double cg = std::cos(e.gamma), sg = std::sin(e.gamma);

  RealMatrix3 rz_a, ry_b, rz_g;
  rz_a << ca, -sa, 0, sa, ca, 0, 0, 0, 1;
  ry_b << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
  rz_g << cg, -sg, 0, sg, cg, 0, 0, 0, 1;
  return rz_a * ry_b * rz_g;
}

void HyperfineTensor::validate() const {
  const double scale = std::max(1.0, a_MHz.cwiseAbs().maxCoeff());
  if ((a_MHz - a_MHz.transpose()).cwiseAbs().maxCoeff() > 1.0e-9 * scale) {
    throw DomainError("HyperfineTensor: coupling matrix must be symmetric");
  }
}

HyperfineTensor HyperfineTensor::reference() {
  HyperfineTensor t;
  t.a_MHz << 5.0, -6.3, -2.9,
            -6.3,  4.2, -2.3,
            -2.9, -2.3,  8.2;
  return t;
}

HyperfineTensor HyperfineTensor::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("HyperfineTensor::from_file: cannot open '" + path.string() + "'");
  }
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double v;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) {
      throw DomainError("HyperfineTensor::from_file: malformed number in '" + path.string() +
                        "': " + line);
    }
  }
  if (values.size() != 9) {
    throw DomainError("HyperfineTensor::from_file: expected 9 numbers in '" + path.string() +
                      "', found " + std::to_string(values.size()));
  }
  HyperfineTensor t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.a_MHz(i, j) = values[3 * i + j];
  t.validate();
  return t;
}

RealMatrix3 rotate_tensor(const HyperfineTensor& t) {
  t.validate();
  const RealMatrix3 r = euler_rotation(t.euler);
  return r * t.a_MHz * r.transpose();
}

ComplexMatrix build_hamiltonian(const SpinSystemParams& params, const HyperfineTensor& tensor,
                                const FieldVector& field) {
  params.validate();
  const SpinOperators s = spin_operators(1.0);    // electron, dim 3
  const SpinOperators i = spin_operators(0.5);    // nucleus, dim 2
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);

  const RealVector3 b_T = field.as_vector() * units::T_per_mT;
  const RealMatrix3 a = rotate_tensor(tensor);

  ComplexMatrix h = params.d_es_MHz * kron(s.sz * s.sz, id2);
  h += params.gamma_nv_MHz_per_T * kron(b_T.x() * s.sx + b_T.y() * s.sy + b_T.z() * s.sz, id2);
  h += params.gamma_c13_MHz_per_T * kron(id3, b_T.x() * i.sx + b_T.y() * i.sy + b_T.z() * i.sz);

  const ComplexMatrix se[3] = {s.sx, s.sy, s.sz};
  const ComplexMatrix in[3] = {i.sx, i.sy, i.sz};
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) h += a(p, q) * kron(se[p], in[q]);

  return h;
}

double lac_field_mT(const SpinSystemParams& params) {
  params.validate();
  return params.d_es_MHz / params.gamma_nv_MHz_per_T * units::mT_per_T;
}

std::vector<RealVector> level_diagram(const SpinSystemParams& params,
                                      const HyperfineTensor& tensor,
                                      const std::vector<double>& field_grid_mT) {
  std::vector<RealVector> levels;
  levels.reserve(field_grid_mT.size());
  for (double b : field_grid_mT) {
    const ComplexMatrix h = build_hamiltonian(params, tensor, FieldVector::axial(b));
    levels.push_back(eig_hermitian(h).eigenvalues);
  }
  return levels;
}

}  // namespace nvpol
