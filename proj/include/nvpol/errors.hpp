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

#ifndef NVPOL_ERRORS_HPP
#define NVPOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nvpol {

// Invalid physical or numerical input (bad spin quantum number, negative
// rate, non-Hermitian matrix where a Hermitian one is required, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A linear solve hit a matrix that is singular (or numerically so).  The
// condition estimate that triggered the failure is carried along so callers
// can report it.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// The generator has more than one stationary direction, so "the" steady
// state is not defined.  Usually fixed by adding a weak nuclear relaxation
// channel that tie-breaks between otherwise disconnected sectors.
class NonUniqueSteadyStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical failure inside a sweep, tagged with the (orientation, field)
// grid point that caused it.
class SweepSolverError : public std::runtime_error {
 public:
  SweepSolverError(const std::string& what, int orientation, double field_mT)
      : std::runtime_error(what), orientation_(orientation), field_mT_(field_mT) {}
  int orientation() const { return orientation_; }
  double field_mT() const { return field_mT_; }

 private:
  int orientation_;
  double field_mT_;
};

// A problem in a run-configuration file or flag set: unknown key, malformed
// value, missing required entry.  Carries the offending key and, when the
// problem comes from a file, the 1-based line number (0 otherwise).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string key, int line = 0)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

}  // namespace nvpol

#endif  // NVPOL_ERRORS_HPP
