// Copyright 2026 The floqrylov Authors
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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace floqrylov {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline constexpr const char* kVersion = "0.1.0";

// Error categories. Everything thrown by the library derives from Error so
// callers (CLI, bindings) can map categories to exit codes / Python types.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed incompatible or out-of-range arguments.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data parsed but violates a domain invariant (e.g. non-unitary matrix).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed file or text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown: failed decomposition, orthogonality loss.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Largest entry modulus of A.
inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace floqrylov
