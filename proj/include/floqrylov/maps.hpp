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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "floqrylov/common.hpp"

namespace floqrylov {

/// Parameters of a finite-dimensional kicked quantum map.
///
/// `alpha` shifts the position lattice (breaks parity), `beta` shifts the
/// momentum lattice (breaks time reversal). Both are stored reduced to [0, 1).
struct FloquetParams {
  int n_dim = 1;
  double kappa = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// Validates and reduces offsets modulo 1. Throws UsageError on n_dim < 1,
  /// negative or non-finite kappa, or non-finite offsets.
  static FloquetParams make(int n_dim, double kappa, double alpha = 0.0, double beta = 0.0);

  friend bool operator==(const FloquetParams&, const FloquetParams&) = default;
};

/// Dense N x N matrix whose unitarity was certified when it was built.
class UnitaryMatrix {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  /// Throws ValidationError (naming the defect) if max|U^dag U - I| >= tol.
  static UnitaryMatrix from_matrix(CMatrix entries, double tol = kDefaultTolerance);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& matrix() const { return entries_; }
  double defect() const { return defect_; }

 private:
  UnitaryMatrix(CMatrix entries, double defect) : entries_(std::move(entries)), defect_(defect) {}

  CMatrix entries_;
  double defect_ = 0.0;
};

/// max-entry |U^dag U - I|.
double unitarity_defect(const CMatrix& u);

struct QuasiEnergySpectrum {
  std::vector<double> phases;  // ascending, each in (-pi, pi]
  std::optional<FloquetParams> source_params;
};

/// Toral quantum kicked rotor, position basis, hbar = T = M = R = 1.
UnitaryMatrix build_toral_qkr(const FloquetParams& params);

/// Free-evolution factor of the toral QKR alone (kick switched off).
CMatrix toral_qkr_free_factor(int n_dim, double beta);

/// Kicked Harper map exp(-i kappa/(2 pi) cos 2piQ) exp(-i cos 2piP), position
/// basis, q_n = n/N, p_m = m/N.
UnitaryMatrix build_kicked_harper(int n_dim, double kappa);

/// Unitary discrete Fourier matrix F_{nm} = exp(2 pi i n m / N) / sqrt(N).
CMatrix fourier_matrix(int n_dim);

/// Folds an angle into (-pi, pi].
double fold_phase(double phase);

/// Eigenphases with the convention lambda = exp(-i eps).
QuasiEnergySpectrum quasi_energies(const UnitaryMatrix& u);

/// JSON matrix format {"n": N, "re": [[...]], "im": [[...]]}.
std::string unitary_to_json(const CMatrix& u);
CMatrix matrix_from_json(const std::string& text);

void save_unitary(const UnitaryMatrix& u, const std::filesystem::path& path);
void save_matrix(const CMatrix& m, const std::filesystem::path& path);
UnitaryMatrix load_unitary(const std::filesystem::path& path);

}  // namespace floqrylov
