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

#include <string>
#include <vector>

#include "floqrylov/arnoldi.hpp"

namespace floqrylov {

/// Tridiagonal Krylov data of a Hermitian generator.
///
/// `a` has length dk; `b` has length dk - 1 and b[0] is the coefficient
/// usually written b_1 (coupling between K_0 and K_1).
struct LanczosData {
  std::vector<double> a;
  std::vector<double> b;
  OrthonormalBasis basis;
  int dk = 0;
  bool terminated = false;
};

/// Three-term Lanczos recursion with full re-orthogonalization against every
/// previous vector. Requires a Hermitian-variant Liouvillian (UsageError
/// otherwise); stops when the next b drops below tol or max_dim is reached.
LanczosData lanczos_iterate(const Liouvillian& l, const KrylovVector& v0, int max_dim,
                            double tol = kDefaultKrylovTolerance,
                            Representation rep = Representation::Eigenbasis);

/// max_n || L K_n - a_n K_n - b_n K_{n-1} - b_{n+1} K_{n+1} ||.
double lanczos_reconstruction_error(const Liouvillian& l, const LanczosData& data);

/// H_F = i log U on the principal branch: eigenvalues in (-pi, pi] equal the
/// quasi-energies, and exp(-i H_F) = U.
CMatrix effective_hamiltonian(const UnitaryMatrix& u);

/// exp(-i H) for Hermitian H, by eigendecomposition.
CMatrix unitary_from_hamiltonian(const CMatrix& h);

/// CSV "n,a,b" with b empty on the last row.
std::string lanczos_csv(const LanczosData& data);

}  // namespace floqrylov
