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

#include <cstdint>
#include <string>

#include "floqrylov/common.hpp"
#include "floqrylov/maps.hpp"

namespace floqrylov {

enum class SpaceKind { State, Operator };

std::string to_string(SpaceKind kind);

/// Element of either the Hilbert space (N-vector) or the operator space
/// (N x N matrix with the (1/N) Tr(A^dag B) product).
///
/// Both variants are stored as an N x 1 or N x N Eigen matrix, so Krylov
/// engines can treat them as flat coefficient arrays with a scalar weight.
class KrylovVector {
 public:
  static KrylovVector state(CVector v);
  static KrylovVector op(CMatrix m);

  SpaceKind kind() const { return kind_; }
  int dim_hilbert() const { return static_cast<int>(values_.rows()); }
  const CMatrix& values() const { return values_; }
  CMatrix& values() { return values_; }

  /// Weight of the flat Euclidean product: 1 for states, 1/N for operators.
  double weight() const;
  double norm() const;

  /// Flattened (column-major) view, length N or N^2.
  Eigen::Map<const CVector> flat() const { return {values_.data(), values_.size()}; }
  Eigen::Map<CVector> flat() { return {values_.data(), values_.size()}; }

  KrylovVector& operator+=(const KrylovVector& other);
  KrylovVector& operator-=(const KrylovVector& other);
  KrylovVector& operator*=(Complex s);
  friend KrylovVector operator+(KrylovVector a, const KrylovVector& b) { return a += b; }
  friend KrylovVector operator-(KrylovVector a, const KrylovVector& b) { return a -= b; }
  friend KrylovVector operator*(Complex s, KrylovVector a) { return a *= s; }

 private:
  KrylovVector(SpaceKind kind, CMatrix values) : kind_(kind), values_(std::move(values)) {}
  void check_compatible(const KrylovVector& other) const;

  SpaceKind kind_;
  CMatrix values_;
};

/// <a|b>, antilinear in a. Operators use (1/N) Tr(a^dag b).
Complex inner(const KrylovVector& a, const KrylovVector& b);

/// Generator of Krylov sequences. Unitary variants produce the stroboscopic
/// Floquet sequence; Hermitian variants produce the continuous-time one.
class Liouvillian {
 public:
  enum class Kind { UnitaryOnState, UnitaryConjugation, HermitianOnState, HermitianCommutator };

  static constexpr double kHermitianTolerance = 1e-10;

  static Liouvillian unitary_on_state(const UnitaryMatrix& u);
  /// O -> U^dag O U.
  static Liouvillian unitary_conjugation(const UnitaryMatrix& u);
  /// Throws ValidationError if h is not Hermitian to 1e-10.
  static Liouvillian hermitian_on_state(const CMatrix& h);
  /// O -> H O - O H.
  static Liouvillian hermitian_commutator(const CMatrix& h);

  Kind kind() const { return kind_; }
  SpaceKind space() const;
  bool is_hermitian() const;
  int dim_hilbert() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

  /// Largest possible Krylov dimension: N for states, N^2 - N + 1 for operators.
  int max_krylov_dim() const;

 private:
  Liouvillian(Kind kind, CMatrix m) : kind_(kind), matrix_(std::move(m)) {}

  Kind kind_;
  CMatrix matrix_;
};

std::string to_string(Liouvillian::Kind kind);

/// Applies the Liouvillian. Throws UsageError on variant or size mismatch.
KrylovVector apply(const Liouvillian& l, const KrylovVector& v);

/// Same as apply() on a flattened coefficient array; writes into `out`.
/// Used by the Krylov engines to avoid per-step allocations.
void apply_flat(const Liouvillian& l, const CVector& in, CVector& out);

/// Initial-condition descriptor, textual form "name" or "name:args".
struct InitialCondition {
  enum class Kind {
    PositionState,
    MomentumState,
    UniformState,
    RandomState,
    PositionOperator,
    MomentumOperator,
    RandomHermitianOperator,
    BasisOperator,
    IdentityOperator,
  };
  Kind kind = Kind::RandomState;
  int index_a = 0;  // k for *_state(k), a for basis_operator(a, b)
  int index_b = 0;

  /// Accepts e.g. "position_state:0", "basis_operator:1,2",
  /// "random_hermitian_operator". Throws ParseError.
  static InitialCondition parse(const std::string& text);
  std::string to_string() const;
  SpaceKind space() const;

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

/// Normalized initial vector. Random variants are reproducible per seed.
/// Throws UsageError for out-of-range indices or an unnormalizable result.
KrylovVector initial_vector(const InitialCondition& spec, int n_dim, std::uint64_t seed);

}  // namespace floqrylov
