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

#include "floqrylov/liouville.hpp"

namespace floqrylov {

inline constexpr double kDefaultKrylovTolerance = 1e-10;

/// Ordered orthonormal Krylov vectors K_0 .. K_{D-1}, stored as the columns of
/// one flat matrix (length N for states, N^2 for operators).
struct OrthonormalBasis {
  SpaceKind kind = SpaceKind::State;
  int n_hilbert = 0;
  CMatrix columns;

  int size() const { return static_cast<int>(columns.cols()); }
  double weight() const { return kind == SpaceKind::State ? 1.0 : 1.0 / n_hilbert; }
  KrylovVector vector(int i) const;

  /// Coefficients <K_n|v> for every basis vector.
  CVector project(const CVector& flat) const;

  /// max |<K_i|K_j> - delta_ij|.
  double orthonormality_defect() const;
};

/// Coordinates the iteration works in.
///
/// Eigenbasis: the Liouvillian is diagonalized once (it is always normal) and
/// the iteration runs on its diagonal form, so applying it never mixes
/// eigen-directions. For operator spaces every candidate additionally loses
/// its component along the Liouvillian's fixed points (matrices diagonal in
/// the eigenbasis) orthogonal to the start vector's own fixed-point part; the
/// exact Krylov space never contains those directions. Basis vectors are
/// returned in the original coordinates.
///
/// Native: plain iteration on the original matrices, no deflation. Rounding
/// noise in the N-fold degenerate fixed-point subspace is amplified by the
/// iteration, so operator-space runs can overshoot the true D_K.
enum class Representation { Eigenbasis, Native };

struct KrylovBasis {
  OrthonormalBasis basis;
  CMatrix hessenberg;  // dk x dk, h_{j,k} = <K_j|L|K_k>, zero below the subdiagonal
  int dk = 0;
  bool terminated = false;  // stopped on a null candidate rather than max_dim
};

/// Arnoldi iteration with classical Gram-Schmidt applied twice per step.
///
/// Stops when the orthogonalized candidate's norm drops below `tol`
/// (terminated = true) or when `max_dim` vectors exist and the next candidate is
/// still non-null (terminated = false). Entries on and above the diagonal are
/// recomputed as <K_j|L K_k> against the final basis; subdiagonal entries are
/// the candidate norms.
///
/// Throws UsageError if v0 is not normalized or incompatible with l, and
/// NumericalError if orthogonality cannot be restored at some step.
KrylovBasis arnoldi_iterate(const Liouvillian& l, const KrylovVector& v0, int max_dim,
                            double tol = kDefaultKrylovTolerance,
                            Representation rep = Representation::Eigenbasis);

/// D_K of the minimal invariant subspace containing v0 (capped at the
/// theoretical maximum for the space).
int krylov_dimension(const Liouvillian& l, const KrylovVector& v0, double tol = kDefaultKrylovTolerance,
                     Representation rep = Representation::Eigenbasis);

/// [h_{1,0}, h_{2,1}, ..., h_{D-1,D-2}].
std::vector<double> subdiagonal(const KrylovBasis& basis);

/// Moduli |h_{k+offset,k}| along any diagonal; offset 1 is the subdiagonal,
/// 0 the main diagonal, negative offsets lie above it.
std::vector<double> hessenberg_diagonal(const KrylovBasis& basis, int offset);

/// CSV "j,k,re,im" of the stored (j <= k+1) entries.
std::string hessenberg_csv(const CMatrix& h);

/// Residual max_k ||L K_k - sum_j h_{j,k} K_j|| for k < dk - 1.
double arnoldi_reconstruction_error(const Liouvillian& l, const KrylovBasis& basis);

namespace detail {

// Generator in the iteration's working coordinates.
class WorkingOperator {
 public:
  WorkingOperator(const Liouvillian& l, const KrylovVector& v0, Representation rep);

  double weight() const { return weight_; }
  const CVector& start() const { return start_; }
  void apply(const CVector& in, CVector& out) const;
  // Removes unreachable fixed-point components (eigenbasis, operator space).
  void deflate(CVector& w) const;
  // Maps working-coordinate columns back to the original coordinates.
  CMatrix to_native(const CMatrix& cols) const;

 private:
  const Liouvillian* l_;
  Representation rep_;
  SpaceKind space_;
  int n_;
  double weight_;
  CVector start_;
  CMatrix eigvecs_;
  CVector multipliers_;  // diagonal form of the Liouvillian
  CVector reachable_;    // unit fixed-point direction of the start vector (may be empty)
};

// Shared by the Arnoldi and Lanczos engines: orthogonalizes `w` against the
// first `count` columns of `q` (twice, a third time if needed) and returns the
// accumulated projection coefficients. Throws NumericalError on failure.
CVector reorthogonalize(const CMatrix& q, int count, double weight, CVector& w, int step, double tol);

void check_start_vector(const Liouvillian& l, const KrylovVector& v0);

}  // namespace detail

}  // namespace floqrylov
