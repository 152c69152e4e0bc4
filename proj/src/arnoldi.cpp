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

#include "floqrylov/arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "floqrylov/io.hpp"

namespace floqrylov {

namespace {

constexpr double kNormalizedStartTolerance = 1e-10;
// Residual overlap (relative to the candidate norm) that triggers a third pass
// and, if it survives, a NumericalError.
constexpr double kThirdPassThreshold = 1e-13;
constexpr double kOrthogonalityFailure = 1e-8;

}  // namespace

KrylovVector OrthonormalBasis::vector(int i) const {
  if (i < 0 || i >= size()) throw UsageError("basis index out of range");
  if (kind == SpaceKind::State) return KrylovVector::state(columns.col(i));
  return KrylovVector::op(Eigen::Map<const CMatrix>(columns.col(i).data(), n_hilbert, n_hilbert));
}

CVector OrthonormalBasis::project(const CVector& flat) const {
  return weight() * (columns.adjoint() * flat);
}

double OrthonormalBasis::orthonormality_defect() const {
  if (size() == 0) return 0.0;
  const CMatrix gram = weight() * (columns.adjoint() * columns);
  return max_abs(gram - CMatrix::Identity(size(), size()));
}

namespace detail {

WorkingOperator::WorkingOperator(const Liouvillian& l, const KrylovVector& v0, Representation rep)
    : l_(&l), rep_(rep), space_(l.space()), n_(l.dim_hilbert()), weight_(v0.weight()) {
  if (rep_ == Representation::Native) {
    start_ = v0.flat();
    return;
  }
  // eigenvalues: quasi-energy phases for unitaries, energies for Hermitian generators
  RVector values(n_);
  if (l.is_hermitian()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(l.matrix());
    if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition of the generator failed");
    eigvecs_ = eig.eigenvectors();
    values = eig.eigenvalues();
  } else {
    // Schur vectors of a unitary form an orthonormal eigenbasis
    Eigen::ComplexSchur<CMatrix> schur(l.matrix(), /*computeU=*/true);
    if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition of the generator failed");
    eigvecs_ = schur.matrixU();
    for (int a = 0; a < n_; ++a) values(a) = std::arg(schur.matrixT()(a, a));
  }

  const bool hermitian = l.is_hermitian();
  if (space_ == SpaceKind::State) {
    multipliers_.resize(n_);
    for (int a = 0; a < n_; ++a) multipliers_(a) = hermitian ? Complex(values(a), 0.0) : std::polar(1.0, values(a));
    start_ = eigvecs_.adjoint() * v0.flat();
    return;
  }

  // U^dag X U scales X'_{ab} by e^{i(theta_b - theta_a)}; [H, X] by E_a - E_b.
  // The a == b entries come out exactly 1 (or 0).
  multipliers_.resize(static_cast<Eigen::Index>(n_) * n_);
  for (int b = 0; b < n_; ++b) {
    for (int a = 0; a < n_; ++a) {
      multipliers_(a + static_cast<Eigen::Index>(b) * n_) =
          hermitian ? Complex(values(a) - values(b), 0.0) : std::polar(1.0, values(b) - values(a));
    }
  }
  CMatrix x = eigvecs_.adjoint() * v0.values() * eigvecs_;
  start_ = Eigen::Map<const CVector>(x.data(), x.size());
  const CVector diag = x.diagonal();
  const double nrm = diag.norm();
  // relative to the start vector's flat norm, sqrt(N)
  if (nrm > 1e-12 * std::sqrt(static_cast<double>(n_))) reachable_ = diag / nrm;
}

void WorkingOperator::apply(const CVector& in, CVector& out) const {
  if (rep_ == Representation::Native) {
    apply_flat(*l_, in, out);
    return;
  }
  out = multipliers_.cwiseProduct(in);
}

void WorkingOperator::deflate(CVector& w) const {
  if (rep_ == Representation::Native || space_ != SpaceKind::Operator) return;
  const auto stride = static_cast<Eigen::Index>(n_) + 1;
  CVector diag(n_);
  for (int a = 0; a < n_; ++a) diag(a) = w(a * stride);
  CVector keep = CVector::Zero(n_);
  if (reachable_.size() > 0) keep = reachable_.dot(diag) * reachable_;
  for (int a = 0; a < n_; ++a) w(a * stride) = keep(a);
}

CMatrix WorkingOperator::to_native(const CMatrix& cols) const {
  if (rep_ == Representation::Native) return cols;
  if (space_ == SpaceKind::State) return eigvecs_ * cols;
  CMatrix out(cols.rows(), cols.cols());
  for (Eigen::Index k = 0; k < cols.cols(); ++k) {
    Eigen::Map<const CMatrix> x(cols.col(k).data(), n_, n_);
    Eigen::Map<CMatrix>(out.col(k).data(), n_, n_).noalias() = eigvecs_ * x * eigvecs_.adjoint();
  }
  return out;
}

void check_start_vector(const Liouvillian& l, const KrylovVector& v0) {
  if (v0.kind() != l.space()) {
    throw UsageError("initial " + to_string(v0.kind()) + " vector does not match " + to_string(l.kind()));
  }
  if (v0.dim_hilbert() != l.dim_hilbert()) throw UsageError("initial vector dimension does not match the Liouvillian");
  const double nrm = v0.norm();
  if (!(std::abs(nrm - 1.0) < kNormalizedStartTolerance)) {
    std::ostringstream msg;
    msg << "initial vector must be normalized (norm = " << nrm << ")";
    throw UsageError(msg.str());
  }
}

CVector reorthogonalize(const CMatrix& q, int count, double weight, CVector& w, int step, double tol) {
  const auto basis = q.leftCols(count);
  CVector coeffs = CVector::Zero(count);
  for (int pass = 0; pass < 3; ++pass) {
    CVector c = weight * (basis.adjoint() * w);
    w.noalias() -= basis * c;
    coeffs += c;
    if (pass == 0) continue;
    const double nrm = std::sqrt(weight) * w.norm();
    if (nrm < tol) break;  // null candidate, discarded by the caller
    const double overlap = (weight * (basis.adjoint() * w)).cwiseAbs().maxCoeff() / nrm;
    if (overlap < kThirdPassThreshold) break;
    if (pass == 2 && overlap > kOrthogonalityFailure) {
      std::ostringstream msg;
      msg << "orthogonality lost at Krylov step " << step << " (residual overlap " << overlap << ")";
      throw NumericalError(msg.str());
    }
  }
  return coeffs;
}

}  // namespace detail

KrylovBasis arnoldi_iterate(const Liouvillian& l, const KrylovVector& v0, int max_dim, double tol,
                            Representation rep) {
  detail::check_start_vector(l, v0);
  if (max_dim < 1) throw UsageError("max_dim must be >= 1");
  if (!(tol > 0.0)) throw UsageError("tol must be > 0");

  const int cap = std::min(max_dim, l.max_krylov_dim());
  const Eigen::Index len = v0.flat().size();
  const detail::WorkingOperator op(l, v0, rep);
  const double weight = op.weight();

  CMatrix q(len, cap);
  CMatrix lq(len, cap);  // L K_k, kept for the final h recomputation
  std::vector<double> norms;
  q.col(0) = op.start();

  KrylovBasis out;
  int count = 1;
  CVector w;
  for (;;) {
    const int k = count - 1;
    op.apply(q.col(k), w);
    lq.col(k) = w;
    op.deflate(w);
    detail::reorthogonalize(q, count, weight, w, count, tol);
    // rounding in the subtraction refills the deflated directions; the
    // projector's range holds every basis vector, so orthogonality survives
    op.deflate(w);
    const double nrm = std::sqrt(weight) * w.norm();
    if (!std::isfinite(nrm)) throw NumericalError("non-finite Krylov candidate at step " + std::to_string(count));
    if (nrm < tol) {
      out.terminated = true;
      break;
    }
    if (count == cap) break;
    q.col(count) = w / nrm;
    norms.push_back(nrm);
    ++count;
  }

  out.dk = count;
  out.basis.kind = v0.kind();
  out.basis.n_hilbert = v0.dim_hilbert();

  const CMatrix full = weight * (q.leftCols(count).adjoint() * lq.leftCols(count));
  out.basis.columns = op.to_native(q.leftCols(count));
  // exact for the first vector; the round trip through the eigenbasis is not
  out.basis.columns.col(0) = v0.flat();
  out.hessenberg = CMatrix::Zero(count, count);
  for (int k = 0; k < count; ++k) {
    for (int j = 0; j <= k; ++j) out.hessenberg(j, k) = full(j, k);
    if (k + 1 < count) out.hessenberg(k + 1, k) = norms[static_cast<std::size_t>(k)];
  }
  return out;
}

int krylov_dimension(const Liouvillian& l, const KrylovVector& v0, double tol, Representation rep) {
  return arnoldi_iterate(l, v0, l.max_krylov_dim(), tol, rep).dk;
}

std::vector<double> subdiagonal(const KrylovBasis& basis) { return hessenberg_diagonal(basis, 1); }

std::vector<double> hessenberg_diagonal(const KrylovBasis& basis, int offset) {
  std::vector<double> out;
  const int dk = basis.dk;
  for (int k = 0; k < dk; ++k) {
    const int j = k + offset;
    if (j < 0 || j >= dk) continue;
    out.push_back(offset == 1 ? basis.hessenberg(j, k).real() : std::abs(basis.hessenberg(j, k)));
  }
  return out;
}

std::string hessenberg_csv(const CMatrix& h) {
  std::string out = "j,k,re,im\n";
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    for (Eigen::Index j = 0; j <= std::min<Eigen::Index>(k + 1, h.rows() - 1); ++j) {
      out += std::to_string(j) + "," + std::to_string(k) + "," + format_double(h(j, k).real()) + "," +
             format_double(h(j, k).imag()) + "\n";
    }
  }
  return out;
}

double arnoldi_reconstruction_error(const Liouvillian& l, const KrylovBasis& basis) {
  const auto& b = basis.basis;
  double worst = 0.0;
  CVector w;
  for (int k = 0; k + 1 < basis.dk; ++k) {
    apply_flat(l, b.columns.col(k), w);
    w.noalias() -= b.columns.leftCols(k + 2) * basis.hessenberg.col(k).head(k + 2);
    worst = std::max(worst, std::sqrt(b.weight()) * w.norm());
  }
  return worst;
}

}  // namespace floqrylov
