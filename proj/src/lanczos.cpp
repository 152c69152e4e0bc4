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

#include "floqrylov/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "floqrylov/io.hpp"

namespace floqrylov {

LanczosData lanczos_iterate(const Liouvillian& l, const KrylovVector& v0, int max_dim, double tol,
                            Representation rep) {
  if (!l.is_hermitian()) throw UsageError("Lanczos needs a Hermitian Liouvillian, got " + to_string(l.kind()));
  detail::check_start_vector(l, v0);
  if (max_dim < 1) throw UsageError("max_dim must be >= 1");
  if (!(tol > 0.0)) throw UsageError("tol must be > 0");

  const int cap = std::min(max_dim, l.max_krylov_dim());
  const Eigen::Index len = v0.flat().size();
  const detail::WorkingOperator op(l, v0, rep);
  const double weight = op.weight();
  CMatrix q(len, cap);
  q.col(0) = op.start();

  LanczosData out;
  int count = 1;
  CVector w;
  for (;;) {
    const int n = count - 1;
    op.apply(q.col(n), w);
    const Complex an = weight * q.col(n).dot(w);
    if (std::abs(an.imag()) > 1e-8) {
      std::ostringstream msg;
      msg << "complex diagonal Lanczos coefficient at step " << n << " (Im a = " << an.imag() << ")";
      throw NumericalError(msg.str());
    }
    out.a.push_back(an.real());
    w.noalias() -= an.real() * q.col(n);
    if (n > 0) w.noalias() -= out.b.back() * q.col(n - 1);
    op.deflate(w);
    detail::reorthogonalize(q, count, weight, w, count, tol);
    op.deflate(w);
    const double bn = std::sqrt(weight) * w.norm();
    if (!std::isfinite(bn)) throw NumericalError("non-finite Lanczos candidate at step " + std::to_string(count));
    if (bn < tol) {
      out.terminated = true;
      break;
    }
    if (count == cap) break;
    q.col(count) = w / bn;
    out.b.push_back(bn);
    ++count;
  }
  out.dk = count;
  out.basis.kind = v0.kind();
  out.basis.n_hilbert = v0.dim_hilbert();
  out.basis.columns = op.to_native(q.leftCols(count));
  out.basis.columns.col(0) = v0.flat();
  return out;
}

double lanczos_reconstruction_error(const Liouvillian& l, const LanczosData& data) {
  const auto& cols = data.basis.columns;
  double worst = 0.0;
  CVector w;
  for (int n = 0; n < data.dk; ++n) {
    apply_flat(l, cols.col(n), w);
    w -= data.a[static_cast<std::size_t>(n)] * cols.col(n);
    if (n > 0) w -= data.b[static_cast<std::size_t>(n - 1)] * cols.col(n - 1);
    if (n + 1 < data.dk) w -= data.b[static_cast<std::size_t>(n)] * cols.col(n + 1);
    // the last vector's residual is the discarded candidate; only meaningful when terminated
    if (n + 1 == data.dk && !data.terminated) continue;
    worst = std::max(worst, std::sqrt(data.basis.weight()) * w.norm());
  }
  return worst;
}

CMatrix effective_hamiltonian(const UnitaryMatrix& u) {
  Eigen::ComplexSchur<CMatrix> schur(u.matrix(), /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition of U failed");
  // U is normal, so its Schur form is diagonal and the Schur vectors are an
  // orthonormal eigenbasis even inside degenerate eigenspaces.
  const CMatrix& t = schur.matrixT();
  const CMatrix& z = schur.matrixU();
  RVector eps(u.dim());
  for (int a = 0; a < u.dim(); ++a) eps(a) = fold_phase(-std::arg(t(a, a)));
  CMatrix h = z * eps.asDiagonal() * z.adjoint();
  return 0.5 * (h + h.adjoint());
}

CMatrix unitary_from_hamiltonian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  if (eig.info() != Eigen::Success) throw NumericalError("Hermitian eigendecomposition failed");
  CVector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::polar(1.0, -eig.eigenvalues()(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

std::string lanczos_csv(const LanczosData& data) {
  std::string out = "n,a,b\n";
  for (int n = 0; n < data.dk; ++n) {
    out += std::to_string(n) + "," + format_double(data.a[static_cast<std::size_t>(n)]) + ",";
    if (n + 1 < data.dk) out += format_double(data.b[static_cast<std::size_t>(n)]);
    out += "\n";
  }
  return out;
}

}  // namespace floqrylov
