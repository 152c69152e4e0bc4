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

#include "floqrylov/complexity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "floqrylov/io.hpp"

namespace floqrylov {

std::string to_string(AmplitudeRoute route) {
  switch (route) {
    case AmplitudeRoute::Direct: return "direct";
    case AmplitudeRoute::Recursive: return "recursive";
    case AmplitudeRoute::HermitianOde: return "hermitian_ode";
  }
  return "unknown";
}

double AmplitudeSeries::max_norm_defect() const {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < amps.rows(); ++j) worst = std::max(worst, std::abs(amps.row(j).squaredNorm() - 1.0));
  return worst;
}

AmplitudeSeries amplitudes_direct(const KrylovBasis& basis, const Liouvillian& l, const KrylovVector& v0, int steps) {
  if (steps < 0) throw UsageError("steps must be >= 0");
  const auto& b = basis.basis;
  if (b.kind != l.space() || v0.kind() != l.space()) throw UsageError("basis, Liouvillian and initial vector spaces differ");
  if (b.n_hilbert != l.dim_hilbert() || v0.dim_hilbert() != l.dim_hilbert()) {
    throw UsageError("basis, Liouvillian and initial vector dimensions differ");
  }
  if (b.size() != basis.dk || basis.dk < 1) throw UsageError("malformed Krylov basis");
  if ((b.columns.col(0) - v0.flat()).norm() > 1e-12 * std::sqrt(1.0 / b.weight())) {
    throw UsageError("initial vector is not the first vector of this Krylov basis");
  }

  AmplitudeSeries out;
  out.steps = steps;
  out.dk = basis.dk;
  out.route = AmplitudeRoute::Direct;
  out.amps = CMatrix::Zero(steps + 1, basis.dk);
  out.amps(0, 0) = 1.0;

  CVector v = v0.flat();
  CVector next;
  for (int j = 1; j <= steps; ++j) {
    apply_flat(l, v, next);
    v.swap(next);
    out.amps.row(j) = b.project(v).transpose();
  }
  return out;
}

AmplitudeSeries amplitudes_recursive(const CMatrix& hessenberg, int dk, int steps) {
  if (steps < 0) throw UsageError("steps must be >= 0");
  if (dk < 1 || hessenberg.rows() != dk || hessenberg.cols() != dk) {
    throw UsageError("Hessenberg matrix must be dk x dk");
  }
  for (int k = 0; k < dk; ++k) {
    for (int j = k + 2; j < dk; ++j) {
      if (hessenberg(j, k) != Complex(0.0, 0.0)) throw UsageError("matrix is not upper Hessenberg");
    }
  }
  AmplitudeSeries out;
  out.steps = steps;
  out.dk = dk;
  out.route = AmplitudeRoute::Recursive;
  out.amps = CMatrix::Zero(steps + 1, dk);
  CVector phi = CVector::Zero(dk);
  phi(0) = 1.0;
  out.amps.row(0) = phi.transpose();
  CVector next(dk);
  for (int j = 1; j <= steps; ++j) {
    // phi_i^{j} = sum_{l >= i-1} h_{i,l} phi_l^{j-1}
    next.noalias() = hessenberg * phi;
    phi.swap(next);
    out.amps.row(j) = phi.transpose();
  }
  return out;
}

AmplitudeSeries evolve_chain(const std::vector<double>& a, const std::vector<double>& b,
                             const std::vector<double>& times) {
  const auto dk = static_cast<Eigen::Index>(a.size());
  if (dk < 1) throw UsageError("chain needs at least one site");
  if (static_cast<Eigen::Index>(b.size()) != dk - 1) throw UsageError("need exactly dk - 1 couplings");
  for (double x : a) {
    if (!std::isfinite(x)) throw UsageError("chain diagonal must be finite");
  }
  for (double x : b) {
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("chain couplings must be positive and finite");
  }
  if (times.empty()) throw UsageError("no evaluation times");
  for (double t : times) {
    if (!std::isfinite(t)) throw UsageError("times must be finite");
  }
  if (times.front() < 0.0 || !std::is_sorted(times.begin(), times.end())) {
    throw UsageError("times must be ascending and non-negative");
  }

  RMatrix t = RMatrix::Zero(dk, dk);
  for (Eigen::Index n = 0; n < dk; ++n) t(n, n) = a[static_cast<std::size_t>(n)];
  for (Eigen::Index n = 0; n + 1 < dk; ++n) t(n, n + 1) = t(n + 1, n) = b[static_cast<std::size_t>(n)];
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(t);
  if (eig.info() != Eigen::Success) throw NumericalError("tridiagonal eigendecomposition failed");
  const RMatrix& vecs = eig.eigenvectors();
  const RVector& vals = eig.eigenvalues();
  const RVector overlap0 = vecs.row(0).transpose();  // V^T e_0

  // psi(t) = V exp(i Lambda t) V^T e_0 solves psi' = i T psi; phi_n = i^{-n} psi_n
  // turns that into the chain equation with alternating-sign couplings.
  static const Complex kInvIPowers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  AmplitudeSeries out;
  out.steps = static_cast<int>(times.size()) - 1;
  out.dk = static_cast<int>(dk);
  out.route = AmplitudeRoute::HermitianOde;
  out.amps = CMatrix::Zero(static_cast<Eigen::Index>(times.size()), dk);
  CVector coeffs(dk);
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (times[j] == 0.0) {
      out.amps(static_cast<Eigen::Index>(j), 0) = 1.0;
      continue;
    }
    for (Eigen::Index e = 0; e < dk; ++e) coeffs(e) = overlap0(e) * std::polar(1.0, vals(e) * times[j]);
    const CVector psi = vecs.cast<Complex>() * coeffs;
    for (Eigen::Index n = 0; n < dk; ++n) out.amps(static_cast<Eigen::Index>(j), n) = kInvIPowers[n % 4] * psi(n);
  }
  return out;
}

AmplitudeSeries evolve_hermitian_amplitudes(const LanczosData& data, const std::vector<double>& times) {
  if (data.dk < 1 || static_cast<int>(data.a.size()) != data.dk) throw UsageError("malformed Lanczos data");
  return evolve_chain(data.a, data.b, times);
}

std::vector<double> k_complexity(const AmplitudeSeries& amps) {
  std::vector<double> out(static_cast<std::size_t>(amps.amps.rows()));
  for (Eigen::Index j = 0; j < amps.amps.rows(); ++j) {
    double k = 0.0;
    for (Eigen::Index n = 1; n < amps.amps.cols(); ++n) k += static_cast<double>(n) * std::norm(amps.amps(j, n));
    out[static_cast<std::size_t>(j)] = k;
  }
  return out;
}

std::vector<double> k_entropy(const AmplitudeSeries& amps) {
  std::vector<double> out(static_cast<std::size_t>(amps.amps.rows()));
  for (Eigen::Index j = 0; j < amps.amps.rows(); ++j) {
    double s = 0.0;
    for (Eigen::Index n = 0; n < amps.amps.cols(); ++n) {
      const double p = std::norm(amps.amps(j, n));
      if (p > 0.0) s -= p * std::log(p);
    }
    out[static_cast<std::size_t>(j)] = s;
  }
  return out;
}

std::pair<double, double> saturation_stats(const std::vector<double>& values, double window_fraction) {
  if (values.empty()) throw UsageError("saturation_stats needs a non-empty series");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) throw UsageError("window_fraction must lie in (0, 1]");
  const auto total = values.size();
  auto window = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(total)));
  window = std::clamp<std::size_t>(window, 1, total);
  // Welford update over the trailing window
  double mean = 0.0, m2 = 0.0;
  std::size_t count = 0;
  for (std::size_t i = total - window; i < total; ++i) {
    ++count;
    const double delta = values[i] - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (values[i] - mean);
  }
  return {mean, std::sqrt(std::max(0.0, m2 / static_cast<double>(count)))};
}

ComplexityTrace complexity_trace(const AmplitudeSeries& amps, double window_fraction) {
  ComplexityTrace trace;
  trace.k_values = k_complexity(amps);
  trace.s_values = k_entropy(amps);
  std::tie(trace.saturation_mean, trace.saturation_std) = saturation_stats(trace.k_values, window_fraction);
  return trace;
}

std::string complexity_csv(const ComplexityTrace& trace) {
  std::string out = "j,k_complexity,k_entropy\n";
  for (std::size_t j = 0; j < trace.k_values.size(); ++j) {
    out += std::to_string(j) + "," + format_double(trace.k_values[j]) + "," + format_double(trace.s_values[j]) + "\n";
  }
  return out;
}

std::string amplitudes_csv(const AmplitudeSeries& amps) {
  std::string out = "j,n,re,im\n";
  for (Eigen::Index j = 0; j < amps.amps.rows(); ++j) {
    for (Eigen::Index n = 0; n < amps.amps.cols(); ++n) {
      out += std::to_string(j) + "," + std::to_string(n) + "," + format_double(amps.amps(j, n).real()) + "," +
             format_double(amps.amps(j, n).imag()) + "\n";
    }
  }
  return out;
}

}  // namespace floqrylov
