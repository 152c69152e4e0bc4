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

// Reference implementations used only by the tests. Each one is written
// independently of the library code it checks: slow, direct, no shared helpers.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Toral kicked rotor entry by entry, straight from the double sum.
inline Mat toral_qkr(int n, double kappa, double alpha, double beta) {
  Mat u(n, n);
  const double nn = n;
  for (int r = 0; r < n; ++r) {
    const cd kick = std::exp(cd(0.0, nn * kappa / (2 * kPi) * std::cos(2 * kPi * (r + alpha) / nn)));
    for (int c = 0; c < n; ++c) {
      cd sum = 0.0;
      for (int m = 0; m < n; ++m) {
        const double mb = m + beta;
        sum += std::exp(cd(0.0, -kPi * mb * mb / nn)) * std::exp(cd(0.0, 2 * kPi * mb * (r - c) / nn));
      }
      u(r, c) = kick * sum / nn;
    }
  }
  return u;
}

// Same sum in long double, for rank decisions that need headroom below 1e-16.
using cld = std::complex<long double>;
using MatL = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;

inline MatL toral_qkr_long(int n, long double kappa, long double alpha, long double beta) {
  const long double pi = 3.141592653589793238462643383279502884L;
  MatL u(n, n);
  const long double nn = n;
  for (int r = 0; r < n; ++r) {
    const long double kick_phase = nn * kappa / (2 * pi) * std::cos(2 * pi * (r + alpha) / nn);
    for (int c = 0; c < n; ++c) {
      cld sum = 0.0L;
      for (int m = 0; m < n; ++m) {
        const long double mb = m + beta;
        const long double phase = -pi * mb * mb / nn + 2 * pi * mb * (r - c) / nn;
        sum += cld(std::cos(phase), std::sin(phase));
      }
      u(r, c) = cld(std::cos(kick_phase), std::sin(kick_phase)) * sum / nn;
    }
  }
  return u;
}

// Kicked Harper as the product of its two factors, each built on its own.
inline Mat kicked_harper(int n, double kappa) {
  Mat kick = Mat::Zero(n, n);
  for (int q = 0; q < n; ++q) kick(q, q) = std::exp(cd(0.0, -kappa / (2 * kPi) * std::cos(2 * kPi * q / n)));
  Mat dft(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) dft(a, b) = std::exp(cd(0.0, 2 * kPi * a * b / n)) / std::sqrt(double(n));
  }
  Mat free = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p) free(p, p) = std::exp(cd(0.0, -std::cos(2 * kPi * p / n)));
  return kick * (dft * free * dft.adjoint());
}

// Frobenius-weighted inner product (1/N) tr(A^dag B) written as a double loop.
inline cd frobenius(const Mat& a, const Mat& b) {
  cd acc = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) acc += std::conj(a(i, j)) * b(i, j);
  }
  return acc / double(a.rows());
}

// Plain Arnoldi by modified Gram-Schmidt on the Krylov sequence, one pass,
// h_{j,k} = <K_j | L K_k>. Small inputs only.
struct NaiveArnoldi {
  std::vector<Vec> basis;
  Mat h;
};

template <class Apply>
NaiveArnoldi naive_arnoldi(const Vec& v0, Apply apply, double weight, int max_dim, double tol) {
  NaiveArnoldi out;
  const auto ip = [weight](const Vec& a, const Vec& b) { return weight * a.dot(b); };
  out.basis.push_back(v0);
  while (static_cast<int>(out.basis.size()) < max_dim) {
    Vec w = apply(out.basis.back());
    for (const auto& k : out.basis) w -= ip(k, w) * k;
    const double nrm = std::sqrt(ip(w, w).real());
    if (nrm < tol) break;
    out.basis.push_back(w / nrm);
  }
  const int d = static_cast<int>(out.basis.size());
  out.h = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const Vec lk = apply(out.basis[static_cast<std::size_t>(k)]);
    for (int j = 0; j < d; ++j) out.h(j, k) = ip(out.basis[static_cast<std::size_t>(j)], lk);
  }
  return out;
}

// Numerical rank of the Krylov matrix [v, Lv, ..., L^{m-1} v] (columns
// normalized), counted as singular values above `tol`. Long double.
template <class ApplyL>
int krylov_rank(const Eigen::Matrix<cld, Eigen::Dynamic, 1>& v0, ApplyL apply, int m, long double tol) {
  MatL k(v0.size(), m);
  Eigen::Matrix<cld, Eigen::Dynamic, 1> v = v0;
  for (int j = 0; j < m; ++j) {
    k.col(j) = v / v.norm();
    v = apply(v);
  }
  Eigen::JacobiSVD<MatL> svd(k);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > tol ? 1 : 0;
  return rank;
}

// Classical fourth-order Runge-Kutta for
// phi_n' = i a_n phi_n + b_n phi_{n-1} - b_{n+1} phi_{n+1}, with b[n-1] = b_n.
inline Vec rk4_chain(const std::vector<double>& a, const std::vector<double>& b, double t, double dt) {
  const int d = static_cast<int>(a.size());
  const auto rhs = [&](const Vec& phi) {
    Vec out(d);
    for (int n = 0; n < d; ++n) {
      cd v = cd(0.0, a[static_cast<std::size_t>(n)]) * phi(n);
      if (n > 0) v += b[static_cast<std::size_t>(n - 1)] * phi(n - 1);
      if (n + 1 < d) v -= b[static_cast<std::size_t>(n)] * phi(n + 1);
      out(n) = v;
    }
    return out;
  };
  Vec phi = Vec::Zero(d);
  phi(0) = 1.0;
  const int steps = static_cast<int>(std::llround(t / dt));
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = rhs(phi);
    const Vec k2 = rhs(phi + 0.5 * h * k1);
    const Vec k3 = rhs(phi + 0.5 * h * k2);
    const Vec k4 = rhs(phi + h * k3);
    phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return phi;
}

// Mean, then population variance, in two separate passes.
inline std::pair<double, double> two_pass(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= double(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / double(x.size()))};
}

// Mean consecutive-gap ratio of GUE spectra: `samples` matrices of size n,
// (A + A^dag)/2 with complex Gaussian A, ratios over the sorted eigenvalues
// without wraparound.
inline double gue_r_reference(int samples, int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double acc = 0.0;
  long long count = 0;
  for (int s = 0; s < samples; ++s) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double re = g(gen);
        const double im = g(gen);
        a(i, j) = cd(re, im);
      }
    }
    const Mat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> eig(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd e = eig.eigenvalues();
    for (int i = 0; i + 2 < n; ++i) {
      const double s1 = e(i + 1) - e(i);
      const double s2 = e(i + 2) - e(i + 1);
      acc += std::min(s1, s2) / std::max(s1, s2);
      ++count;
    }
  }
  return acc / double(count);
}

// Independent unit-mean exponential draws.
inline std::vector<double> exponential_samples(std::size_t count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> out(count);
  for (auto& v : out) v = e(gen);
  return out;
}

// Haar-random unitary from the QR of a complex Gaussian matrix, with the
// phases of R's diagonal divided out.
inline Mat haar_unitary(int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = g(gen);
      const double im = g(gen);
      z(i, j) = cd(re, im);
    }
  }
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

// exp(-iH) by Pade scaling and squaring, no eigendecomposition.
inline Mat expm_minus_i(const Mat& h) {
  const Mat a = cd(0.0, -1.0) * h;
  return a.exp();
}

inline Mat random_hermitian(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = g(gen);
      const double im = g(gen);
      a(i, j) = cd(re, im);
    }
  }
  return 0.5 * (a + a.adjoint());
}

}  // namespace oracle
