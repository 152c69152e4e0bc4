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

#include "floqrylov/maps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace floqrylov {

namespace {

double reduce_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Phase of exp(-i pi (m+beta)^2 / N) * exp(2 pi i (m+beta) d / N), written as
// (pi/N) * x with x reduced modulo 2N. Integer parts are reduced exactly so the
// argument handed to cos/sin stays in [0, 2pi) even for large N.
double free_phase(long long m, long long d, double beta, long long n) {
  const long long two_n = 2 * n;
  auto mod = [two_n](long long v) { return ((v % two_n) + two_n) % two_n; };
  const long long int_part = mod(-m * m + 2 * m * d);
  const double frac_part = -2.0 * static_cast<double>(m) * beta - beta * beta + 2.0 * beta * static_cast<double>(d);
  double x = std::fmod(static_cast<double>(int_part) + frac_part, static_cast<double>(two_n));
  if (x < 0) x += static_cast<double>(two_n);
  return kPi * x / static_cast<double>(n);
}

// c[d + N - 1] = sum_m exp(-i pi (m+beta)^2/N) exp(2 pi i (m+beta) d/N) for
// d = n - n' in [-(N-1), N-1]. The matrix entry depends on (n, n') only
// through d, so each distinct sum is evaluated once.
std::vector<Complex> free_sums(int n_dim, double beta) {
  const long long n = n_dim;
  std::vector<Complex> sums(static_cast<std::size_t>(2 * n - 1));
  for (long long d = -(n - 1); d <= n - 1; ++d) {
    Complex acc{0.0, 0.0};
    for (long long m = 0; m < n; ++m) acc += std::polar(1.0, free_phase(m, d, beta, n));
    sums[static_cast<std::size_t>(d + n - 1)] = acc;
  }
  return sums;
}

CMatrix assemble_toral(int n_dim, double beta, const std::vector<Complex>& kick) {
  const auto sums = free_sums(n_dim, beta);
  CMatrix u(n_dim, n_dim);
  const double inv_n = 1.0 / n_dim;
  for (int col = 0; col < n_dim; ++col) {
    for (int row = 0; row < n_dim; ++row) {
      u(row, col) = inv_n * kick[static_cast<std::size_t>(row)] *
                    sums[static_cast<std::size_t>(row - col + n_dim - 1)];
    }
  }
  return u;
}

}  // namespace

FloquetParams FloquetParams::make(int n_dim, double kappa, double alpha, double beta) {
  if (n_dim < 1) throw UsageError("n_dim must be >= 1, got " + std::to_string(n_dim));
  if (!std::isfinite(kappa) || kappa < 0.0) throw UsageError("kappa must be finite and >= 0");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw UsageError("alpha and beta must be finite");
  return FloquetParams{n_dim, kappa, reduce_unit(alpha), reduce_unit(beta)};
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

UnitaryMatrix UnitaryMatrix::from_matrix(CMatrix entries, double tol) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw ValidationError("unitary matrix must be square and non-empty");
  }
  if (!entries.allFinite()) throw ValidationError("matrix has non-finite entries");
  const double defect = unitarity_defect(entries);
  if (!(defect < tol)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max|U^dag U - I| = " << defect << " (tolerance " << tol << ")";
    throw ValidationError(msg.str());
  }
  return UnitaryMatrix(std::move(entries), defect);
}

UnitaryMatrix build_toral_qkr(const FloquetParams& params) {
  const int n = params.n_dim;
  std::vector<Complex> kick(static_cast<std::size_t>(n));
  const double strength = n * params.kappa / kTwoPi;
  for (int row = 0; row < n; ++row) {
    kick[static_cast<std::size_t>(row)] = std::polar(1.0, strength * std::cos(kTwoPi * (row + params.alpha) / n));
  }
  return UnitaryMatrix::from_matrix(assemble_toral(n, params.beta, kick));
}

CMatrix toral_qkr_free_factor(int n_dim, double beta) {
  if (n_dim < 1) throw UsageError("n_dim must be >= 1");
  return assemble_toral(n_dim, beta, std::vector<Complex>(static_cast<std::size_t>(n_dim), Complex{1.0, 0.0}));
}

CMatrix fourier_matrix(int n_dim) {
  if (n_dim < 1) throw UsageError("n_dim must be >= 1");
  CMatrix f(n_dim, n_dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_dim));
  for (int row = 0; row < n_dim; ++row) {
    for (int col = 0; col < n_dim; ++col) {
      // row*col reduced mod N keeps the angle small
      const long long k = (static_cast<long long>(row) * col) % n_dim;
      f(row, col) = std::polar(scale, kTwoPi * static_cast<double>(k) / n_dim);
    }
  }
  return f;
}

UnitaryMatrix build_kicked_harper(int n_dim, double kappa) {
  if (n_dim < 1) throw UsageError("n_dim must be >= 1, got " + std::to_string(n_dim));
  if (!std::isfinite(kappa)) throw UsageError("kappa must be finite");
  const CMatrix f = fourier_matrix(n_dim);
  CVector kick(n_dim), free(n_dim);
  for (int k = 0; k < n_dim; ++k) {
    const double x = static_cast<double>(k) / n_dim;
    kick(k) = std::polar(1.0, -kappa / kTwoPi * std::cos(kTwoPi * x));
    free(k) = std::polar(1.0, -std::cos(kTwoPi * x));
  }
  CMatrix u = kick.asDiagonal() * (f * free.asDiagonal() * f.adjoint());
  return UnitaryMatrix::from_matrix(std::move(u));
}

double fold_phase(double phase) {
  double r = std::remainder(phase, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

QuasiEnergySpectrum quasi_energies(const UnitaryMatrix& u) {
  Eigen::ComplexSchur<CMatrix> schur(u.matrix(), /*computeU=*/false);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition of U failed");
  const CMatrix& t = schur.matrixT();
  QuasiEnergySpectrum out;
  out.phases.reserve(static_cast<std::size_t>(u.dim()));
  for (int a = 0; a < u.dim(); ++a) out.phases.push_back(fold_phase(-std::arg(t(a, a))));
  std::sort(out.phases.begin(), out.phases.end());
  return out;
}

std::string unitary_to_json(const CMatrix& u) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index row = 0; row < u.rows(); ++row) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index col = 0; col < u.cols(); ++col) {
      re_row.push_back(u(row, col).real());
      im_row.push_back(u(row, col).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::json doc;
  doc["n"] = u.rows();
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc.dump() + "\n";
}

CMatrix matrix_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("matrix file must hold a JSON object");
  for (const char* key : {"n", "re", "im"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw ParseError("field 'n' must be a positive integer");
  }
  const auto n = doc["n"].get<long long>();
  CMatrix m(n, n);
  auto fill = [&](const char* key, bool imag) {
    const auto& rows = doc[key];
    if (!rows.is_array() || static_cast<long long>(rows.size()) != n) {
      throw ParseError(std::string("field '") + key + "' must hold " + std::to_string(n) + " rows");
    }
    for (long long r = 0; r < n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<long long>(row.size()) != n) {
        throw ParseError(std::string("ragged row ") + std::to_string(r) + " in '" + key + "'");
      }
      for (long long c = 0; c < n; ++c) {
        const auto& v = row[static_cast<std::size_t>(c)];
        if (!v.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ParseError(std::string("non-finite entry in '") + key + "'");
        if (imag) {
          m(r, c).imag(x);
        } else {
          m(r, c).real(x);
        }
      }
    }
  };
  fill("re", false);
  fill("im", true);
  return m;
}

void save_matrix(const CMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << unitary_to_json(m);
  if (!out) throw IoError("write failed for " + path.string());
}

void save_unitary(const UnitaryMatrix& u, const std::filesystem::path& path) { save_matrix(u.matrix(), path); }

UnitaryMatrix load_unitary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return UnitaryMatrix::from_matrix(matrix_from_json(buf.str()));
}

}  // namespace floqrylov
