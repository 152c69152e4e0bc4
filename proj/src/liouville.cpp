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

#include "floqrylov/liouville.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace floqrylov {

std::string to_string(SpaceKind kind) { return kind == SpaceKind::State ? "state" : "operator"; }

std::string to_string(Liouvillian::Kind kind) {
  switch (kind) {
    case Liouvillian::Kind::UnitaryOnState: return "unitary_on_state";
    case Liouvillian::Kind::UnitaryConjugation: return "unitary_conjugation";
    case Liouvillian::Kind::HermitianOnState: return "hermitian_on_state";
    case Liouvillian::Kind::HermitianCommutator: return "hermitian_commutator";
  }
  return "unknown";
}

KrylovVector KrylovVector::state(CVector v) {
  if (v.size() == 0) throw UsageError("state vector must be non-empty");
  return KrylovVector(SpaceKind::State, CMatrix(std::move(v)));
}

KrylovVector KrylovVector::op(CMatrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw UsageError("operator must be a non-empty square matrix");
  return KrylovVector(SpaceKind::Operator, std::move(m));
}

double KrylovVector::weight() const { return kind_ == SpaceKind::State ? 1.0 : 1.0 / dim_hilbert(); }

double KrylovVector::norm() const { return std::sqrt(weight()) * values_.norm(); }

void KrylovVector::check_compatible(const KrylovVector& other) const {
  if (kind_ != other.kind_) throw UsageError("cannot combine a state with an operator");
  if (dim_hilbert() != other.dim_hilbert()) throw UsageError("Hilbert-space dimension mismatch");
}

KrylovVector& KrylovVector::operator+=(const KrylovVector& other) {
  check_compatible(other);
  values_ += other.values_;
  return *this;
}

KrylovVector& KrylovVector::operator-=(const KrylovVector& other) {
  check_compatible(other);
  values_ -= other.values_;
  return *this;
}

KrylovVector& KrylovVector::operator*=(Complex s) {
  values_ *= s;
  return *this;
}

Complex inner(const KrylovVector& a, const KrylovVector& b) {
  if (a.kind() != b.kind()) throw UsageError("inner product between a state and an operator");
  if (a.dim_hilbert() != b.dim_hilbert()) throw UsageError("inner product dimension mismatch");
  return a.weight() * a.flat().dot(b.flat());  // Eigen's dot conjugates the left argument
}

namespace {

void require_hermitian(const CMatrix& h) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw ValidationError("Hamiltonian must be square and non-empty");
  const double asym = max_abs(h - h.adjoint());
  if (!(asym < Liouvillian::kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max|H - H^dag| = " << asym;
    throw ValidationError(msg.str());
  }
}

}  // namespace

Liouvillian Liouvillian::unitary_on_state(const UnitaryMatrix& u) { return {Kind::UnitaryOnState, u.matrix()}; }

Liouvillian Liouvillian::unitary_conjugation(const UnitaryMatrix& u) { return {Kind::UnitaryConjugation, u.matrix()}; }

Liouvillian Liouvillian::hermitian_on_state(const CMatrix& h) {
  require_hermitian(h);
  return {Kind::HermitianOnState, h};
}

Liouvillian Liouvillian::hermitian_commutator(const CMatrix& h) {
  require_hermitian(h);
  return {Kind::HermitianCommutator, h};
}

SpaceKind Liouvillian::space() const {
  return (kind_ == Kind::UnitaryOnState || kind_ == Kind::HermitianOnState) ? SpaceKind::State : SpaceKind::Operator;
}

bool Liouvillian::is_hermitian() const { return kind_ == Kind::HermitianOnState || kind_ == Kind::HermitianCommutator; }

int Liouvillian::max_krylov_dim() const {
  const int n = dim_hilbert();
  return space() == SpaceKind::State ? n : n * n - n + 1;
}

void apply_flat(const Liouvillian& l, const CVector& in, CVector& out) {
  const Eigen::Index n = l.dim_hilbert();
  const CMatrix& m = l.matrix();
  switch (l.kind()) {
    case Liouvillian::Kind::UnitaryOnState:
    case Liouvillian::Kind::HermitianOnState:
      out.noalias() = m * in;
      return;
    case Liouvillian::Kind::UnitaryConjugation: {
      Eigen::Map<const CMatrix> x(in.data(), n, n);
      out.resize(n * n);
      Eigen::Map<CMatrix> y(out.data(), n, n);
      CMatrix tmp = x * m;
      y.noalias() = m.adjoint() * tmp;
      return;
    }
    case Liouvillian::Kind::HermitianCommutator: {
      Eigen::Map<const CMatrix> x(in.data(), n, n);
      out.resize(n * n);
      Eigen::Map<CMatrix> y(out.data(), n, n);
      y.noalias() = m * x;
      y.noalias() -= x * m;
      return;
    }
  }
}

KrylovVector apply(const Liouvillian& l, const KrylovVector& v) {
  if (v.kind() != l.space()) {
    throw UsageError(to_string(l.kind()) + " cannot act on a " + to_string(v.kind()) + " vector");
  }
  if (v.dim_hilbert() != l.dim_hilbert()) throw UsageError("Liouvillian/vector dimension mismatch");
  CVector out;
  apply_flat(l, CVector(v.flat()), out);
  if (v.kind() == SpaceKind::State) return KrylovVector::state(std::move(out));
  const int n = l.dim_hilbert();
  return KrylovVector::op(Eigen::Map<const CMatrix>(out.data(), n, n));
}

// ---------------------------------------------------------------------------
// Initial conditions

namespace {

struct NamedKind {
  const char* name;
  InitialCondition::Kind kind;
  int n_indices;
};

constexpr NamedKind kKinds[] = {
    {"position_state", InitialCondition::Kind::PositionState, 1},
    {"momentum_state", InitialCondition::Kind::MomentumState, 1},
    {"uniform_state", InitialCondition::Kind::UniformState, 0},
    {"random_state", InitialCondition::Kind::RandomState, 0},
    {"position_operator", InitialCondition::Kind::PositionOperator, 0},
    {"momentum_operator", InitialCondition::Kind::MomentumOperator, 0},
    {"random_hermitian_operator", InitialCondition::Kind::RandomHermitianOperator, 0},
    {"basis_operator", InitialCondition::Kind::BasisOperator, 2},
    {"identity_operator", InitialCondition::Kind::IdentityOperator, 0},
};

int parse_index(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad index in initial condition '" + whole + "'");
  }
  if (used != s.size() || v < 0 || v > 1'000'000'000) throw ParseError("bad index in initial condition '" + whole + "'");
  return static_cast<int>(v);
}

KrylovVector normalized(KrylovVector v, const char* what) {
  const double nrm = v.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw UsageError(std::string(what) + " has zero norm at this dimension");
  v *= Complex(1.0 / nrm, 0.0);
  return v;
}

}  // namespace

InitialCondition InitialCondition::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  for (const auto& entry : kKinds) {
    if (name != entry.name) continue;
    InitialCondition ic;
    ic.kind = entry.kind;
    if (entry.n_indices == 0) {
      if (colon != std::string::npos) throw ParseError("'" + name + "' takes no arguments");
    } else if (entry.n_indices == 1) {
      if (args.empty()) throw ParseError("'" + name + "' needs an index, e.g. " + name + ":0");
      ic.index_a = parse_index(args, text);
    } else {
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw ParseError("'" + name + "' needs two indices, e.g. " + name + ":0,1");
      ic.index_a = parse_index(args.substr(0, comma), text);
      ic.index_b = parse_index(args.substr(comma + 1), text);
    }
    return ic;
  }
  throw ParseError("unknown initial condition '" + text + "'");
}

std::string InitialCondition::to_string() const {
  for (const auto& entry : kKinds) {
    if (entry.kind != kind) continue;
    std::string s = entry.name;
    if (entry.n_indices == 1) s += ":" + std::to_string(index_a);
    if (entry.n_indices == 2) s += ":" + std::to_string(index_a) + "," + std::to_string(index_b);
    return s;
  }
  return "unknown";
}

SpaceKind InitialCondition::space() const {
  switch (kind) {
    case Kind::PositionState:
    case Kind::MomentumState:
    case Kind::UniformState:
    case Kind::RandomState:
      return SpaceKind::State;
    default:
      return SpaceKind::Operator;
  }
}

KrylovVector initial_vector(const InitialCondition& spec, int n_dim, std::uint64_t seed) {
  if (n_dim < 1) throw UsageError("n_dim must be >= 1");
  const auto check_index = [n_dim](int k) {
    if (k < 0 || k >= n_dim) {
      throw UsageError("index " + std::to_string(k) + " out of range for N = " + std::to_string(n_dim));
    }
  };
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = n_dim;

  switch (spec.kind) {
    case InitialCondition::Kind::PositionState: {
      check_index(spec.index_a);
      CVector v = CVector::Zero(n);
      v(spec.index_a) = 1.0;
      return KrylovVector::state(std::move(v));
    }
    case InitialCondition::Kind::MomentumState: {
      check_index(spec.index_a);
      return normalized(KrylovVector::state(fourier_matrix(n).col(spec.index_a)), "momentum_state");
    }
    case InitialCondition::Kind::UniformState:
      return normalized(KrylovVector::state(CVector::Ones(n)), "uniform_state");
    case InitialCondition::Kind::RandomState: {
      CVector v(n);
      for (int i = 0; i < n; ++i) {
        const double re = gauss(gen);
        const double im = gauss(gen);
        v(i) = Complex(re, im);
      }
      return normalized(KrylovVector::state(std::move(v)), "random_state");
    }
    case InitialCondition::Kind::PositionOperator: {
      CMatrix q = CMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) q(i, i) = static_cast<double>(i) / n;
      return normalized(KrylovVector::op(std::move(q)), "position_operator");
    }
    case InitialCondition::Kind::MomentumOperator: {
      const CMatrix f = fourier_matrix(n);
      CVector p(n);
      for (int m = 0; m < n; ++m) p(m) = static_cast<double>(m) / n;
      CMatrix mom = f * p.asDiagonal() * f.adjoint();
      return normalized(KrylovVector::op(std::move(mom)), "momentum_operator");
    }
    case InitialCondition::Kind::RandomHermitianOperator: {
      CMatrix a(n, n);
      for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
          const double re = gauss(gen);
          const double im = gauss(gen);
          a(r, c) = Complex(re, im);
        }
      }
      CMatrix h = 0.5 * (a + a.adjoint());
      return normalized(KrylovVector::op(std::move(h)), "random_hermitian_operator");
    }
    case InitialCondition::Kind::BasisOperator: {
      check_index(spec.index_a);
      check_index(spec.index_b);
      CMatrix e = CMatrix::Zero(n, n);
      e(spec.index_a, spec.index_b) = 1.0;
      return normalized(KrylovVector::op(std::move(e)), "basis_operator");
    }
    case InitialCondition::Kind::IdentityOperator:
      return KrylovVector::op(CMatrix::Identity(n, n));
  }
  throw UsageError("unhandled initial condition");
}

}  // namespace floqrylov
