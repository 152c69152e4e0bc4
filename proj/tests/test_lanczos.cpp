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


#include <doctest.h>

#include <random>

#include "floqrylov/arnoldi.hpp"
#include "floqrylov/lanczos.hpp"
#include "floqrylov/maps.hpp"
#include "oracles.hpp"

using namespace floqrylov;

namespace {

KrylovVector start(const char* text, int n, std::uint64_t seed = 0) {
  return initial_vector(InitialCondition::parse(text), n, seed);
}

KrylovVector traceless_hermitian(int n, std::mt19937_64& gen) {
  CMatrix m = oracle::random_hermitian(n, gen);
  m -= (m.trace() / double(n)) * CMatrix::Identity(n, n);
  KrylovVector v = KrylovVector::op(m);
  return (1.0 / v.norm()) * v;
}

void check_matches_arnoldi(const Liouvillian& l, const KrylovVector& v0) {
  const auto lz = lanczos_iterate(l, v0, l.max_krylov_dim());
  const auto ar = arnoldi_iterate(l, v0, l.max_krylov_dim());
  REQUIRE(lz.dk == ar.dk);
  for (int n = 0; n < lz.dk; ++n) CHECK(std::abs(lz.a[static_cast<std::size_t>(n)] - ar.hessenberg(n, n).real()) < 1e-9);
  for (int n = 1; n < lz.dk; ++n) {
    CHECK(std::abs(lz.b[static_cast<std::size_t>(n - 1)] - ar.hessenberg(n, n - 1).real()) < 1e-9);
  }
}

}  // namespace

TEST_CASE("sigma_x two-site chain") {
  CMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const auto d = lanczos_iterate(Liouvillian::hermitian_on_state(sx), start("position_state:0", 2), 2);
  CHECK(d.dk == 2);
  CHECK(d.terminated);
  REQUIRE(d.a.size() == 2);
  REQUIRE(d.b.size() == 1);
  CHECK(std::abs(d.a[0]) < 1e-15);
  CHECK(std::abs(d.a[1]) < 1e-15);
  CHECK(std::abs(d.b[0] - 1.0) < 1e-15);
}

TEST_CASE("eigenvector start") {
  std::mt19937_64 gen(2);
  const CMatrix h = oracle::random_hermitian(5, gen);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto d = lanczos_iterate(Liouvillian::hermitian_on_state(h), KrylovVector::state(es.eigenvectors().col(1)), 5);
  CHECK(d.dk == 1);
  CHECK(d.b.empty());
  CHECK(std::abs(d.a[0] - es.eigenvalues()(1)) < 1e-12);
}

TEST_CASE("commutator on a traceless operator has vanishing diagonal") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix h = oracle::random_hermitian(3, gen);
    const auto l = Liouvillian::hermitian_commutator(h);
    const auto v0 = traceless_hermitian(3, gen);
    const auto d = lanczos_iterate(l, v0, l.max_krylov_dim());
    for (double a : d.a) CHECK(std::abs(a) < 1e-10);
    check_matches_arnoldi(l, v0);
  }
}

TEST_CASE("Lanczos invariants and Arnoldi agreement") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial;
    const CMatrix h = oracle::random_hermitian(n, gen);
    for (const auto& l : {Liouvillian::hermitian_on_state(h), Liouvillian::hermitian_commutator(h)}) {
      const auto v0 = l.space() == SpaceKind::State ? start("random_state", n, 7) : start("random_hermitian_operator", n, 7);
      const auto d = lanczos_iterate(l, v0, l.max_krylov_dim());
      CHECK(static_cast<int>(d.a.size()) == d.dk);
      CHECK(static_cast<int>(d.b.size()) == d.dk - 1);
      for (double b : d.b) CHECK(b > 0.0);
      CHECK(d.basis.orthonormality_defect() < 1e-10);
      CHECK(lanczos_reconstruction_error(l, d) < 1e-9);
      check_matches_arnoldi(l, v0);
    }
  }
}

TEST_CASE("tridiagonal spectrum lies inside the Liouvillian spectrum") {
  std::mt19937_64 gen(8);
  const CMatrix h = oracle::random_hermitian(4, gen);
  const auto l = Liouvillian::hermitian_commutator(h);
  const auto d = lanczos_iterate(l, start("random_hermitian_operator", 4, 1), l.max_krylov_dim());
  // superoperator spectrum E_a - E_b by brute force: I (x) H - H^T (x) I
  const int n = 4;
  CMatrix super = CMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        super(i + j * n, k + j * n) += h(i, k);
        super(i + j * n, i + k * n) -= h(k, j);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> sup(super, Eigen::EigenvaluesOnly);
  RMatrix t = RMatrix::Zero(d.dk, d.dk);
  for (int i = 0; i < d.dk; ++i) t(i, i) = d.a[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < d.dk; ++i) t(i, i + 1) = t(i + 1, i) = d.b[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<RMatrix> tri(t, Eigen::EigenvaluesOnly);
  CHECK(tri.eigenvalues().minCoeff() >= sup.eigenvalues().minCoeff() - 1e-9);
  CHECK(tri.eigenvalues().maxCoeff() <= sup.eigenvalues().maxCoeff() + 1e-9);
}

TEST_CASE("Lanczos rejects unitary generators and bad arguments") {
  const auto u = build_toral_qkr(FloquetParams::make(4, 1.0));
  CHECK_THROWS_AS(lanczos_iterate(Liouvillian::unitary_on_state(u), start("position_state:0", 4), 4), UsageError);
  CMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const auto l = Liouvillian::hermitian_on_state(sx);
  CHECK_THROWS_AS(lanczos_iterate(l, start("position_state:0", 2), 0), UsageError);
  CHECK_THROWS_AS(lanczos_iterate(l, 3.0 * start("position_state:0", 2), 2), UsageError);
}

TEST_CASE("effective Hamiltonian on simple inputs") {
  CHECK(max_abs(effective_hamiltonian(UnitaryMatrix::from_matrix(CMatrix::Identity(3, 3)))) < 1e-15);
  CMatrix one(1, 1);
  one(0, 0) = std::polar(1.0, -kPi / 2);
  const CMatrix h = effective_hamiltonian(UnitaryMatrix::from_matrix(one));
  CHECK(std::abs(h(0, 0) - kPi / 2) < 1e-15);
}

TEST_CASE("effective Hamiltonian round trip") {
  for (const auto& p : {FloquetParams::make(8, 4.0, 0.1, 0.1), FloquetParams::make(31, 10.0, 0.2, 0.3),
                        FloquetParams::make(16, 0.3)}) {
    const auto u = build_toral_qkr(p);
    const CMatrix h = effective_hamiltonian(u);
    CHECK(max_abs(h - h.adjoint()) < 1e-12);
    CHECK(max_abs(unitary_from_hamiltonian(h) - u.matrix()) < 1e-9);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    const auto phases = quasi_energies(u).phases;
    for (int i = 0; i < p.n_dim; ++i) CHECK(std::abs(es.eigenvalues()(i) - phases[static_cast<std::size_t>(i)]) < 1e-9);
  }
}

TEST_CASE("lanczos CSV layout") {
  LanczosData d;
  d.a = {0.5, -1.0};
  d.b = {2.0};
  d.dk = 2;
  CHECK(lanczos_csv(d) == "n,a,b\n0,0.5,2\n1,-1,\n");
}
