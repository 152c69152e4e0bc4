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

#include "floqrylov/complexity.hpp"
#include "floqrylov/maps.hpp"
#include "oracles.hpp"

using namespace floqrylov;

namespace {

KrylovVector start(const char* text, int n, std::uint64_t seed = 0) {
  return initial_vector(InitialCondition::parse(text), n, seed);
}

AmplitudeSeries series_from_rows(const CMatrix& rows) {
  AmplitudeSeries s;
  s.amps = rows;
  s.steps = static_cast<int>(rows.rows()) - 1;
  s.dk = static_cast<int>(rows.cols());
  return s;
}

}  // namespace

TEST_CASE("first row is the delta on site zero") {
  const auto u = build_toral_qkr(FloquetParams::make(6, 5.0, 0.2, 0.3));
  const auto l = Liouvillian::unitary_conjugation(u);
  const auto v0 = start("random_hermitian_operator", 6, 2);
  const auto b = arnoldi_iterate(l, v0, l.max_krylov_dim());
  const auto d = amplitudes_direct(b, l, v0, 3);
  CHECK(d.amps(0, 0) == Complex(1.0, 0.0));
  for (int n = 1; n < b.dk; ++n) CHECK(d.amps(0, n) == Complex(0.0, 0.0));
  const auto r = amplitudes_recursive(b.hessenberg, b.dk, 3);
  CHECK(r.amps.row(0) == d.amps.row(0));
}

TEST_CASE("identity operator stays put") {
  const auto u = build_toral_qkr(FloquetParams::make(5, 3.0));
  const auto l = Liouvillian::unitary_conjugation(u);
  const auto v0 = start("identity_operator", 5);
  const auto b = arnoldi_iterate(l, v0, l.max_krylov_dim());
  const auto d = amplitudes_direct(b, l, v0, 20);
  for (int j = 0; j <= 20; ++j) CHECK(std::abs(std::abs(d.amps(j, 0)) - 1.0) < 1e-12);
  for (double k : k_complexity(d)) CHECK(k == 0.0);
}

TEST_CASE("direct amplitudes match explicit matrix powers") {
  const auto u = build_toral_qkr(FloquetParams::make(4, 2.0, 0.1, 0.2));
  const auto l = Liouvillian::unitary_on_state(u);
  const auto v0 = start("position_state:1", 4);
  const auto b = arnoldi_iterate(l, v0, 4);
  const auto d = amplitudes_direct(b, l, v0, 10);
  CMatrix power = CMatrix::Identity(4, 4);
  for (int j = 0; j <= 10; ++j) {
    const CVector psi = power * v0.values().col(0);
    for (int n = 0; n < b.dk; ++n) CHECK(std::abs(d.amps(j, n) - b.basis.columns.col(n).dot(psi)) < 1e-12);
    power = u.matrix() * power;
  }
}

TEST_CASE("scalar and 2x2 recursions") {
  const double theta = 0.83;
  CMatrix h1(1, 1);
  h1(0, 0) = std::polar(1.0, theta);
  const auto r1 = amplitudes_recursive(h1, 1, 12);
  for (int j = 0; j <= 12; ++j) CHECK(std::abs(r1.amps(j, 0) - std::polar(1.0, j * theta)) < 1e-14);

  CMatrix h2(2, 2);
  const double c = std::cos(0.4), s = std::sin(0.4);
  h2 << Complex(c, 0.1 * 0.0), Complex(-s, 0.0), Complex(s, 0.0), Complex(c, 0.0);
  h2 *= std::polar(1.0, 0.3);
  const auto r2 = amplitudes_recursive(h2, 2, 9);
  CVector phi(2);
  phi << 1.0, 0.0;
  for (int j = 0; j <= 9; ++j) {
    CHECK((r2.amps.row(j).transpose() - phi).cwiseAbs().maxCoeff() < 1e-14);
    phi = h2 * phi;
  }
}

TEST_CASE("recursion rejects malformed input") {
  CMatrix full = CMatrix::Ones(3, 3);
  CHECK_THROWS_AS(amplitudes_recursive(full, 3, 2), UsageError);
  CHECK_THROWS_AS(amplitudes_recursive(CMatrix::Identity(2, 2), 3, 2), UsageError);
  CHECK_THROWS_AS(amplitudes_recursive(CMatrix::Identity(2, 2), 2, -1), UsageError);
}

TEST_CASE("the two routes agree and conserve norm") {
  for (int n : {3, 6}) {
    for (double kappa : {0.5, 9.0}) {
      const auto u = build_toral_qkr(FloquetParams::make(n, kappa, 0.2, 0.3));
      for (const auto& l : {Liouvillian::unitary_on_state(u), Liouvillian::unitary_conjugation(u)}) {
        const auto v0 = l.space() == SpaceKind::State ? start("random_state", n, 1) : start("random_hermitian_operator", n, 1);
        const auto b = arnoldi_iterate(l, v0, l.max_krylov_dim());
        const auto d = amplitudes_direct(b, l, v0, 4 * b.dk);
        const auto r = amplitudes_recursive(b.hessenberg, b.dk, 4 * b.dk);
        CHECK(max_abs(d.amps - r.amps) < 1e-8);
        CHECK(d.max_norm_defect() < 1e-8);
        CHECK(r.max_norm_defect() < 1e-8);
        const auto k = k_complexity(d);
        const auto s = k_entropy(d);
        CHECK(k[0] == 0.0);
        for (std::size_t j = 0; j < k.size(); ++j) {
          CHECK(k[j] >= 0.0);
          CHECK(k[j] <= b.dk - 1 + 1e-12);
          CHECK(s[j] >= 0.0);
          CHECK(s[j] <= std::log(double(b.dk)) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("two-site chain closed form") {
  const std::vector<double> times = {0.0, 0.3, 1.0, 2.5};
  const auto e = evolve_chain({0.0, 0.0}, {1.0}, times);
  for (std::size_t j = 0; j < times.size(); ++j) {
    CHECK(std::abs(e.amps(static_cast<Eigen::Index>(j), 0) - std::cos(times[j])) < 1e-14);
    CHECK(std::abs(e.amps(static_cast<Eigen::Index>(j), 1) - std::sin(times[j])) < 1e-14);
  }
  const auto k = k_complexity(e);
  for (std::size_t j = 0; j < times.size(); ++j) CHECK(std::abs(k[j] - std::pow(std::sin(times[j]), 2)) < 1e-14);
}

TEST_CASE("chain evolution matches a fine-step integrator") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> ua(-1.0, 1.0), ub(0.2, 1.5);
  std::vector<double> a(6), b(5);
  for (auto& x : a) x = ua(gen);
  for (auto& x : b) x = ub(gen);
  const auto e = evolve_chain(a, b, {0.0, 1.3});
  for (int n = 0; n < 6; ++n) CHECK(e.amps(0, n) == Complex(n == 0 ? 1.0 : 0.0, 0.0));
  const oracle::Vec ref = oracle::rk4_chain(a, b, 1.3, 1e-4);
  CHECK((e.amps.row(1).transpose() - ref).cwiseAbs().maxCoeff() < 1e-7);

  std::vector<double> many;
  for (int i = 0; i < 50; ++i) many.push_back(0.37 * i);
  CHECK(evolve_chain(a, b, many).max_norm_defect() < 1e-10);
}

TEST_CASE("chain evolution validation") {
  CHECK_THROWS_AS(evolve_chain({}, {}, {0.0}), UsageError);
  CHECK_THROWS_AS(evolve_chain({0.0, 0.0}, {}, {0.0}), UsageError);
  CHECK_THROWS_AS(evolve_chain({0.0, 0.0}, {-1.0}, {0.0}), UsageError);
  CHECK_THROWS_AS(evolve_chain({0.0}, {}, {std::nan("")}), UsageError);
}

TEST_CASE("complexity of special rows") {
  CMatrix rows(2, 5);
  rows.row(0) << 1.0, 0.0, 0.0, 0.0, 0.0;
  rows.row(1).setConstant(1.0 / std::sqrt(5.0));
  const auto s = series_from_rows(rows);
  const auto k = k_complexity(s);
  CHECK(k[0] == 0.0);
  CHECK(std::abs(k[1] - 2.0) < 1e-14);
  const auto ent = k_entropy(s);
  CHECK(ent[0] == 0.0);
  CHECK(std::abs(ent[1] - std::log(5.0)) < 1e-14);

  CMatrix partial(1, 5);
  partial << 0.0, Complex(0.0, std::sqrt(0.5)), 0.0, std::sqrt(0.5), 0.0;
  CHECK(std::abs(k_entropy(series_from_rows(partial))[0] - std::log(2.0)) < 1e-14);
}

TEST_CASE("entropy matches a direct sum") {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> g;
  CMatrix row(1, 9);
  for (int n = 0; n < 9; ++n) {
    const double re = g(gen);
    const double im = g(gen);
    row(0, n) = Complex(re, im);
  }
  row /= row.norm();
  double want = 0.0, kwant = 0.0;
  for (int n = 0; n < 9; ++n) {
    const double p = std::norm(row(0, n));
    want -= p * std::log(p);
    kwant += n * p;
  }
  CHECK(std::abs(k_entropy(series_from_rows(row))[0] - want) < 1e-12);
  CHECK(std::abs(k_complexity(series_from_rows(row))[0] - kwant) < 1e-12);
}

TEST_CASE("saturation statistics") {
  auto [m1, s1] = saturation_stats({5, 5, 5, 5}, 0.5);
  CHECK(m1 == 5.0);
  CHECK(s1 == 0.0);
  auto [m2, s2] = saturation_stats({0, 0, 2, 4}, 0.5);
  CHECK(m2 == doctest::Approx(3.0));
  CHECK(s2 == doctest::Approx(1.0));
  // ceil(0.25 * 10) = 3 values
  auto [m3, s3] = saturation_stats({0, 0, 0, 0, 0, 0, 0, 1, 2, 3}, 0.25);
  CHECK(m3 == doctest::Approx(2.0));
  CHECK(s3 == doctest::Approx(std::sqrt(2.0 / 3.0)));

  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  std::vector<double> series(101);
  for (auto& v : series) v = u(gen);
  for (double f : {0.1, 0.25, 1.0}) {
    const auto [mean, sd] = saturation_stats(series, f);
    const std::size_t tail = static_cast<std::size_t>(std::ceil(f * 101));
    const auto [om, osd] = oracle::two_pass(std::vector<double>(series.end() - static_cast<std::ptrdiff_t>(tail), series.end()));
    CHECK(std::abs(mean - om) < 1e-12);
    CHECK(std::abs(sd - osd) < 1e-12);
  }
  CHECK_THROWS_AS(saturation_stats({}, 0.5), UsageError);
  CHECK_THROWS_AS(saturation_stats({1.0}, 0.0), UsageError);
  CHECK_THROWS_AS(saturation_stats({1.0}, 1.5), UsageError);
}

TEST_CASE("CSV layouts") {
  ComplexityTrace t;
  t.k_values = {0.0, 1.5};
  t.s_values = {0.0, 0.25};
  CHECK(complexity_csv(t) == "j,k_complexity,k_entropy\n0,0,0\n1,1.5,0.25\n");
  CMatrix rows(1, 2);
  rows << 1.0, Complex(0.0, -0.5);
  CHECK(amplitudes_csv(series_from_rows(rows)) == "j,n,re,im\n0,0,1,0\n0,1,0,-0.5\n");
}
