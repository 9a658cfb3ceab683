// Copyright 2026 The qdecoy Authors
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

#include "attacks.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "test_support.hpp"

using namespace qdecoy;
namespace t = qdecoy::testing;

TEST_CASE("estimation fidelity matches brute force") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4}) {
    for (int k : {1, 2, n * n}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto m = GeneralizedMeasurement::from_kraus(t::random_kraus(rng, n, k));
        const double oracle = t::brute_force_estimation(m.kraus(), n);
        CHECK(std::abs(estimation_fidelity(m).g - oracle) <= 1e-12);
        CHECK(std::abs(estimation_fidelity_functional(m) - oracle) <= 1e-12);
      }
    }
  }
}

TEST_CASE("induced fidelity matches brute force") {
  std::mt19937_64 rng(12);
  for (int n : {2, 3, 4, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = GeneralizedMeasurement::from_kraus(t::random_kraus(rng, n, 1 + trial % (n * n)));
      const double oracle = t::brute_force_pairing_fidelity(m.kraus(), n);
      CHECK(std::abs(induced_fidelity(m, pairing_ensemble(n)) - oracle) <= 1e-12);
      CHECK(std::abs(induced_fidelity_functional(m) - oracle) <= 1e-10);
    }
  }
}

TEST_CASE("named attacks") {
  for (int n = 2; n <= 8; ++n) {
    CAPTURE(n);
    const auto p = projective_attack(n);
    CHECK(estimation_fidelity(p).g == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(induced_fidelity_functional(p) == doctest::Approx(0.5 + 0.5 / n).epsilon(1e-12));
    const auto id = identity_attack(n);
    CHECK(estimation_fidelity(id).g == doctest::Approx(1.0 / n).epsilon(1e-14));
    CHECK(induced_fidelity_functional(id) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("guess table ties take the lowest index") {
  const auto id = identity_attack(4);
  const auto table = guess_table(id);
  REQUIRE(table.size() == 1);
  CHECK(table[0].guess == 0);
  CHECK(table[0].weight == doctest::Approx(1.0));

  const auto opt = optimal_attack(3, 0.7);
  const auto g = guess_table(opt);
  for (int r = 0; r < 3; ++r) CHECK(g[r].guess == r);

  // near-ties within 1e-12 resolve to the lower index
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = std::sqrt(0.5 - 1e-14);
  a(1, 1) = std::sqrt(0.5);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = std::sqrt(0.5 + 1e-14);
  b(1, 1) = std::sqrt(0.5);
  const auto m = GeneralizedMeasurement::from_kraus({a, b});
  CHECK(guess_table(m)[0].guess == 0);
}

TEST_CASE("functional matrices") {
  for (int n : {2, 3, 4}) {
    const auto pr = projective_attack(n);
    const auto fm = functional_matrices(n, guess_table(pr));
    const int d = n * n;
    CHECK(max_abs(fm.p_rep * fm.p_rep - fm.p_rep) <= 1e-14);
    CHECK(max_abs(fm.p_rep + fm.p_nonrep - ComplexMatrix::Identity(d, d)) == 0.0);
    CHECK(std::abs(fm.p_rep.trace().real() - n) <= 1e-14);
    CHECK(std::abs(fm.beta.norm() - 1.0) <= 1e-14);
    CHECK(max_abs(fm.p_beta - fm.beta * fm.beta.adjoint()) <= 1e-15);
    CHECK(max_abs(fm.pound - pound_functional(n)) == 0.0);
    CHECK(is_hermitian(fm.pound, 1e-14));

    // pound is PSD with largest eigenvalue 1/n
    const auto eig = herm_eig(fm.pound);
    CHECK(eig.values.minCoeff() >= -1e-14);
    CHECK(eig.values.maxCoeff() == doctest::Approx(1.0 / n).epsilon(1e-12));

    // dense euro matches its diagonal form
    const RealVector diag = estimation_functional_diagonal(guess_table(pr), n);
    CHECK(fm.euro.rows() == diag.size());
    CHECK(max_abs(fm.euro - ComplexMatrix(diag.cast<Complex>().asDiagonal())) == 0.0);
    CHECK(diag.sum() == doctest::Approx(n));
  }
}

TEST_CASE("pound functional reproduces fidelity on rank-one Choi states") {
  // For a single Kraus operator the functional must equal the brute-force value.
  std::mt19937_64 rng(13);
  for (int n : {2, 3}) {
    const ComplexMatrix pound = pound_functional(n);
    for (int trial = 0; trial < 30; ++trial) {
      const t::Mat a = t::random_matrix(rng, n, n);
      const ComplexVector v = mat_to_vec(a);
      const double functional = (v.adjoint() * pound * v)(0, 0).real();
      CHECK(std::abs(functional - t::brute_force_pairing_fidelity({a}, n)) <= 1e-10);
    }
  }
}

TEST_CASE("spectral quantities") {
  const auto o = optimal_attack(2, 0.9);
  const auto sq = spectral_quantities(o);
  CHECK(sq.g == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(sq.f == doctest::Approx(3.2).epsilon(1e-14));

  for (int n = 2; n <= 6; ++n) {
    const auto p = spectral_quantities(projective_attack(n));
    CHECK(p.g == doctest::Approx(n));
    CHECK(p.f == doctest::Approx(n));
    const auto i = spectral_quantities(identity_attack(n));
    CHECK(i.g == doctest::Approx(1.0));
    CHECK(i.f == doctest::Approx(double(n * n)));
    // saturation along the optimal family
    for (double g : {1.0 / n, 0.5 + 0.5 / n, 1.0}) {
      const auto s = spectral_quantities(optimal_attack(n, g));
      CHECK(s.f == doctest::Approx(banaszek_bound(s.g, n, n)).epsilon(1e-12));
    }
  }

  const auto r = random_attack(2, 4, 1);
  CHECK_THROWS_AS(spectral_quantities(r), Error);
  try {
    spectral_quantities(r);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDiagonal);
  }
}

TEST_CASE("Banaszek bound holds on random diagonal attacks") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 3;
  double worst = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + trial % 6;
    // rows of random weights with sum_r |a_jr|^2 = 1 for every j, random phases
    std::vector<std::vector<double>> w(k, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
      double total = 0.0;
      for (int r = 0; r < k; ++r) total += (w[r][j] = u(rng));
      for (int r = 0; r < k; ++r) w[r][j] /= total;
    }
    std::vector<std::vector<Complex>> coeffs(k, std::vector<Complex>(n));
    for (int r = 0; r < k; ++r)
      for (int j = 0; j < n; ++j)
        coeffs[r][j] = std::polar(std::sqrt(w[r][j]), 2.0 * M_PI * u(rng) * (trial % 2));
    const auto m = diagonal_attack(coeffs);
    const auto s = spectral_quantities(m);
    worst = std::min(worst, banaszek_bound(s.g, n, n) - s.f);
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("Banaszek bound domain") {
  for (int n = 2; n <= 10; ++n) {
    CHECK(banaszek_bound(n, n, n) == doctest::Approx(double(n)));
    CHECK(banaszek_bound(1.0, n, n) == doctest::Approx(double(n * n)));
  }
  CHECK(banaszek_bound(0.0, 3, 3) == doctest::Approx(6.0));
  CHECK_THROWS_AS(banaszek_bound(-0.1, 2, 2), Error);
  CHECK_THROWS_AS(banaszek_bound(2.5, 2, 2), Error);
}
