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

#include "choi.hpp"
#include "error.hpp"
#include "test_support.hpp"

using namespace qdecoy;
namespace t = qdecoy::testing;

namespace {

ComplexMatrix unit(int n, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("mat_to_vec layout") {
  const ComplexVector v = mat_to_vec(ComplexMatrix::Identity(2, 2));
  ComplexVector expected(4);
  expected << 1.0, 0.0, 0.0, 1.0;
  CHECK(v == expected);

  // |0><1| -> |0>|1>, i.e. composite index (0, 1) = 1
  const ComplexVector e01 = mat_to_vec(unit(2, 0, 1));
  CHECK(e01(1) == Complex(1.0));
  CHECK(e01.squaredNorm() == 1.0);
}

TEST_CASE("vec round trip is exact and preserves the norm") {
  std::mt19937_64 rng(21);
  for (auto [m, n] : {std::pair{2, 2}, {3, 2}, {2, 5}, {4, 4}}) {
    const auto a = t::random_matrix(rng, m, n);
    const ComplexVector v = mat_to_vec(a);
    CHECK(vec_to_mat(v, m, n) == a);
    CHECK(v.squaredNorm() == doctest::Approx((a.adjoint() * a).trace().real()));
  }
  CHECK_THROWS_AS(vec_to_mat(ComplexVector::Zero(5), 2, 2), Error);
}

TEST_CASE("Choi state of the identity and dephasing channels") {
  for (int n : {2, 3, 4}) {
    const std::vector<ComplexMatrix> id{ComplexMatrix::Identity(n, n)};
    const ChoiState c = choi_of_kraus(id);
    ComplexVector beta = ComplexVector::Zero(n * n);
    for (int j = 0; j < n; ++j) beta(j * n + j) = 1.0 / std::sqrt(double(n));
    CHECK(max_abs(c.matrix() - double(n) * beta * beta.adjoint()) <= 1e-14);
    CHECK(is_cp(c));
    CHECK(is_tp(c));

    std::vector<ComplexMatrix> proj;
    for (int r = 0; r < n; ++r) proj.push_back(unit(n, r, r));
    const ChoiState p = choi_of_kraus(proj);
    ComplexMatrix p_rep = ComplexMatrix::Zero(n * n, n * n);
    for (int r = 0; r < n; ++r) p_rep(r * n + r, r * n + r) = 1.0;
    CHECK(max_abs(p.matrix() - p_rep) == 0.0);
    CHECK(is_tp(p));
  }
}

TEST_CASE("choi_of_kraus rejects empty and ragged sets") {
  CHECK_THROWS_AS(choi_of_kraus(std::vector<ComplexMatrix>{}), Error);
  const std::vector<ComplexMatrix> ragged{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(choi_of_kraus(ragged), Error);
}

TEST_CASE("apply_channel matches the Kraus sum") {
  std::mt19937_64 rng(22);
  for (int n : {2, 3}) {
    const std::vector<ComplexMatrix> id{ComplexMatrix::Identity(n, n)};
    const auto rho = t::random_density(rng, n);
    CHECK(max_abs(apply_channel(choi_of_kraus(id), rho) - rho) <= 1e-14);

    std::vector<ComplexMatrix> proj;
    for (int r = 0; r < n; ++r) proj.push_back(unit(n, r, r));
    ComplexMatrix diag = rho.diagonal().asDiagonal();
    CHECK(max_abs(apply_channel(choi_of_kraus(proj), rho) - diag) <= 1e-14);

    for (int trial = 0; trial < 50; ++trial) {
      const auto kraus = t::random_kraus(rng, n, 1 + trial % 5);
      const auto sigma = t::random_density(rng, n);
      const ChoiState c = choi_of_kraus(kraus);
      CHECK(max_abs(apply_channel(c, sigma) - t::kraus_sum(kraus, sigma)) <= 1e-10);
      CHECK(std::abs(apply_channel(c, sigma).trace() - sigma.trace()) <= 1e-10);
    }
  }
}

TEST_CASE("apply_channel handles rectangular Kraus operators") {
  std::mt19937_64 rng(23);
  const std::vector<ComplexMatrix> kraus{t::random_matrix(rng, 3, 2), t::random_matrix(rng, 3, 2)};
  const ChoiState c = choi_of_kraus(kraus);
  CHECK(c.dim_out() == 3);
  CHECK(c.dim_in() == 2);
  const auto rho = t::random_matrix(rng, 2, 2);
  CHECK(max_abs(apply_channel(c, rho) - t::kraus_sum(kraus, rho)) <= 1e-10);
  CHECK_THROWS_AS(apply_channel(c, ComplexMatrix::Identity(3, 3)), Error);
}

TEST_CASE("apply_channel is linear") {
  std::mt19937_64 rng(24);
  const ChoiState c = choi_of_kraus(t::random_kraus(rng, 3, 4));
  const auto r1 = t::random_matrix(rng, 3, 3);
  const auto r2 = t::random_matrix(rng, 3, 3);
  const Complex alpha(0.3, -1.2), beta(2.0, 0.5);
  const ComplexMatrix lhs = apply_channel(c, alpha * r1 + beta * r2);
  const ComplexMatrix rhs = alpha * apply_channel(c, r1) + beta * apply_channel(c, r2);
  CHECK(max_abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("trace formula Tr(kappa S(rho)) = Tr((kappa (x) rho^t) $)") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const ChoiState c = choi_of_kraus(t::random_kraus(rng, 3, 3));
    const auto kappa = t::random_matrix(rng, 3, 3);
    const auto rho = t::random_matrix(rng, 3, 3);
    const Complex lhs = (kappa * apply_channel(c, rho)).trace();
    const Complex rhs = (kron(kappa, rho.transpose()) * c.matrix()).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("sandwich identity") {
  const int n = 3;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  std::mt19937_64 rng(26);
  const ChoiState ident = choi_of_kraus(std::vector<ComplexMatrix>{id});
  const auto rho = t::random_matrix(rng, n, n);
  CHECK(sandwich_identity_residual(id, rho, id, id, ident) <= 1e-14);

  for (int trial = 0; trial < 100; ++trial) {
    const ChoiState c = choi_of_kraus(t::random_kraus(rng, n, 1 + trial % 9));
    const auto kappa = t::random_matrix(rng, n, n);
    const auto r = t::random_matrix(rng, n, n);
    const auto sigma = t::random_matrix(rng, n, n);
    const auto tau = t::random_matrix(rng, n, n);
    CHECK(sandwich_identity_residual(kappa, r, sigma, tau, c) <= 1e-10);
    CHECK(sandwich_identity_residual(id, r, id, id, c) <= 1e-10);
  }
  CHECK_THROWS_AS(sandwich_identity_residual(ComplexMatrix::Identity(2, 2), rho, rho, rho, ident), Error);
}

TEST_CASE("CP and TP characterizations") {
  const int n = 2;
  const ChoiState transpose_map =
      choi_of_map(n, n, [](const ComplexMatrix& rho) -> ComplexMatrix { return rho.transpose(); });
  CHECK_FALSE(is_cp(transpose_map));
  CHECK(is_tp(transpose_map));
  // the swap operator: smallest eigenvalue -1 (or -1/2 after dividing by n)
  CHECK(herm_eig(transpose_map.matrix()).values(0) == doctest::Approx(-1.0));

  const std::vector<ComplexMatrix> lossy{std::sqrt(0.5) * ComplexMatrix::Identity(n, n)};
  const ChoiState lc = choi_of_kraus(lossy);
  CHECK(is_cp(lc));
  CHECK_FALSE(is_tp(lc));
  CHECK(max_abs(partial_trace(lc.matrix(), n, n, Subsystem::First) -
                0.5 * ComplexMatrix::Identity(n, n)) <= 1e-14);

  // choi_of_map agrees with choi_of_kraus on a Kraus channel
  std::mt19937_64 rng(27);
  const auto kraus = t::random_kraus(rng, 3, 2);
  const ChoiState via_map =
      choi_of_map(3, 3, [&](const ComplexMatrix& rho) -> ComplexMatrix { return t::kraus_sum(kraus, rho); });
  CHECK(max_abs(via_map.matrix() - choi_of_kraus(kraus).matrix()) <= 1e-12);
}
