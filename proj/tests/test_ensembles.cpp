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

#include "ensembles.hpp"
#include "error.hpp"
#include "test_support.hpp"

using namespace qdecoy;

TEST_CASE("canonical ensemble") {
  const Ensemble e = canonical_ensemble(2);
  REQUIRE(e.items().size() == 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(e.items()[j].weight == 0.5);
    CHECK(e.items()[j].ket == basis_ket(2, j));
  }
  CHECK(max_abs(canonical_ensemble(5).average_density() - ComplexMatrix::Identity(5, 5) / 5.0) <= 1e-15);
  CHECK_THROWS_AS(canonical_ensemble(1), Error);
}

TEST_CASE("decoy kets") {
  CHECK(decoy_ket(0, 0, 3) == basis_ket(3, 0));
  const ComplexVector v = decoy_ket(0, 1, 2);
  CHECK(v(0) == Complex(1.0 / std::sqrt(2.0), 0.0));
  CHECK(v(1) == Complex(0.0, 1.0 / std::sqrt(2.0)));
  for (int n : {2, 3, 5}) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        CHECK(std::abs(decoy_ket(j, k, n).norm() - 1.0) <= 1e-12);
        if (j != k) CHECK(std::abs(decoy_ket(j, k, n).dot(decoy_ket(k, j, n))) <= 1e-15);
      }
  }
  CHECK_THROWS_AS(decoy_ket(2, 0, 2), Error);
  CHECK_THROWS_AS(decoy_ket(0, -1, 2), Error);
}

TEST_CASE("pairing ensemble") {
  const Ensemble e = pairing_ensemble(2);
  REQUIRE(e.items().size() == 4);
  for (const auto& item : e.items()) CHECK(item.weight == 0.25);
  CHECK(e.items()[0].ket == basis_ket(2, 0));
  CHECK(e.items()[3].ket == basis_ket(2, 1));
  CHECK(e.items()[1].ket == decoy_ket(0, 1, 2));
  CHECK(e.items()[2].ket == decoy_ket(1, 0, 2));
  CHECK(pairing_ensemble(7).items().size() == 49);
  CHECK(max_abs(pairing_ensemble(4).average_density() - ComplexMatrix::Identity(4, 4) / 4.0) <= 1e-12);
  CHECK_THROWS_AS(pairing_ensemble(0), Error);
}

TEST_CASE("canonical and pairing ensembles are indistinguishable on average") {
  for (int n = 2; n <= 16; ++n) {
    const Ensemble c = canonical_ensemble(n);
    const Ensemble p = pairing_ensemble(n);
    CHECK(max_abs(c.average_density() - p.average_density()) <= 1e-12);
    double weight = 0.0;
    for (const auto& item : p.items()) {
      weight += item.weight;
      CHECK(std::abs(item.ket.norm() - 1.0) <= 1e-12);
    }
    CHECK(std::abs(weight - 1.0) <= 1e-12);
  }
}

TEST_CASE("tamper projectors") {
  for (int n : {2, 3, 4}) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto [intact, tamper] = tamper_projectors(j, k, n);
        CHECK(std::abs(intact.trace() - Complex(1.0)) <= 1e-12);
        CHECK(std::abs(tamper.trace() - Complex(n - 1.0)) <= 1e-12);
        CHECK(max_abs(intact * intact - intact) <= 1e-12);
        CHECK(max_abs(tamper * tamper - tamper) <= 1e-12);
        CHECK(max_abs(intact + tamper - ComplexMatrix::Identity(n, n)) <= 1e-15);
        const ComplexVector phi = decoy_ket(j, k, n);
        CHECK(std::abs(phi.dot(tamper * phi)) <= 1e-15);
      }
  }
  const auto [intact, tamper] = tamper_projectors(0, 1, 2);
  ComplexMatrix expected(2, 2);
  expected << Complex(0.5, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0.5, 0);
  CHECK(max_abs(intact - expected) <= 1e-15);
  CHECK_THROWS_AS(tamper_projectors(0, 3, 3), Error);
}
