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

#include "ensembles.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace qdecoy {

void require_dimension(int n, const char* where) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(where) + ": dimension n must be >= 2, got " +
                    std::to_string(n));
  }
}

Ensemble::Ensemble(int dim, std::vector<EnsembleItem> items)
    : dim_(dim), items_(std::move(items)) {
  for (const auto& item : items_) {
    if (item.ket.size() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "Ensemble: ket dimension mismatch");
    }
  }
}

ComplexMatrix Ensemble::average_density() const {
  ComplexMatrix rho = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& item : items_) rho.noalias() += item.weight * (item.ket * item.ket.adjoint());
  return rho;
}

Ensemble canonical_ensemble(int n) {
  require_dimension(n, "canonical_ensemble");
  std::vector<EnsembleItem> items;
  items.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) items.push_back({1.0 / n, basis_ket(n, j)});
  return Ensemble(n, std::move(items));
}

ComplexVector decoy_ket(int j, int k, int n) {
  if (j < 0 || j >= n || k < 0 || k >= n) {
    throw Error(ErrorCode::InvalidArgument,
                "decoy_ket: pair (" + std::to_string(j) + "," + std::to_string(k) +
                    ") out of range for n=" + std::to_string(n));
  }
  ComplexVector v = ComplexVector::Zero(n);
  if (j == k) {
    v(j) = 1.0;
    return v;
  }
  const double s = 1.0 / std::sqrt(2.0);
  v(j) = s;
  v(k) = Complex(0.0, s);
  return v;
}

Ensemble pairing_ensemble(int n) {
  require_dimension(n, "pairing_ensemble");
  std::vector<EnsembleItem> items;
  items.reserve(static_cast<std::size_t>(n) * n);
  const double w = 1.0 / (static_cast<double>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) items.push_back({w, decoy_ket(j, k, n)});
  return Ensemble(n, std::move(items));
}

TamperProjectors tamper_projectors(int j, int k, int n) {
  const ComplexVector phi = decoy_ket(j, k, n);
  ComplexMatrix intact = phi * phi.adjoint();
  ComplexMatrix tamper = ComplexMatrix::Identity(n, n) - intact;
  return {std::move(intact), std::move(tamper)};
}

}  // namespace qdecoy
