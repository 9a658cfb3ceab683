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

#pragma once

// Alice's two ensembles: message words |j> with weight 1/n, and decoys
// (|j> + i|k>)/sqrt(2) over all ordered pairs with weight 1/n^2. Both average
// to Id/n.

#include <vector>

#include "linalg.hpp"

namespace qdecoy {

struct EnsembleItem {
  double weight;
  ComplexVector ket;
};

class Ensemble {
 public:
  Ensemble(int dim, std::vector<EnsembleItem> items);

  int dim() const noexcept { return dim_; }
  const std::vector<EnsembleItem>& items() const noexcept { return items_; }

  // sum_i p_i |phi_i><phi_i|
  ComplexMatrix average_density() const;

 private:
  int dim_;
  std::vector<EnsembleItem> items_;
};

Ensemble canonical_ensemble(int n);

// (|j> + i|k>)/sqrt(2) for j != k, and |j> itself for j == k.
ComplexVector decoy_ket(int j, int k, int n);

Ensemble pairing_ensemble(int n);

struct TamperProjectors {
  ComplexMatrix intact;
  ComplexMatrix tamper;
};

// Bob's two-outcome check for decoy (j, k).
TamperProjectors tamper_projectors(int j, int k, int n);

// n >= 2 guard shared by every module.
void require_dimension(int n, const char* where);

}  // namespace qdecoy
