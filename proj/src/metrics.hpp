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

// Eve's mean estimation fidelity G (on message words) and the fidelity F she
// leaves on decoys, D = 1 - F. Each quantity has a direct definition and an
// independent evaluation as a linear functional of the attack's Choi state.

#include <vector>

#include "attacks.hpp"
#include "ensembles.hpp"

namespace qdecoy {

struct Guess {
  int outcome;
  int guess;     // basis index Eve announces for this outcome
  double weight; // <guess| A_r^dagger A_r |guess>
};

using GuessTable = std::vector<Guess>;

// Argmax of the diagonal of A_r^dagger A_r, lowest index among entries within
// 1e-12 of the maximum.
GuessTable guess_table(const GeneralizedMeasurement& m);

struct Estimation {
  double g;
  GuessTable guesses;
};

Estimation estimation_fidelity(const GeneralizedMeasurement& m);

// Diagonal of the estimation functional (1/n) sum_r Id (x) |j_r><j_r| (x) |r><r|
// on system (x) guess (x) outcome, composite index (i*n + j)*K + r.
RealVector estimation_functional_diagonal(const GuessTable& guesses, int n);

// sum_r Tr(E (A_r (x) |r>)(A_r (x) |r>)^dagger)
double estimation_fidelity_functional(const GeneralizedMeasurement& m);

double induced_fidelity(const GeneralizedMeasurement& m, const Ensemble& e);

// Projectors the fidelity functional is built from.
struct FunctionalMatrices {
  ComplexMatrix euro;     // dense form of the estimation functional
  ComplexMatrix pound;    // fidelity functional on the pairing ensemble
  ComplexMatrix p_rep;    // span{|jj>}
  ComplexMatrix p_nonrep; // Id - p_rep
  ComplexMatrix p_beta;   // |beta><beta|
  ComplexVector beta;     // (1/sqrt(n)) sum_j |jj>
};

FunctionalMatrices functional_matrices(int n, const GuessTable& guesses);

// (1/2n) P_rep + (1/2n) P_beta P_rep + (1/n^2) sum_{j<k} |s_jk><s_jk| P_nonrep
// with singlets s_jk = (|jk> - |kj>)/sqrt(2).
ComplexMatrix pound_functional(int n);

// Tr(pound * choi), i.e. F on the pairing ensemble.
double induced_fidelity_functional(const GeneralizedMeasurement& m);

struct SpectralQuantities {
  double g; // sum_r max_j |A_jjr|^2
  double f; // sum_r |sum_j A_jjr|^2
};

// Requires every Kraus operator to be diagonal within 1e-10.
SpectralQuantities spectral_quantities(const GeneralizedMeasurement& m);

// (sqrt(g) + sqrt((m-1)(n-g)))^2, valid for 0 <= g <= n.
double banaszek_bound(double g, int m, int n);

}  // namespace qdecoy
