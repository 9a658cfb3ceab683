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

// State-operator correspondence. A Kraus operator A (m x n) corresponds to the
// vector vec(A) in C^m (x) C^n with entries vec(A)_{i*n+j} = A_ij; a channel
// corresponds to the positive matrix sum_r vec(A_r) vec(A_r)^dagger.

#include <functional>
#include <span>

#include "linalg.hpp"

namespace qdecoy {

ComplexVector mat_to_vec(const ComplexMatrix& a);
ComplexMatrix vec_to_mat(const ComplexVector& v, int rows, int cols);

class ChoiState {
 public:
  // `matrix` must be (dim_out * dim_in) square.
  ChoiState(int dim_out, int dim_in, ComplexMatrix matrix);

  int dim_out() const noexcept { return dim_out_; }
  int dim_in() const noexcept { return dim_in_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  int dim_out_;
  int dim_in_;
  ComplexMatrix matrix_;
};

ChoiState choi_of_kraus(std::span<const ComplexMatrix> kraus);

// Choi state of an arbitrary linear map M_n -> M_m, assembled from its action
// on the matrix units |j><l|.
ChoiState choi_of_map(int dim_out, int dim_in,
                      const std::function<ComplexMatrix(const ComplexMatrix&)>& map);

// S(rho) = Tr_2((Id_m (x) rho^t) $).
ComplexMatrix apply_channel(const ChoiState& choi, const ComplexMatrix& rho);

// Max-norm distance between kappa S(rho sigma) tau and
// Tr_2((kappa (x) rho^t) $ (tau (x) sigma^t)).
double sandwich_identity_residual(const ComplexMatrix& kappa,
                                  const ComplexMatrix& rho,
                                  const ComplexMatrix& sigma,
                                  const ComplexMatrix& tau,
                                  const ChoiState& choi);

bool is_cp(const ChoiState& choi, double tol = kDefaultTol);
bool is_tp(const ChoiState& choi, double tol = kDefaultTol);

}  // namespace qdecoy
