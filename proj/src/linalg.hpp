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

// Dense complex linear algebra shared by every other module. Matrices are
// Eigen dense types; composite indices of a bipartite space C^d1 (x) C^d2 are
// flattened as (i, j) -> i * d2 + j, first factor major.

#include <complex>

#include <Eigen/Dense>

namespace qdecoy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance on eigenvalues for Hermiticity and positivity tests.
inline constexpr double kDefaultTol = 1e-9;

enum class Subsystem { First, Second };

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // orthonormal columns
};

// Largest entry magnitude, ||M||_max.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace over one factor of a (dim1 * dim2)-square matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim1, int dim2,
                            Subsystem which);

HermitianEigen herm_eig(const ComplexMatrix& h, double tol = kDefaultTol);

bool psd_check(const ComplexMatrix& h, double tol = kDefaultTol);

// S with S h S = Id; h must be positive definite (smallest eigenvalue >= tol).
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h, double tol = kDefaultTol);

// Entrywise transpose without conjugation.
inline ComplexMatrix transpose(const ComplexMatrix& m) { return m.transpose(); }

ComplexVector basis_ket(int n, int j);

}  // namespace qdecoy
