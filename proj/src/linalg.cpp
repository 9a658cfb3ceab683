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

#include "linalg.hpp"

#include <string>

#include "error.hpp"

namespace qdecoy {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim1, int dim2,
                            Subsystem which) {
  if (dim1 < 1 || dim2 < 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "partial_trace: subsystem dimensions must be positive");
  }
  const Eigen::Index total = static_cast<Eigen::Index>(dim1) * dim2;
  if (m.rows() != total || m.cols() != total) {
    throw Error(ErrorCode::DimensionMismatch,
                "partial_trace: expected a " + std::to_string(total) + "x" +
                    std::to_string(total) + " matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (which == Subsystem::Second) {
    ComplexMatrix out = ComplexMatrix::Zero(dim1, dim1);
    for (int i = 0; i < dim1; ++i)
      for (int k = 0; k < dim1; ++k)
        for (int j = 0; j < dim2; ++j)
          out(i, k) += m(i * dim2 + j, k * dim2 + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim2, dim2);
  for (int j = 0; j < dim2; ++j)
    for (int l = 0; l < dim2; ++l)
      for (int i = 0; i < dim1; ++i)
        out(j, l) += m(i * dim2 + j, i * dim2 + l);
  return out;
}

HermitianEigen herm_eig(const ComplexMatrix& h, double tol) {
  if (!is_hermitian(h, tol)) {
    throw Error(ErrorCode::NotHermitian, "herm_eig: matrix is not Hermitian");
  }
  // Symmetrize so round-off in the input does not leak into the solver.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotHermitian, "herm_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

bool psd_check(const ComplexMatrix& h, double tol) {
  const auto eig = herm_eig(h, tol);
  return eig.values.size() == 0 || eig.values(0) >= -tol;
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h, double tol) {
  const auto eig = herm_eig(h, tol);
  if (eig.values.size() == 0 || eig.values(0) < tol) {
    throw Error(ErrorCode::NotPositive,
                "inv_sqrt_psd: matrix is singular or indefinite (smallest "
                "eigenvalue " +
                    std::to_string(eig.values.size() ? eig.values(0) : 0.0) +
                    ")");
  }
  const RealVector scale = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * scale.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexVector basis_ket(int n, int j) {
  if (j < 0 || j >= n) {
    throw Error(ErrorCode::InvalidArgument,
                "basis index " + std::to_string(j) + " out of range for n=" +
                    std::to_string(n));
  }
  ComplexVector v = ComplexVector::Zero(n);
  v(j) = 1.0;
  return v;
}

}  // namespace qdecoy
