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

#include "choi.hpp"

#include <string>

#include "error.hpp"

namespace qdecoy {

namespace {

void require_square(const ComplexMatrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected " + std::to_string(dim) + "x" +
                    std::to_string(dim) + ", got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

}  // namespace

ComplexVector mat_to_vec(const ComplexMatrix& a) {
  ComplexVector v(a.size());
  const Eigen::Index cols = a.cols();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < cols; ++j) v(i * cols + j) = a(i, j);
  return v;
}

ComplexMatrix vec_to_mat(const ComplexVector& v, int rows, int cols) {
  if (rows < 1 || cols < 1 ||
      v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "vec_to_mat: vector of length " + std::to_string(v.size()) +
                    " cannot be reshaped to " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
  ComplexMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = v(static_cast<Eigen::Index>(i) * cols + j);
  return a;
}

ChoiState::ChoiState(int dim_out, int dim_in, ComplexMatrix matrix)
    : dim_out_(dim_out), dim_in_(dim_in), matrix_(std::move(matrix)) {
  if (dim_out < 1 || dim_in < 1) {
    throw Error(ErrorCode::DimensionMismatch, "ChoiState: dimensions must be positive");
  }
  require_square(matrix_, static_cast<Eigen::Index>(dim_out) * dim_in, "ChoiState");
}

ChoiState choi_of_kraus(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) {
    throw Error(ErrorCode::InvalidArgument, "choi_of_kraus: empty Kraus list");
  }
  const auto m = kraus.front().rows();
  const auto n = kraus.front().cols();
  ComplexMatrix acc = ComplexMatrix::Zero(m * n, m * n);
  for (const auto& op : kraus) {
    if (op.rows() != m || op.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "choi_of_kraus: Kraus operators have ragged dimensions");
    }
    const ComplexVector v = mat_to_vec(op);
    acc.noalias() += v * v.adjoint();
  }
  return ChoiState(static_cast<int>(m), static_cast<int>(n), std::move(acc));
}

ChoiState choi_of_map(int dim_out, int dim_in,
                      const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  const Eigen::Index total = static_cast<Eigen::Index>(dim_out) * dim_in;
  ComplexMatrix acc = ComplexMatrix::Zero(total, total);
  for (int j = 0; j < dim_in; ++j) {
    for (int l = 0; l < dim_in; ++l) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim_in, dim_in);
      unit(j, l) = 1.0;
      const ComplexMatrix image = map(unit);
      require_square(image, dim_out, "choi_of_map");
      // $_{(i,j),(k,l)} = S(|j><l|)_{ik}
      for (int i = 0; i < dim_out; ++i)
        for (int k = 0; k < dim_out; ++k)
          acc(i * dim_in + j, k * dim_in + l) = image(i, k);
    }
  }
  return ChoiState(dim_out, dim_in, std::move(acc));
}

ComplexMatrix apply_channel(const ChoiState& choi, const ComplexMatrix& rho) {
  const int m = choi.dim_out();
  const int n = choi.dim_in();
  require_square(rho, n, "apply_channel");
  const ComplexMatrix lhs = kron(ComplexMatrix::Identity(m, m), transpose(rho));
  return partial_trace(lhs * choi.matrix(), m, n, Subsystem::Second);
}

double sandwich_identity_residual(const ComplexMatrix& kappa,
                                  const ComplexMatrix& rho,
                                  const ComplexMatrix& sigma,
                                  const ComplexMatrix& tau,
                                  const ChoiState& choi) {
  const int m = choi.dim_out();
  const int n = choi.dim_in();
  require_square(kappa, m, "sandwich_identity_residual(kappa)");
  require_square(tau, m, "sandwich_identity_residual(tau)");
  require_square(rho, n, "sandwich_identity_residual(rho)");
  require_square(sigma, n, "sandwich_identity_residual(sigma)");

  const ComplexMatrix direct = kappa * apply_channel(choi, rho * sigma) * tau;
  const ComplexMatrix traced = partial_trace(
      kron(kappa, transpose(rho)) * choi.matrix() * kron(tau, transpose(sigma)),
      m, n, Subsystem::Second);
  return max_abs(direct - traced);
}

bool is_cp(const ChoiState& choi, double tol) {
  if (!is_hermitian(choi.matrix(), tol)) return false;
  return psd_check(choi.matrix(), tol);
}

bool is_tp(const ChoiState& choi, double tol) {
  const ComplexMatrix reduced =
      partial_trace(choi.matrix(), choi.dim_out(), choi.dim_in(), Subsystem::First);
  const int n = choi.dim_in();
  return max_abs(reduced - ComplexMatrix::Identity(n, n)) <= tol;
}

}  // namespace qdecoy
