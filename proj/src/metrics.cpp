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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace qdecoy {

namespace {

constexpr double kTieTol = 1e-12;

// Lowest index whose value is within kTieTol of the maximum.
int argmax_lowest(const RealVector& values) {
  const double best = values.maxCoeff();
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    if (values(j) >= best - kTieTol) return static_cast<int>(j);
  }
  return 0;
}

void require_ensemble_dim(const GeneralizedMeasurement& m, const Ensemble& e) {
  if (m.dim() != e.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "induced_fidelity: ensemble dimension " + std::to_string(e.dim()) +
                    " does not match measurement dimension " + std::to_string(m.dim()));
  }
}

}  // namespace

GuessTable guess_table(const GeneralizedMeasurement& m) {
  GuessTable table;
  table.reserve(m.outcomes());
  for (std::size_t r = 0; r < m.outcomes(); ++r) {
    // diag(A^dagger A)_j is the squared norm of column j
    const RealVector diag = m.op(r).colwise().squaredNorm().transpose();
    const int j = argmax_lowest(diag);
    table.push_back({static_cast<int>(r), j, diag(j)});
  }
  return table;
}

Estimation estimation_fidelity(const GeneralizedMeasurement& m) {
  GuessTable guesses = guess_table(m);
  double total = 0.0;
  for (const auto& guess : guesses) total += guess.weight;
  return {total / m.dim(), std::move(guesses)};
}

RealVector estimation_functional_diagonal(const GuessTable& guesses, int n) {
  const auto k = static_cast<Eigen::Index>(guesses.size());
  RealVector diag = RealVector::Zero(static_cast<Eigen::Index>(n) * n * k);
  for (const auto& guess : guesses) {
    for (int i = 0; i < n; ++i) {
      diag((static_cast<Eigen::Index>(i) * n + guess.guess) * k + guess.outcome) = 1.0 / n;
    }
  }
  return diag;
}

double estimation_fidelity_functional(const GeneralizedMeasurement& m) {
  const int n = m.dim();
  const auto k = static_cast<Eigen::Index>(m.outcomes());
  const RealVector euro = estimation_functional_diagonal(guess_table(m), n);
  // The functional is diagonal, so Tr(E w w^dagger) = sum_a E_aa |w_a|^2 with
  // w = vec(A_r) (x) |r> supported on the entries (a, r).
  double total = 0.0;
  for (Eigen::Index r = 0; r < k; ++r) {
    const ComplexVector a = mat_to_vec(m.op(static_cast<std::size_t>(r)));
    for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
      total += euro(idx * k + r) * std::norm(a(idx));
    }
  }
  return total;
}

double induced_fidelity(const GeneralizedMeasurement& m, const Ensemble& e) {
  require_ensemble_dim(m, e);
  double total = 0.0;
  for (const auto& item : e.items()) {
    double overlap = 0.0;
    for (const auto& op : m.kraus()) {
      overlap += std::norm(item.ket.dot(op * item.ket));
    }
    total += item.weight * overlap;
  }
  return total;
}

ComplexMatrix pound_functional(int n) {
  require_dimension(n, "pound_functional");
  const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
  RealVector rep = RealVector::Zero(d);
  ComplexVector beta = ComplexVector::Zero(d);
  for (int j = 0; j < n; ++j) {
    rep(j * n + j) = 1.0;
    beta(j * n + j) = 1.0 / std::sqrt(static_cast<double>(n));
  }
  const RealVector nonrep = RealVector::Ones(d) - rep;
  const ComplexMatrix p_beta = beta * beta.adjoint();

  ComplexMatrix pound = (0.5 / n) * rep.cast<Complex>().asDiagonal().toDenseMatrix();
  pound += (0.5 / n) * (p_beta * rep.cast<Complex>().asDiagonal());

  ComplexMatrix singlets = ComplexMatrix::Zero(d, d);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const Eigen::Index jk = j * n + k;
      const Eigen::Index kj = k * n + j;
      singlets(jk, jk) += s * s;
      singlets(kj, kj) += s * s;
      singlets(jk, kj) -= s * s;
      singlets(kj, jk) -= s * s;
    }
  }
  pound += (1.0 / (static_cast<double>(n) * n)) *
           (singlets * nonrep.cast<Complex>().asDiagonal());
  return pound;
}

FunctionalMatrices functional_matrices(int n, const GuessTable& guesses) {
  require_dimension(n, "functional_matrices");
  const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
  FunctionalMatrices out;
  out.p_rep = ComplexMatrix::Zero(d, d);
  out.beta = ComplexVector::Zero(d);
  for (int j = 0; j < n; ++j) {
    out.p_rep(j * n + j, j * n + j) = 1.0;
    out.beta(j * n + j) = 1.0 / std::sqrt(static_cast<double>(n));
  }
  out.p_nonrep = ComplexMatrix::Identity(d, d) - out.p_rep;
  out.p_beta = out.beta * out.beta.adjoint();
  out.pound = pound_functional(n);
  out.euro = estimation_functional_diagonal(guesses, n).cast<Complex>().asDiagonal().toDenseMatrix();
  return out;
}

double induced_fidelity_functional(const GeneralizedMeasurement& m) {
  const ComplexMatrix pound = pound_functional(m.dim());
  const ChoiState choi = m.choi();
  // Tr(P C) = sum_ab P_ab C_ba
  return pound.cwiseProduct(choi.matrix().transpose()).sum().real();
}

SpectralQuantities spectral_quantities(const GeneralizedMeasurement& m) {
  if (!m.is_diagonal(1e-10)) {
    throw Error(ErrorCode::NotDiagonal,
                "spectral_quantities: Kraus operators of '" + m.descriptor() +
                    "' are not diagonal; use estimation_fidelity / induced_fidelity instead");
  }
  SpectralQuantities out{0.0, 0.0};
  for (const auto& op : m.kraus()) {
    const ComplexVector diag = op.diagonal();
    out.g += diag.cwiseAbs2().maxCoeff();
    out.f += std::norm(diag.sum());
  }
  return out;
}

double banaszek_bound(double g, int m, int n) {
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::InvalidArgument, "banaszek_bound: m and n must be positive");
  }
  if (!(g >= -1e-12 && g <= n + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument,
                "banaszek_bound: g=" + format_real(g) + " outside [0, n]");
  }
  const double gc = std::clamp(g, 0.0, static_cast<double>(n));
  const double root = std::sqrt(gc) + std::sqrt((m - 1.0) * (n - gc));
  return root * root;
}

}  // namespace qdecoy
