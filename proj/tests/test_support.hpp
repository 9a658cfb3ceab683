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

// Test-only generators and brute-force oracles. Nothing here calls into the
// library's algorithms; matrices are built entry by entry from std::mt19937.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qdecoy::testing {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss;
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Cx(gauss(rng), gauss(rng));
  return m;
}

inline Mat random_density(std::mt19937_64& rng, int n) {
  const Mat a = random_matrix(rng, n, n);
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

// Kraus set {B_r S^-1/2} computed with Eigen's solver directly, independent
// of the library's whitening.
inline std::vector<Mat> random_kraus(std::mt19937_64& rng, int n, int k) {
  std::vector<Mat> ops;
  Mat s = Mat::Zero(n, n);
  for (int r = 0; r < k; ++r) {
    ops.push_back(random_matrix(rng, n, n));
    s += ops.back().adjoint() * ops.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  const Mat inv_sqrt = es.eigenvectors() *
                       es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Cx>().asDiagonal() *
                       es.eigenvectors().adjoint();
  for (auto& op : ops) op = op * inv_sqrt;
  return ops;
}

// out((i,k),(j,l)) = a(i,j) b(k,l)
inline Mat naive_kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat kraus_sum(const std::vector<Mat>& ops, const Mat& rho) {
  Mat out = Mat::Zero(ops.front().rows(), ops.front().rows());
  for (const auto& a : ops) out += a * rho * a.adjoint();
  return out;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// Decoy ket built straight from its definition, |j> + i|k> over sqrt(2).
inline Vec decoy(int j, int k, int n) {
  Vec v = Vec::Zero(n);
  if (j == k) {
    v(j) = 1.0;
  } else {
    v(j) = 1.0 / std::sqrt(2.0);
    v(k) = Cx(0.0, 1.0 / std::sqrt(2.0));
  }
  return v;
}

// Brute-force induced fidelity on the pairing ensemble through density
// matrices: (1/n^2) sum_{j,k} Tr(rho_jk S(rho_jk)).
inline double brute_force_pairing_fidelity(const std::vector<Mat>& ops, int n) {
  double total = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Vec phi = decoy(j, k, n);
      const Mat rho = phi * phi.adjoint();
      total += (rho * kraus_sum(ops, rho)).trace().real();
    }
  return total / (n * n);
}

// Brute-force mean estimation fidelity: for each outcome r, try every guess
// and keep the best success probability sum_j (1/n) p(r|j) [guess == j].
inline double brute_force_estimation(const std::vector<Mat>& ops, int n) {
  double total = 0.0;
  for (const auto& a : ops) {
    double best = 0.0;
    for (int guess = 0; guess < n; ++guess) {
      Vec e = Vec::Zero(n);
      e(guess) = 1.0;
      best = std::max(best, (a * e).squaredNorm());
    }
    total += best;
  }
  return total / n;
}

}  // namespace qdecoy::testing
