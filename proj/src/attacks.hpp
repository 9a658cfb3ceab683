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

// Eve's individual attacks as generalized measurements {A_r} with
// sum_r A_r^dagger A_r = Id.
//
// Text descriptors name the built-in families and round-trip through
// parse_attack_spec / describe:
//   optimal(n=4,g=0.5)  projective(n=4)  identity(n=4)
//   prob(n=4,p=0.3)     random(n=4,k=16,seed=42)

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "choi.hpp"
#include "linalg.hpp"

namespace qdecoy {

class GeneralizedMeasurement {
 public:
  // Validates squareness, uniform dimension, non-zero operators and
  // completeness within `tol` (max-norm).
  static GeneralizedMeasurement from_kraus(std::vector<ComplexMatrix> ops,
                                           double tol = kDefaultTol,
                                           std::string descriptor = "kraus");

  int dim() const noexcept { return dim_; }
  std::size_t outcomes() const noexcept { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const ComplexMatrix& op(std::size_t r) const { return kraus_.at(r); }
  const std::string& descriptor() const noexcept { return descriptor_; }

  // ||v||^2 for the stacked coefficient vector v = (A_ijr); equals n for a
  // complete measurement.
  double coefficient_norm2() const;

  // max-norm of sum_r A_r^dagger A_r - Id
  double completeness_residual() const;

  bool is_diagonal(double tol = 1e-10) const;

  ChoiState choi() const;

 private:
  GeneralizedMeasurement(int dim, std::vector<ComplexMatrix> kraus,
                         std::string descriptor)
      : dim_(dim), kraus_(std::move(kraus)), descriptor_(std::move(descriptor)) {}

  int dim_;
  std::vector<ComplexMatrix> kraus_;
  std::string descriptor_;
};

// A_r = sqrt(g)|r><r| + sqrt((1-g)/(n-1)) (Id - |r><r|), for 1/n <= g <= 1.
GeneralizedMeasurement optimal_attack(int n, double g);
GeneralizedMeasurement projective_attack(int n);
GeneralizedMeasurement identity_attack(int n);

// {sqrt(p)|r><r|} plus sqrt(1-p) Id; vanishing operators at p in {0,1} are
// left out.
GeneralizedMeasurement probabilistic_attack(int n, double p);

// K Gaussian matrices B_r whitened by (sum_r B_r^dagger B_r)^(-1/2).
GeneralizedMeasurement random_attack(int n, int outcomes, std::uint64_t seed);

// One row of diagonal entries per outcome.
GeneralizedMeasurement diagonal_attack(const std::vector<std::vector<Complex>>& coeffs,
                                       double tol = kDefaultTol);

enum class AttackFamily { Optimal, Projective, Identity, Probabilistic, Random };

struct AttackSpec {
  AttackFamily family = AttackFamily::Identity;
  int n = 2;
  double g = 0.0;         // optimal
  double p = 0.0;         // prob
  int outcomes = 0;       // random; 0 selects n^2
  std::uint64_t seed = 0; // random
};

AttackSpec parse_attack_spec(std::string_view text);
std::string describe(const AttackSpec& spec);
GeneralizedMeasurement make_attack(const AttackSpec& spec);
GeneralizedMeasurement parse_attack(std::string_view text);

// Shortest decimal that parses back to the same double.
std::string format_real(double x);

}  // namespace qdecoy
