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

// The information/disturbance tradeoff for decoy-protected n-level channels:
//
//   D >= 1/2 - (1/2n) (sqrt(G) + sqrt((n-1)(1-G)))^2,   1/n <= G <= 1.
//
// Helpers here evaluate the bound, measure how far attacks sit above it, and
// search numerically for attacks that reach it.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "attacks.hpp"

namespace qdecoy {

// Margins below this are float noise; below kAbortMargin something is broken.
inline constexpr double kViolationTol = 1e-9;
inline constexpr double kAbortMargin = -1e-6;

struct TradeoffPoint {
  int n = 0;
  double g = 0.0;
  double d = 0.0;
  double bound = 0.0;  // minimal D at this G
  double margin = 0.0; // d - bound
  std::string source;
};

double disturbance_bound(double g, int n);

// G and D through the linear functionals. Throws ContractViolation when the
// margin is below kAbortMargin.
TradeoffPoint evaluate_point(const GeneralizedMeasurement& m);

// |D(optimal_attack(n, g)) - disturbance_bound(g, n)|
double saturation_gap(int n, double g);

struct SweepResult {
  std::vector<TradeoffPoint> points;
  double min_margin;
};

// Trial i uses random_attack(n, outcomes, derive_seed(seed, i)); `extra`
// attacks are evaluated after the random ones.
SweepResult sweep_random(int n, std::size_t trials, int outcomes, std::uint64_t seed,
                         std::span<const GeneralizedMeasurement> extra = {});

struct OptimizeResult {
  TradeoffPoint best;
  GeneralizedMeasurement attack;
};

// Local search over real nonnegative diagonal attacks with n outcomes at fixed
// G = g_target, maximizing sum_r (sum_j A_jjr)^2.
OptimizeResult optimize_attack(int n, double g_target, int restarts = 16,
                               int iters = 2000, std::uint64_t seed = 0);

}  // namespace qdecoy
