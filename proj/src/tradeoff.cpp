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

#include "tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "ensembles.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace qdecoy {

namespace {

constexpr double kDomainSlack = 1e-12;

double clamp_to_domain(double g, int n, ErrorCode code, const char* where) {
  const double lo = 1.0 / n;
  if (!(g >= lo - kDomainSlack && g <= 1.0 + kDomainSlack)) {
    throw Error(code, std::string(where) + ": G=" + format_real(g) +
                          " outside [1/n, 1] for n=" + std::to_string(n));
  }
  return std::clamp(g, lo, 1.0);
}

// Squared diagonal coefficients x(j, r) = |A_jjr|^2 of a diagonal attack with
// n outcomes. Rows sum to one (completeness).
using Weights = Eigen::MatrixXd;

double weights_g(const Weights& x) {
  return x.colwise().maxCoeff().sum() / static_cast<double>(x.rows());
}

double weights_f(const Weights& x) {
  return x.cwiseSqrt().colwise().sum().squaredNorm();
}

// Permutation weights matching outcome r to a distinct basis index, greedily
// following the largest entries of x.
Weights aligned_permutation(const Weights& x) {
  const Eigen::Index n = x.rows();
  std::vector<std::pair<double, std::pair<Eigen::Index, Eigen::Index>>> entries;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index r = 0; r < n; ++r) entries.push_back({x(j, r), {j, r}});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<bool> row_used(static_cast<std::size_t>(n)), col_used(static_cast<std::size_t>(n));
  Weights p = Weights::Zero(n, n);
  for (const auto& [value, jr] : entries) {
    const auto [j, r] = jr;
    if (row_used[static_cast<std::size_t>(j)] || col_used[static_cast<std::size_t>(r)]) continue;
    p(j, r) = 1.0;
    row_used[static_cast<std::size_t>(j)] = col_used[static_cast<std::size_t>(r)] = true;
  }
  return p;
}

// Moves x along a segment towards the uniform weights (lowers G) or towards a
// permutation (raises G) until G hits the target. G is convex along the
// segment, so bisection on the sign change converges; the returned end always
// has G >= target.
Weights pin_g(const Weights& x, double target) {
  const Eigen::Index n = x.rows();
  const double g0 = weights_g(x);
  if (g0 == target) return x;
  // G = 1 forces every row onto a single outcome; bisection would stop a few
  // ulps short and leave stray amplitudes of order 1e-8.
  if (target >= 1.0) return aligned_permutation(x);
  const bool raise = g0 < target;
  const Weights anchor =
      raise ? aligned_permutation(x) : Weights::Constant(n, n, 1.0 / static_cast<double>(n));
  auto at = [&](double t) -> Weights { return (1.0 - t) * x + t * anchor; };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool above = weights_g(at(mid)) >= target;
    // raising: G grows with t; lowering: G shrinks with t
    if (above == raise) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return at(raise ? hi : lo);
}

Weights normalize_rows(Weights x) {
  x = x.cwiseMax(0.0);
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const double s = x.row(j).sum();
    if (s <= 0.0) {
      x.row(j).setConstant(1.0 / static_cast<double>(x.cols()));
    } else {
      x.row(j) /= s;
    }
  }
  return x;
}

Weights random_weights(Eigen::Index n, CounterRng& rng) {
  Weights x(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index r = 0; r < n; ++r) x(j, r) = -std::log(1.0 - rng.uniform());
  return normalize_rows(x);
}

GeneralizedMeasurement attack_from_weights(const Weights& x) {
  std::vector<std::vector<Complex>> coeffs;
  for (Eigen::Index r = 0; r < x.cols(); ++r) {
    std::vector<Complex> row;
    for (Eigen::Index j = 0; j < x.rows(); ++j) row.emplace_back(std::sqrt(x(j, r)), 0.0);
    coeffs.push_back(std::move(row));
  }
  return diagonal_attack(coeffs, 1e-9);
}

}  // namespace

double disturbance_bound(double g, int n) {
  require_dimension(n, "disturbance_bound");
  g = clamp_to_domain(g, n, ErrorCode::InvalidArgument, "disturbance_bound");
  const double root = std::sqrt(g) + std::sqrt((n - 1.0) * (1.0 - g));
  return 0.5 - root * root / (2.0 * n);
}

TradeoffPoint evaluate_point(const GeneralizedMeasurement& m) {
  TradeoffPoint p;
  p.n = m.dim();
  p.g = estimation_fidelity_functional(m);
  p.d = 1.0 - induced_fidelity_functional(m);
  p.bound = disturbance_bound(p.g, p.n);
  p.margin = p.d - p.bound;
  p.source = m.descriptor();
  if (p.margin < kAbortMargin) {
    throw Error(ErrorCode::ContractViolation,
                "tradeoff bound violated by " + p.source + ": G=" + format_real(p.g) +
                    " D=" + format_real(p.d) + " bound=" + format_real(p.bound) +
                    " margin=" + format_real(p.margin));
  }
  return p;
}

double saturation_gap(int n, double g) {
  const auto attack = optimal_attack(n, g);
  const double d = 1.0 - induced_fidelity_functional(attack);
  return std::abs(d - disturbance_bound(g, n));
}

SweepResult sweep_random(int n, std::size_t trials, int outcomes, std::uint64_t seed,
                         std::span<const GeneralizedMeasurement> extra) {
  require_dimension(n, "sweep_random");
  SweepResult out{{}, std::numeric_limits<double>::infinity()};
  out.points.reserve(trials + extra.size());
  auto record = [&out](TradeoffPoint p) {
    out.min_margin = std::min(out.min_margin, p.margin);
    out.points.push_back(std::move(p));
  };
  for (std::size_t i = 0; i < trials; ++i) {
    record(evaluate_point(random_attack(n, outcomes, derive_seed(seed, i))));
  }
  for (const auto& m : extra) record(evaluate_point(m));
  return out;
}

OptimizeResult optimize_attack(int n, double g_target, int restarts, int iters,
                               std::uint64_t seed) {
  require_dimension(n, "optimize_attack");
  g_target = clamp_to_domain(g_target, n, ErrorCode::Infeasible, "optimize_attack");
  if (restarts < 1 || iters < 0) {
    throw Error(ErrorCode::InvalidArgument, "optimize_attack: restarts must be >= 1, iters >= 0");
  }

  std::optional<Weights> best;
  double best_f = -1.0;
  for (int restart = 0; restart < restarts; ++restart) {
    CounterRng rng(seed, static_cast<std::uint64_t>(restart));
    Weights x = pin_g(random_weights(n, rng), g_target);
    double fx = weights_f(x);
    // (1+1) evolution strategy in amplitude space with the 1/5 success rule;
    // every candidate is projected back onto completeness and the G target.
    double step = 0.3;
    for (int it = 0; it < iters; ++it) {
      Weights amp = x.cwiseSqrt();
      for (Eigen::Index j = 0; j < amp.rows(); ++j)
        for (Eigen::Index r = 0; r < amp.cols(); ++r) amp(j, r) += step * rng.normal();
      const Weights cand = pin_g(normalize_rows(amp.cwiseAbs2()), g_target);
      const double fc = weights_f(cand);
      if (fc > fx) {
        x = cand;
        fx = fc;
        step = std::min(step * 1.5, 1.0);
      } else {
        step = std::max(step * 0.9, 1e-7);
      }
    }
    if (fx > best_f) {
      best_f = fx;
      best = x;
    }
  }

  auto attack = attack_from_weights(*best);
  TradeoffPoint point = evaluate_point(attack);
  point.source = "optimize(n=" + std::to_string(n) + ",g=" + format_real(g_target) +
                 ",restarts=" + std::to_string(restarts) + ",iters=" + std::to_string(iters) +
                 ",seed=" + std::to_string(seed) + ")";
  return {std::move(point), std::move(attack)};
}

}  // namespace qdecoy
