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

#include "attacks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "ensembles.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace qdecoy {

namespace {

constexpr double kNegligibleNorm = 1e-12;
constexpr int kMaxRandomAttempts = 8;

double checked_g(int n, double g) {
  const double lo = 1.0 / n;
  if (!(g >= lo - 1e-12 && g <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument,
                "optimal_attack: g=" + format_real(g) + " outside [1/n, 1] for n=" +
                    std::to_string(n));
  }
  return std::clamp(g, lo, 1.0);
}

std::vector<ComplexMatrix> drop_negligible(std::vector<ComplexMatrix> ops) {
  std::erase_if(ops, [](const ComplexMatrix& op) { return op.norm() < kNegligibleNorm; });
  return ops;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::Parse,
                "attack descriptor: invalid value '" + text + "' for key '" + key + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(x);
}

GeneralizedMeasurement GeneralizedMeasurement::from_kraus(std::vector<ComplexMatrix> ops,
                                                          double tol,
                                                          std::string descriptor) {
  if (ops.empty()) {
    throw Error(ErrorCode::InvalidArgument, "from_kraus: empty Kraus list");
  }
  const auto n = ops.front().rows();
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "from_kraus: empty operator");
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t r = 0; r < ops.size(); ++r) {
    const auto& op = ops[r];
    if (op.rows() != n || op.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "from_kraus: operator " + std::to_string(r) +
                      " is not square with the common dimension");
    }
    if (op.norm() < kNegligibleNorm) {
      throw Error(ErrorCode::ZeroOperator,
                  "from_kraus: operator " + std::to_string(r) + " is zero");
    }
    sum.noalias() += op.adjoint() * op;
  }
  const double residual = max_abs(sum - ComplexMatrix::Identity(n, n));
  if (residual > tol) {
    throw Error(ErrorCode::Incomplete,
                "from_kraus: sum_r A_r^dagger A_r deviates from Id by " +
                    format_real(residual));
  }
  return GeneralizedMeasurement(static_cast<int>(n), std::move(ops), std::move(descriptor));
}

double GeneralizedMeasurement::coefficient_norm2() const {
  double s = 0.0;
  for (const auto& op : kraus_) s += op.squaredNorm();
  return s;
}

double GeneralizedMeasurement::completeness_residual() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& op : kraus_) sum.noalias() += op.adjoint() * op;
  return max_abs(sum - ComplexMatrix::Identity(dim_, dim_));
}

bool GeneralizedMeasurement::is_diagonal(double tol) const {
  for (const auto& op : kraus_) {
    ComplexMatrix off = op;
    off.diagonal().setZero();
    if (max_abs(off) > tol) return false;
  }
  return true;
}

ChoiState GeneralizedMeasurement::choi() const { return choi_of_kraus(kraus_); }

GeneralizedMeasurement optimal_attack(int n, double g) {
  require_dimension(n, "optimal_attack");
  g = checked_g(n, g);
  const double on = std::sqrt(g);
  const double off = std::sqrt((1.0 - g) / (n - 1));
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) a(j, j) = (j == r) ? on : off;
    ops.push_back(std::move(a));
  }
  return GeneralizedMeasurement::from_kraus(
      std::move(ops), kDefaultTol, describe({.family = AttackFamily::Optimal, .n = n, .g = g}));
}

GeneralizedMeasurement projective_attack(int n) {
  require_dimension(n, "projective_attack");
  std::vector<ComplexMatrix> ops;
  for (int r = 0; r < n; ++r) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    a(r, r) = 1.0;
    ops.push_back(std::move(a));
  }
  return GeneralizedMeasurement::from_kraus(
      std::move(ops), kDefaultTol, describe({.family = AttackFamily::Projective, .n = n}));
}

GeneralizedMeasurement identity_attack(int n) {
  require_dimension(n, "identity_attack");
  return GeneralizedMeasurement::from_kraus(
      {ComplexMatrix::Identity(n, n)}, kDefaultTol,
      describe({.family = AttackFamily::Identity, .n = n}));
}

GeneralizedMeasurement probabilistic_attack(int n, double p) {
  require_dimension(n, "probabilistic_attack");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "probabilistic_attack: p=" + format_real(p) + " outside [0, 1]");
  }
  std::vector<ComplexMatrix> ops;
  for (int r = 0; r < n; ++r) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    a(r, r) = std::sqrt(p);
    ops.push_back(std::move(a));
  }
  ops.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(n, n));
  return GeneralizedMeasurement::from_kraus(
      drop_negligible(std::move(ops)), kDefaultTol,
      describe({.family = AttackFamily::Probabilistic, .n = n, .p = p}));
}

GeneralizedMeasurement random_attack(int n, int outcomes, std::uint64_t seed) {
  require_dimension(n, "random_attack");
  if (outcomes < 1) {
    throw Error(ErrorCode::InvalidArgument, "random_attack: need at least one outcome");
  }
  const std::string descriptor = describe(
      {.family = AttackFamily::Random, .n = n, .outcomes = outcomes, .seed = seed});
  const double scale = 1.0 / std::sqrt(2.0);
  for (int attempt = 0; attempt < kMaxRandomAttempts; ++attempt) {
    CounterRng rng(seed, static_cast<std::uint64_t>(attempt));
    std::vector<ComplexMatrix> draws;
    draws.reserve(static_cast<std::size_t>(outcomes));
    ComplexMatrix gram = ComplexMatrix::Zero(n, n);
    for (int r = 0; r < outcomes; ++r) {
      ComplexMatrix b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double re = rng.normal();
          const double im = rng.normal();
          b(i, j) = Complex(re, im) * scale;
        }
      gram.noalias() += b.adjoint() * b;
      draws.push_back(std::move(b));
    }
    ComplexMatrix whitening;
    try {
      whitening = inv_sqrt_psd(0.5 * (gram + gram.adjoint()), 1e-10);
    } catch (const Error&) {
      continue;
    }
    for (auto& b : draws) b = b * whitening;
    return GeneralizedMeasurement::from_kraus(drop_negligible(std::move(draws)),
                                              kDefaultTol, descriptor);
  }
  throw Error(ErrorCode::NotPositive,
              "random_attack: measurement could not be normalized after " +
                  std::to_string(kMaxRandomAttempts) + " draws (" + descriptor + ")");
}

GeneralizedMeasurement diagonal_attack(const std::vector<std::vector<Complex>>& coeffs,
                                       double tol) {
  if (coeffs.empty() || coeffs.front().empty()) {
    throw Error(ErrorCode::InvalidArgument, "diagonal_attack: no coefficients");
  }
  const auto n = static_cast<int>(coeffs.front().size());
  double norm2 = 0.0;
  std::vector<ComplexMatrix> ops;
  for (const auto& row : coeffs) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch, "diagonal_attack: ragged coefficient rows");
    }
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      a(j, j) = row[static_cast<std::size_t>(j)];
      norm2 += std::norm(row[static_cast<std::size_t>(j)]);
    }
    ops.push_back(std::move(a));
  }
  if (std::abs(norm2 - n) > tol) {
    throw Error(ErrorCode::Incomplete,
                "diagonal_attack: coefficient norm^2 " + format_real(norm2) +
                    " differs from n=" + std::to_string(n));
  }
  ops = drop_negligible(std::move(ops));
  if (ops.empty()) throw Error(ErrorCode::ZeroOperator, "diagonal_attack: all outcomes vanish");
  return GeneralizedMeasurement::from_kraus(std::move(ops), tol, "diagonal(n=" + std::to_string(n) +
                                                                     ",k=" + std::to_string(coeffs.size()) + ")");
}

AttackSpec parse_attack_spec(std::string_view text) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw Error(ErrorCode::Parse,
                "attack descriptor '" + s + "': expected family(key=value,...)");
  }
  const std::string family = trim(std::string_view(s).substr(0, open));
  const std::string body = s.substr(open + 1, s.size() - open - 2);

  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos <= body.size() && !trim(body).empty()) {
    const auto comma = body.find(',', pos);
    const std::string item =
        trim(std::string_view(body).substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos));
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Parse, "attack descriptor '" + s + "': malformed item '" + item + "'");
    }
    const std::string key = trim(std::string_view(item).substr(0, eq));
    const std::string value = trim(std::string_view(item).substr(eq + 1));
    if (key.empty() || value.empty() || !kv.emplace(key, value).second) {
      throw Error(ErrorCode::Parse, "attack descriptor '" + s + "': bad or repeated key '" + key + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  AttackSpec spec;
  std::vector<std::string> allowed{"n"};
  if (family == "optimal") {
    spec.family = AttackFamily::Optimal;
    allowed.push_back("g");
  } else if (family == "projective") {
    spec.family = AttackFamily::Projective;
  } else if (family == "identity") {
    spec.family = AttackFamily::Identity;
  } else if (family == "prob") {
    spec.family = AttackFamily::Probabilistic;
    allowed.push_back("p");
  } else if (family == "random") {
    spec.family = AttackFamily::Random;
    allowed.insert(allowed.end(), {"k", "seed"});
  } else {
    throw Error(ErrorCode::Parse, "attack descriptor '" + s + "': unknown family '" + family + "'");
  }
  for (const auto& [key, value] : kv) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::Parse, "attack descriptor '" + s + "': unexpected key '" + key + "'");
    }
  }
  auto required = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw Error(ErrorCode::Parse, "attack descriptor '" + s + "': missing key '" + key + "'");
    }
    return it->second;
  };

  spec.n = parse_number<int>("n", required("n"));
  switch (spec.family) {
    case AttackFamily::Optimal:
      spec.g = parse_number<double>("g", required("g"));
      break;
    case AttackFamily::Probabilistic:
      spec.p = parse_number<double>("p", required("p"));
      break;
    case AttackFamily::Random:
      spec.outcomes = kv.contains("k") ? parse_number<int>("k", kv["k"]) : spec.n * spec.n;
      spec.seed = parse_number<std::uint64_t>("seed", required("seed"));
      break;
    default:
      break;
  }
  return spec;
}

std::string describe(const AttackSpec& spec) {
  const std::string n = "n=" + std::to_string(spec.n);
  switch (spec.family) {
    case AttackFamily::Optimal:
      return "optimal(" + n + ",g=" + format_real(spec.g) + ")";
    case AttackFamily::Projective:
      return "projective(" + n + ")";
    case AttackFamily::Identity:
      return "identity(" + n + ")";
    case AttackFamily::Probabilistic:
      return "prob(" + n + ",p=" + format_real(spec.p) + ")";
    case AttackFamily::Random: {
      const int k = spec.outcomes > 0 ? spec.outcomes : spec.n * spec.n;
      return "random(" + n + ",k=" + std::to_string(k) + ",seed=" + std::to_string(spec.seed) + ")";
    }
  }
  return "unknown";
}

GeneralizedMeasurement make_attack(const AttackSpec& spec) {
  switch (spec.family) {
    case AttackFamily::Optimal:
      return optimal_attack(spec.n, spec.g);
    case AttackFamily::Projective:
      return projective_attack(spec.n);
    case AttackFamily::Identity:
      return identity_attack(spec.n);
    case AttackFamily::Probabilistic:
      return probabilistic_attack(spec.n, spec.p);
    case AttackFamily::Random:
      return random_attack(spec.n, spec.outcomes > 0 ? spec.outcomes : spec.n * spec.n, spec.seed);
  }
  throw Error(ErrorCode::InvalidArgument, "make_attack: unknown family");
}

GeneralizedMeasurement parse_attack(std::string_view text) {
  return make_attack(parse_attack_spec(text));
}

}  // namespace qdecoy
