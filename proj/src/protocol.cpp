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

#include "protocol.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ensembles.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace qdecoy {

namespace {

constexpr std::uint64_t kBlockSize = 4096;
constexpr double kProbabilityTol = 1e-9;
constexpr double kRoundoffFloor = 1e-14;

// Per-attack data reused across trials.
struct Channel {
  const GeneralizedMeasurement& attack;
  GuessTable guesses;
  int n;
};

// p(r) = ||A_r psi||^2 and, for decoys, <phi|A_r|phi> for every r.
void outcome_distribution(const Channel& ch, const ComplexVector& psi,
                          std::vector<double>& probs, std::vector<Complex>* overlaps) {
  probs.resize(ch.attack.outcomes());
  if (overlaps) overlaps->resize(ch.attack.outcomes());
  double total = 0.0;
  for (std::size_t r = 0; r < ch.attack.outcomes(); ++r) {
    const ComplexVector out = ch.attack.op(r) * psi;
    probs[r] = out.squaredNorm();
    total += probs[r];
    if (overlaps) (*overlaps)[r] = psi.dot(out);
  }
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw Error(ErrorCode::BrokenAttack,
                "outcome probabilities of '" + ch.attack.descriptor() + "' sum to " +
                    format_real(total));
  }
}

int sample_outcome(const std::vector<double>& probs, CounterRng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t r = 0; r < probs.size(); ++r) {
    acc += probs[r];
    if (u < acc) return static_cast<int>(r);
  }
  // u landed in the round-off gap above the cumulative sum; take the last
  // outcome with nonzero weight
  for (std::size_t r = probs.size(); r-- > 0;) {
    if (probs[r] > 0.0) return static_cast<int>(r);
  }
  return 0;
}

// Conditional probability that Bob's test passes after outcome r. Values
// within kRoundoffFloor of certainty are reported as exactly 1.
double intact_given(const std::vector<double>& probs, const std::vector<Complex>& overlaps,
                    std::size_t r) {
  if (probs[r] <= 0.0) return 1.0;
  const double intact = std::clamp(std::norm(overlaps[r]) / probs[r], 0.0, 1.0);
  return 1.0 - intact < kRoundoffFloor ? 1.0 : intact;
}

void check_fraction(double decoy_fraction) {
  if (!(decoy_fraction >= 0.0 && decoy_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "decoy_fraction " + format_real(decoy_fraction) + " outside [0, 1]");
  }
}

TrialRecord run_trial(const Channel& ch, const TrialSpec& spec, CounterRng& rng,
                      std::vector<double>& probs, std::vector<Complex>& overlaps,
                      bool sample_bob) {
  TrialRecord rec;
  const int n = ch.n;
  rec.type = spec.type ? *spec.type
                       : (rng.bernoulli(spec.decoy_fraction) ? TrialType::Decoy : TrialType::Message);
  auto check_index = [n](int v) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::InvalidArgument,
                  "trial index " + std::to_string(v) + " out of range for n=" + std::to_string(n));
    }
    return v;
  };

  if (rec.type == TrialType::Message) {
    rec.j = spec.j ? check_index(*spec.j) : static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    rec.k = rec.j;
    outcome_distribution(ch, basis_ket(n, rec.j), probs, nullptr);
  } else {
    if (spec.j && spec.k) {
      rec.j = check_index(*spec.j);
      rec.k = check_index(*spec.k);
    } else {
      const auto pair = rng.below(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n));
      rec.j = static_cast<int>(pair / static_cast<std::uint64_t>(n));
      rec.k = static_cast<int>(pair % static_cast<std::uint64_t>(n));
    }
    outcome_distribution(ch, decoy_ket(rec.j, rec.k, n), probs, &overlaps);
  }

  if (spec.eve_outcome) {
    const int r = *spec.eve_outcome;
    if (r < 0 || static_cast<std::size_t>(r) >= probs.size() || probs[static_cast<std::size_t>(r)] <= 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "forced Eve outcome " + std::to_string(r) + " is impossible for this trial");
    }
    rec.eve_outcome = r;
  } else {
    rec.eve_outcome = sample_outcome(probs, rng);
  }
  const auto r = static_cast<std::size_t>(rec.eve_outcome);
  rec.guess = ch.guesses[r].guess;

  if (rec.type == TrialType::Message) {
    rec.guess_correct = rec.guess == rec.j;
  } else {
    rec.intact_probability = intact_given(probs, overlaps, r);
    rec.bob_intact = sample_bob ? rng.bernoulli(rec.intact_probability)
                                : rec.intact_probability >= 1.0;
  }
  return rec;
}

double binomial_se(double p, std::uint64_t count) {
  if (count == 0) return 0.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(count));
}

}  // namespace

SimReport run_protocol(const GeneralizedMeasurement& attack, std::uint64_t shots,
                       double decoy_fraction, std::uint64_t seed, bool sample_bob) {
  require_dimension(attack.dim(), "run_protocol");
  if (shots < 1) throw Error(ErrorCode::InvalidArgument, "run_protocol: shots must be >= 1");
  check_fraction(decoy_fraction);

  const Channel ch{attack, guess_table(attack), attack.dim()};
  TrialSpec spec;
  spec.decoy_fraction = decoy_fraction;

  std::uint64_t messages = 0, decoys = 0, hits = 0;
  double detections = 0.0;
  std::vector<double> probs;
  std::vector<Complex> overlaps;
  const std::uint64_t blocks = (shots + kBlockSize - 1) / kBlockSize;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    CounterRng rng(seed, b);
    const std::uint64_t count = std::min(kBlockSize, shots - b * kBlockSize);
    double block_detections = 0.0;
    for (std::uint64_t t = 0; t < count; ++t) {
      const TrialRecord rec = run_trial(ch, spec, rng, probs, overlaps, sample_bob);
      if (rec.type == TrialType::Message) {
        ++messages;
        hits += rec.guess_correct ? 1 : 0;
      } else {
        ++decoys;
        block_detections += sample_bob ? (rec.bob_intact ? 0.0 : 1.0)
                                       : 1.0 - rec.intact_probability;
      }
    }
    detections += block_detections;
  }

  SimReport rep;
  rep.n = attack.dim();
  rep.shots = shots;
  rep.decoy_fraction = decoy_fraction;
  rep.message_trials = messages;
  rep.decoy_trials = decoys;
  rep.g_hat = messages ? static_cast<double>(hits) / static_cast<double>(messages) : 0.0;
  rep.d_hat = decoys ? detections / static_cast<double>(decoys) : 0.0;
  rep.g_se = binomial_se(rep.g_hat, messages);
  rep.d_se = binomial_se(rep.d_hat, decoys);
  rep.g_analytic = estimation_fidelity(attack).g;
  rep.d_analytic = 1.0 - induced_fidelity(attack, pairing_ensemble(attack.dim()));
  rep.seed = seed;
  rep.sample_bob = sample_bob;
  rep.attack_descriptor = attack.descriptor();
  const bool g_ok = messages == 0 || std::abs(rep.g_hat - rep.g_analytic) <= 4.0 * rep.g_se + 1e-12;
  const bool d_ok = decoys == 0 || std::abs(rep.d_hat - rep.d_analytic) <= 4.0 * rep.d_se + 1e-12;
  rep.consistent = g_ok && d_ok;
  return rep;
}

std::string to_json(const SimReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["shots"] = r.shots;
  j["decoy_fraction"] = r.decoy_fraction;
  j["message_trials"] = r.message_trials;
  j["decoy_trials"] = r.decoy_trials;
  j["g_hat"] = r.g_hat;
  j["g_se"] = r.g_se;
  j["d_hat"] = r.d_hat;
  j["d_se"] = r.d_se;
  j["g_analytic"] = r.g_analytic;
  j["d_analytic"] = r.d_analytic;
  j["seed"] = r.seed;
  j["sample_bob"] = r.sample_bob;
  j["consistent"] = r.consistent;
  j["attack_descriptor"] = r.attack_descriptor;
  return j.dump();
}

TrialRecord trial_trace(const GeneralizedMeasurement& attack, const TrialSpec& spec,
                        std::uint64_t seed) {
  require_dimension(attack.dim(), "trial_trace");
  check_fraction(spec.decoy_fraction);
  if (spec.j.has_value() != spec.k.has_value() && spec.type == TrialType::Decoy) {
    throw Error(ErrorCode::InvalidArgument, "trial_trace: a decoy needs both j and k");
  }
  const Channel ch{attack, guess_table(attack), attack.dim()};
  CounterRng rng(seed, 0);
  std::vector<double> probs;
  std::vector<Complex> overlaps;
  TrialRecord rec = run_trial(ch, spec, rng, probs, overlaps, /*sample_bob=*/true);
  rec.outcome_probabilities = probs;
  if (rec.type == TrialType::Decoy) {
    rec.intact_probabilities.resize(probs.size());
    for (std::size_t r = 0; r < probs.size(); ++r) {
      rec.intact_probabilities[r] = intact_given(probs, overlaps, r);
    }
  }
  return rec;
}

}  // namespace qdecoy
