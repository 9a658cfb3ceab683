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

// Monte Carlo run of the decoy scenario: Alice sends a message word |j> or a
// decoy (|j> + i|k>)/sqrt(2); Eve measures with her attack, guesses, and
// forwards the post-measurement state; Bob tests decoys for tampering.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attacks.hpp"

namespace qdecoy {

struct SimReport {
  int n = 0;
  std::uint64_t shots = 0;
  double decoy_fraction = 0.5;
  std::uint64_t message_trials = 0;
  std::uint64_t decoy_trials = 0;
  double g_hat = 0.0;
  double g_se = 0.0;
  double d_hat = 0.0;
  double d_se = 0.0;
  double g_analytic = 0.0;
  double d_analytic = 0.0;
  std::uint64_t seed = 0;
  bool sample_bob = false;
  // both estimates within 4 standard errors of the analytic values
  bool consistent = false;
  std::string attack_descriptor;
};

// Trials run in fixed blocks, each on its own substream of `seed`. With
// sample_bob == false Bob's detection is scored by its exact conditional
// probability instead of a second coin flip.
SimReport run_protocol(const GeneralizedMeasurement& attack, std::uint64_t shots,
                       double decoy_fraction, std::uint64_t seed, bool sample_bob = false);

std::string to_json(const SimReport& report);

enum class TrialType { Message, Decoy };

// Unset fields are drawn from the trial's random stream as in run_protocol.
struct TrialSpec {
  std::optional<TrialType> type;
  std::optional<int> j;
  std::optional<int> k;
  std::optional<int> eve_outcome;
  double decoy_fraction = 0.5;
};

struct TrialRecord {
  TrialType type = TrialType::Message;
  int j = 0;
  int k = 0;
  std::vector<double> outcome_probabilities; // p(r) for every Kraus operator
  int eve_outcome = 0;
  int guess = 0;
  bool guess_correct = false;               // message trials
  std::vector<double> intact_probabilities; // decoy trials, per outcome
  double intact_probability = 1.0;          // for the realized outcome
  bool bob_intact = true;
};

TrialRecord trial_trace(const GeneralizedMeasurement& attack, const TrialSpec& spec,
                        std::uint64_t seed);

}  // namespace qdecoy
