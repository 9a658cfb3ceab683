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

#include "qdecoy/qdecoy.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "attacks.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "protocol.hpp"
#include "tradeoff.hpp"

struct qd_attack {
  qdecoy::GeneralizedMeasurement measurement;
};

namespace {

thread_local std::string g_last_error;

qd_status to_status(qdecoy::ErrorCode code) {
  using qdecoy::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return QD_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return QD_ERR_DIMENSION;
    case ErrorCode::NotHermitian: return QD_ERR_NOT_HERMITIAN;
    case ErrorCode::NotPositive: return QD_ERR_NOT_POSITIVE;
    case ErrorCode::Incomplete: return QD_ERR_INCOMPLETE;
    case ErrorCode::ZeroOperator: return QD_ERR_ZERO_OPERATOR;
    case ErrorCode::NotDiagonal: return QD_ERR_NOT_DIAGONAL;
    case ErrorCode::Infeasible: return QD_ERR_INFEASIBLE;
    case ErrorCode::BrokenAttack: return QD_ERR_BROKEN_ATTACK;
    case ErrorCode::Parse: return QD_ERR_PARSE;
    case ErrorCode::ContractViolation: return QD_ERR_CONTRACT;
  }
  return QD_ERR_INTERNAL;
}

qd_status fail(qd_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
qd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const qdecoy::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QD_ERR_INTERNAL, e.what());
  }
}

#define QD_REQUIRE(cond, msg) \
  if (!(cond)) return fail(QD_ERR_INVALID_ARGUMENT, msg)

qd_status emit_attack(qdecoy::GeneralizedMeasurement m, qd_attack** out) {
  *out = new qd_attack{std::move(m)};
  return QD_OK;
}

void copy_truncated(const std::string& src, char* dst, std::size_t cap) {
  const std::size_t len = std::min(src.size(), cap - 1);
  std::memcpy(dst, src.data(), len);
  dst[len] = '\0';
}

qd_status copy_string(const std::string& src, char* buf, std::size_t cap, std::size_t* needed) {
  if (needed) *needed = src.size() + 1;
  if (buf == nullptr || cap < src.size() + 1) {
    return fail(QD_ERR_BUFFER_TOO_SMALL,
                "buffer of " + std::to_string(cap) + " bytes cannot hold " +
                    std::to_string(src.size() + 1));
  }
  std::memcpy(buf, src.c_str(), src.size() + 1);
  return QD_OK;
}

void fill_point(const qdecoy::TradeoffPoint& p, qd_point* out) {
  out->n = p.n;
  out->g = p.g;
  out->d = p.d;
  out->bound = p.bound;
  out->margin = p.margin;
  copy_truncated(p.source, out->source, QD_SOURCE_MAX);
}

qdecoy::ComplexMatrix read_matrix(int n, const double* data) {
  qdecoy::ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = 2 * (static_cast<std::size_t>(i) * n + j);
      m(i, j) = {data[idx], data[idx + 1]};
    }
  return m;
}

}  // namespace

extern "C" {

const char* qd_last_error(void) { return g_last_error.c_str(); }

const char* qd_status_string(qd_status status) {
  switch (status) {
    case QD_OK: return "ok";
    case QD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QD_ERR_DIMENSION: return "dimension mismatch";
    case QD_ERR_NOT_HERMITIAN: return "matrix not Hermitian";
    case QD_ERR_NOT_POSITIVE: return "matrix not positive definite";
    case QD_ERR_INCOMPLETE: return "measurement not complete";
    case QD_ERR_ZERO_OPERATOR: return "zero Kraus operator";
    case QD_ERR_NOT_DIAGONAL: return "Kraus operators not diagonal";
    case QD_ERR_INFEASIBLE: return "infeasible target";
    case QD_ERR_BROKEN_ATTACK: return "broken attack";
    case QD_ERR_PARSE: return "parse error";
    case QD_ERR_CONTRACT: return "contract violation";
    case QD_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case QD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qd_version(void) { return "0.1.0"; }

qd_status qd_attack_parse(const char* descriptor, qd_attack** out) {
  QD_REQUIRE(descriptor && out, "qd_attack_parse: null argument");
  return guarded([&] { return emit_attack(qdecoy::parse_attack(descriptor), out); });
}

qd_status qd_attack_optimal(int n, double g, qd_attack** out) {
  QD_REQUIRE(out, "qd_attack_optimal: null output");
  return guarded([&] { return emit_attack(qdecoy::optimal_attack(n, g), out); });
}

qd_status qd_attack_projective(int n, qd_attack** out) {
  QD_REQUIRE(out, "qd_attack_projective: null output");
  return guarded([&] { return emit_attack(qdecoy::projective_attack(n), out); });
}

qd_status qd_attack_identity(int n, qd_attack** out) {
  QD_REQUIRE(out, "qd_attack_identity: null output");
  return guarded([&] { return emit_attack(qdecoy::identity_attack(n), out); });
}

qd_status qd_attack_probabilistic(int n, double p, qd_attack** out) {
  QD_REQUIRE(out, "qd_attack_probabilistic: null output");
  return guarded([&] { return emit_attack(qdecoy::probabilistic_attack(n, p), out); });
}

qd_status qd_attack_random(int n, int outcomes, uint64_t seed, qd_attack** out) {
  QD_REQUIRE(out, "qd_attack_random: null output");
  return guarded([&] { return emit_attack(qdecoy::random_attack(n, outcomes, seed), out); });
}

qd_status qd_attack_from_kraus(int n, size_t count, const double* ops, double tol,
                               qd_attack** out) {
  QD_REQUIRE(ops && out, "qd_attack_from_kraus: null argument");
  QD_REQUIRE(n >= 1 && count >= 1, "qd_attack_from_kraus: need n >= 1 and count >= 1");
  return guarded([&] {
    std::vector<qdecoy::ComplexMatrix> kraus;
    const std::size_t stride = 2 * static_cast<std::size_t>(n) * n;
    for (std::size_t r = 0; r < count; ++r) kraus.push_back(read_matrix(n, ops + r * stride));
    return emit_attack(qdecoy::GeneralizedMeasurement::from_kraus(std::move(kraus), tol), out);
  });
}

qd_status qd_attack_diagonal(int n, size_t outcomes, const double* coeffs, qd_attack** out) {
  QD_REQUIRE(coeffs && out, "qd_attack_diagonal: null argument");
  QD_REQUIRE(n >= 1 && outcomes >= 1, "qd_attack_diagonal: need n >= 1 and outcomes >= 1");
  return guarded([&] {
    std::vector<std::vector<qdecoy::Complex>> rows(outcomes);
    for (std::size_t r = 0; r < outcomes; ++r)
      for (int j = 0; j < n; ++j) {
        const std::size_t idx = 2 * (r * static_cast<std::size_t>(n) + static_cast<std::size_t>(j));
        rows[r].emplace_back(coeffs[idx], coeffs[idx + 1]);
      }
    return emit_attack(qdecoy::diagonal_attack(rows), out);
  });
}

void qd_attack_free(qd_attack* attack) { delete attack; }

int qd_attack_dim(const qd_attack* attack) { return attack ? attack->measurement.dim() : 0; }

size_t qd_attack_outcomes(const qd_attack* attack) {
  return attack ? attack->measurement.outcomes() : 0;
}

qd_status qd_attack_descriptor(const qd_attack* attack, char* buf, size_t cap, size_t* needed) {
  QD_REQUIRE(attack, "qd_attack_descriptor: null attack");
  return copy_string(attack->measurement.descriptor(), buf, cap, needed);
}

qd_status qd_attack_kraus(const qd_attack* attack, size_t r, double* out) {
  QD_REQUIRE(attack && out, "qd_attack_kraus: null argument");
  QD_REQUIRE(r < attack->measurement.outcomes(), "qd_attack_kraus: outcome index out of range");
  const auto& op = attack->measurement.op(r);
  const auto n = op.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto idx = static_cast<std::size_t>(2 * (i * n + j));
      out[idx] = op(i, j).real();
      out[idx + 1] = op(i, j).imag();
    }
  return QD_OK;
}

qd_status qd_attack_channel_checks(const qd_attack* attack, double tol, int* cp, int* tp) {
  QD_REQUIRE(attack && cp && tp, "qd_attack_channel_checks: null argument");
  return guarded([&] {
    const auto choi = attack->measurement.choi();
    *cp = qdecoy::is_cp(choi, tol) ? 1 : 0;
    *tp = qdecoy::is_tp(choi, tol) ? 1 : 0;
    return QD_OK;
  });
}

qd_status qd_estimation_fidelity(const qd_attack* attack, double* g) {
  QD_REQUIRE(attack && g, "qd_estimation_fidelity: null argument");
  return guarded([&] {
    *g = qdecoy::estimation_fidelity(attack->measurement).g;
    return QD_OK;
  });
}

qd_status qd_estimation_fidelity_functional(const qd_attack* attack, double* g) {
  QD_REQUIRE(attack && g, "qd_estimation_fidelity_functional: null argument");
  return guarded([&] {
    *g = qdecoy::estimation_fidelity_functional(attack->measurement);
    return QD_OK;
  });
}

qd_status qd_induced_fidelity(const qd_attack* attack, double* f) {
  QD_REQUIRE(attack && f, "qd_induced_fidelity: null argument");
  return guarded([&] {
    *f = qdecoy::induced_fidelity(attack->measurement,
                                  qdecoy::pairing_ensemble(attack->measurement.dim()));
    return QD_OK;
  });
}

qd_status qd_induced_fidelity_functional(const qd_attack* attack, double* f) {
  QD_REQUIRE(attack && f, "qd_induced_fidelity_functional: null argument");
  return guarded([&] {
    *f = qdecoy::induced_fidelity_functional(attack->measurement);
    return QD_OK;
  });
}

qd_status qd_spectral_quantities(const qd_attack* attack, double* g, double* f) {
  QD_REQUIRE(attack && g && f, "qd_spectral_quantities: null argument");
  return guarded([&] {
    const auto s = qdecoy::spectral_quantities(attack->measurement);
    *g = s.g;
    *f = s.f;
    return QD_OK;
  });
}

qd_status qd_banaszek_bound(double g, int m, int n, double* out) {
  QD_REQUIRE(out, "qd_banaszek_bound: null output");
  return guarded([&] {
    *out = qdecoy::banaszek_bound(g, m, n);
    return QD_OK;
  });
}

qd_status qd_disturbance_bound(double g, int n, double* out) {
  QD_REQUIRE(out, "qd_disturbance_bound: null output");
  return guarded([&] {
    *out = qdecoy::disturbance_bound(g, n);
    return QD_OK;
  });
}

qd_status qd_saturation_gap(int n, double g, double* out) {
  QD_REQUIRE(out, "qd_saturation_gap: null output");
  return guarded([&] {
    *out = qdecoy::saturation_gap(n, g);
    return QD_OK;
  });
}

qd_status qd_evaluate(const qd_attack* attack, qd_point* out) {
  QD_REQUIRE(attack && out, "qd_evaluate: null argument");
  return guarded([&] {
    fill_point(qdecoy::evaluate_point(attack->measurement), out);
    return QD_OK;
  });
}

qd_status qd_sweep_random(int n, size_t trials, int outcomes, uint64_t seed, qd_point* points,
                          size_t capacity, double* min_margin) {
  QD_REQUIRE(min_margin, "qd_sweep_random: null min_margin");
  QD_REQUIRE(points || capacity == 0, "qd_sweep_random: null point buffer");
  return guarded([&] {
    const auto result = qdecoy::sweep_random(n, trials, outcomes, seed);
    for (std::size_t i = 0; i < std::min(capacity, result.points.size()); ++i) {
      fill_point(result.points[i], &points[i]);
    }
    *min_margin = result.min_margin;
    return QD_OK;
  });
}

qd_status qd_optimize(int n, double g, int restarts, int iters, uint64_t seed, qd_point* best,
                      qd_attack** attack_out) {
  QD_REQUIRE(best, "qd_optimize: null output");
  return guarded([&] {
    auto result = qdecoy::optimize_attack(n, g, restarts, iters, seed);
    fill_point(result.best, best);
    if (attack_out) *attack_out = new qd_attack{std::move(result.attack)};
    return QD_OK;
  });
}

qd_status qd_curve(int n, size_t points, double* g_out, double* d_out) {
  QD_REQUIRE(g_out && d_out, "qd_curve: null output");
  QD_REQUIRE(points >= 2, "qd_curve: need at least two points");
  return guarded([&] {
    const double lo = 1.0 / n;
    for (std::size_t i = 0; i < points; ++i) {
      // last sample pinned to exactly 1
      const double g = (i + 1 == points)
                           ? 1.0
                           : lo + (1.0 - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
      g_out[i] = g;
      d_out[i] = qdecoy::disturbance_bound(g, n);
    }
    return QD_OK;
  });
}

qd_status qd_simulate(const qd_attack* attack, uint64_t shots, double decoy_fraction,
                      uint64_t seed, int sample_bob, qd_sim_report* out) {
  QD_REQUIRE(attack && out, "qd_simulate: null argument");
  return guarded([&] {
    const auto r =
        qdecoy::run_protocol(attack->measurement, shots, decoy_fraction, seed, sample_bob != 0);
    out->n = r.n;
    out->shots = r.shots;
    out->decoy_fraction = r.decoy_fraction;
    out->message_trials = r.message_trials;
    out->decoy_trials = r.decoy_trials;
    out->g_hat = r.g_hat;
    out->g_se = r.g_se;
    out->d_hat = r.d_hat;
    out->d_se = r.d_se;
    out->g_analytic = r.g_analytic;
    out->d_analytic = r.d_analytic;
    out->seed = r.seed;
    out->sample_bob = r.sample_bob ? 1 : 0;
    out->consistent = r.consistent ? 1 : 0;
    copy_truncated(r.attack_descriptor, out->attack_descriptor, QD_SOURCE_MAX);
    return QD_OK;
  });
}

qd_status qd_sim_report_json(const qd_sim_report* report, char* buf, size_t cap, size_t* needed) {
  QD_REQUIRE(report, "qd_sim_report_json: null report");
  return guarded([&] {
    qdecoy::SimReport r;
    r.n = report->n;
    r.shots = report->shots;
    r.decoy_fraction = report->decoy_fraction;
    r.message_trials = report->message_trials;
    r.decoy_trials = report->decoy_trials;
    r.g_hat = report->g_hat;
    r.g_se = report->g_se;
    r.d_hat = report->d_hat;
    r.d_se = report->d_se;
    r.g_analytic = report->g_analytic;
    r.d_analytic = report->d_analytic;
    r.seed = report->seed;
    r.sample_bob = report->sample_bob != 0;
    r.consistent = report->consistent != 0;
    r.attack_descriptor = report->attack_descriptor;
    return copy_string(qdecoy::to_json(r), buf, cap, needed);
  });
}

qd_status qd_trial_trace(const qd_attack* attack, int type, int j, int k, int eve_outcome,
                         double decoy_fraction, uint64_t seed, qd_trial_record* record,
                         double* outcome_probs, double* intact_probs) {
  QD_REQUIRE(attack && record && outcome_probs, "qd_trial_trace: null argument");
  QD_REQUIRE(type == QD_TRIAL_RANDOM || type == QD_TRIAL_MESSAGE || type == QD_TRIAL_DECOY,
             "qd_trial_trace: unknown trial type");
  return guarded([&] {
    qdecoy::TrialSpec spec;
    if (type == QD_TRIAL_MESSAGE) spec.type = qdecoy::TrialType::Message;
    if (type == QD_TRIAL_DECOY) spec.type = qdecoy::TrialType::Decoy;
    if (j >= 0) spec.j = j;
    if (k >= 0) spec.k = k;
    if (eve_outcome >= 0) spec.eve_outcome = eve_outcome;
    spec.decoy_fraction = decoy_fraction;
    const auto rec = qdecoy::trial_trace(attack->measurement, spec, seed);
    record->type = rec.type == qdecoy::TrialType::Decoy ? QD_TRIAL_DECOY : QD_TRIAL_MESSAGE;
    record->j = rec.j;
    record->k = rec.k;
    record->eve_outcome = rec.eve_outcome;
    record->guess = rec.guess;
    record->guess_correct = rec.guess_correct ? 1 : 0;
    record->intact_probability = rec.intact_probability;
    record->bob_intact = rec.bob_intact ? 1 : 0;
    record->outcomes = rec.outcome_probabilities.size();
    std::copy(rec.outcome_probabilities.begin(), rec.outcome_probabilities.end(), outcome_probs);
    if (intact_probs) {
      for (std::size_t r = 0; r < rec.outcome_probabilities.size(); ++r) {
        intact_probs[r] = rec.intact_probabilities.empty() ? 1.0 : rec.intact_probabilities[r];
      }
    }
    return QD_OK;
  });
}

}  // extern "C"
