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

#ifndef QDECOY_QDECOY_H
#define QDECOY_QDECOY_H

/*
 * C interface to qdecoy: eavesdropping attacks on an n-level channel guarded
 * by quantum decoys, their information gain G and disturbance D, the bound
 *
 *     D >= 1/2 - (1/2n) (sqrt(G) + sqrt((n-1)(1-G)))^2,
 *
 * and a Monte Carlo simulator of the message/decoy protocol.
 *
 * Every call returns a qd_status. On failure qd_last_error() returns a
 * thread-local message describing the most recent error on this thread.
 * Attack handles are opaque, immutable once built, and safe to share between
 * threads; release them with qd_attack_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QDECOY_BUILDING_LIBRARY)
#    define QDECOY_API __declspec(dllexport)
#  else
#    define QDECOY_API __declspec(dllimport)
#  endif
#else
#  define QDECOY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qd_status {
  QD_OK = 0,
  QD_ERR_INVALID_ARGUMENT = 1,
  QD_ERR_DIMENSION = 2,
  QD_ERR_NOT_HERMITIAN = 3,
  QD_ERR_NOT_POSITIVE = 4,
  QD_ERR_INCOMPLETE = 5,
  QD_ERR_ZERO_OPERATOR = 6,
  QD_ERR_NOT_DIAGONAL = 7,
  QD_ERR_INFEASIBLE = 8,
  QD_ERR_BROKEN_ATTACK = 9,
  QD_ERR_PARSE = 10,
  QD_ERR_CONTRACT = 11,
  QD_ERR_BUFFER_TOO_SMALL = 12,
  QD_ERR_INTERNAL = 13
} qd_status;

typedef struct qd_attack qd_attack;

#define QD_SOURCE_MAX 160

typedef struct qd_point {
  int n;
  double g;
  double d;
  double bound;
  double margin;
  char source[QD_SOURCE_MAX]; /* NUL-terminated, truncated if longer */
} qd_point;

typedef struct qd_sim_report {
  int n;
  uint64_t shots;
  double decoy_fraction;
  uint64_t message_trials;
  uint64_t decoy_trials;
  double g_hat;
  double g_se;
  double d_hat;
  double d_se;
  double g_analytic;
  double d_analytic;
  uint64_t seed;
  int sample_bob;
  int consistent;
  char attack_descriptor[QD_SOURCE_MAX];
} qd_sim_report;

typedef enum qd_trial_type {
  QD_TRIAL_RANDOM = -1,
  QD_TRIAL_MESSAGE = 0,
  QD_TRIAL_DECOY = 1
} qd_trial_type;

typedef struct qd_trial_record {
  int type; /* QD_TRIAL_MESSAGE or QD_TRIAL_DECOY */
  int j;
  int k;
  int eve_outcome;
  int guess;
  int guess_correct;
  double intact_probability;
  int bob_intact;
  size_t outcomes; /* number of entries written to the probability buffers */
} qd_trial_record;

QDECOY_API const char* qd_last_error(void);
QDECOY_API const char* qd_status_string(qd_status status);
QDECOY_API const char* qd_version(void);

/* ---- attacks ---------------------------------------------------------- */

/* Descriptor grammar: optimal(n=4,g=0.5) | projective(n=4) | identity(n=4) |
 * prob(n=4,p=0.3) | random(n=4,k=16,seed=42). */
QDECOY_API qd_status qd_attack_parse(const char* descriptor, qd_attack** out);
QDECOY_API qd_status qd_attack_optimal(int n, double g, qd_attack** out);
QDECOY_API qd_status qd_attack_projective(int n, qd_attack** out);
QDECOY_API qd_status qd_attack_identity(int n, qd_attack** out);
QDECOY_API qd_status qd_attack_probabilistic(int n, double p, qd_attack** out);
QDECOY_API qd_status qd_attack_random(int n, int outcomes, uint64_t seed, qd_attack** out);

/* `ops` holds `count` row-major n x n matrices as interleaved (re, im)
 * pairs: 2 * n * n doubles per operator. */
QDECOY_API qd_status qd_attack_from_kraus(int n, size_t count, const double* ops,
                                          double tol, qd_attack** out);

/* `coeffs` holds `outcomes` rows of n diagonal entries as (re, im) pairs. */
QDECOY_API qd_status qd_attack_diagonal(int n, size_t outcomes, const double* coeffs,
                                        qd_attack** out);

QDECOY_API void qd_attack_free(qd_attack* attack);

QDECOY_API int qd_attack_dim(const qd_attack* attack);
QDECOY_API size_t qd_attack_outcomes(const qd_attack* attack);

/* Copies the descriptor into buf (NUL-terminated). *needed, when non-null,
 * receives the full length including the terminator. */
QDECOY_API qd_status qd_attack_descriptor(const qd_attack* attack, char* buf, size_t cap,
                                          size_t* needed);

/* Writes Kraus operator r as 2 * n * n doubles (row-major, re/im). */
QDECOY_API qd_status qd_attack_kraus(const qd_attack* attack, size_t r, double* out);

QDECOY_API qd_status qd_attack_channel_checks(const qd_attack* attack, double tol, int* cp,
                                              int* tp);

/* ---- metrics ---------------------------------------------------------- */

QDECOY_API qd_status qd_estimation_fidelity(const qd_attack* attack, double* g);
QDECOY_API qd_status qd_estimation_fidelity_functional(const qd_attack* attack, double* g);
/* Induced fidelity F on the pairing (decoy) ensemble; D = 1 - F. */
QDECOY_API qd_status qd_induced_fidelity(const qd_attack* attack, double* f);
QDECOY_API qd_status qd_induced_fidelity_functional(const qd_attack* attack, double* f);
QDECOY_API qd_status qd_spectral_quantities(const qd_attack* attack, double* g, double* f);
QDECOY_API qd_status qd_banaszek_bound(double g, int m, int n, double* out);

/* ---- tradeoff --------------------------------------------------------- */

QDECOY_API qd_status qd_disturbance_bound(double g, int n, double* out);
QDECOY_API qd_status qd_saturation_gap(int n, double g, double* out);
QDECOY_API qd_status qd_evaluate(const qd_attack* attack, qd_point* out);

/* Evaluates `trials` random attacks. Up to `capacity` points are copied to
 * `points` (which may be NULL when capacity is 0). */
QDECOY_API qd_status qd_sweep_random(int n, size_t trials, int outcomes, uint64_t seed,
                                     qd_point* points, size_t capacity, double* min_margin);

/* attack_out may be NULL. */
QDECOY_API qd_status qd_optimize(int n, double g, int restarts, int iters, uint64_t seed,
                                 qd_point* best, qd_attack** attack_out);

/* Writes `points` samples of (G, bound) on a uniform grid over [1/n, 1]. */
QDECOY_API qd_status qd_curve(int n, size_t points, double* g_out, double* d_out);

/* ---- protocol --------------------------------------------------------- */

QDECOY_API qd_status qd_simulate(const qd_attack* attack, uint64_t shots,
                                 double decoy_fraction, uint64_t seed, int sample_bob,
                                 qd_sim_report* out);

QDECOY_API qd_status qd_sim_report_json(const qd_sim_report* report, char* buf, size_t cap,
                                        size_t* needed);

/* One trial. Pass QD_TRIAL_RANDOM and/or negative j, k, eve_outcome to draw
 * them from the seeded stream. Buffers receive one value per outcome and
 * must hold qd_attack_outcomes() entries; intact_probs may be NULL. */
QDECOY_API qd_status qd_trial_trace(const qd_attack* attack, int type, int j, int k,
                                    int eve_outcome, double decoy_fraction, uint64_t seed,
                                    qd_trial_record* record, double* outcome_probs,
                                    double* intact_probs);

#ifdef __cplusplus
}
#endif

#endif /* QDECOY_QDECOY_H */
