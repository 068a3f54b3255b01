// Copyright 2026 The cycledom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the cycledom library.
 *
 * Conventions:
 *   - Every fallible call returns a cd_status; CD_OK is zero. On failure the
 *     message for the calling thread is available from cd_last_error().
 *   - Objects are opaque handles created by *_create / producer functions and
 *     released with the matching *_destroy. Destroy functions accept NULL.
 *   - Strings returned through `char **out` are owned by the caller and must
 *     be released with cd_string_free().
 *   - Sites are 1-based; outcome bits are 0 (move to predecessor) or 1 (move
 *     to successor).
 */

#ifndef CYCLEDOM_H
#define CYCLEDOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CYCLEDOM_BUILDING_LIBRARY)
#define CD_API __declspec(dllexport)
#else
#define CD_API __declspec(dllimport)
#endif
#else
#define CD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cd_status {
    CD_OK = 0,
    CD_ERR_INVALID_ARGUMENT = 1,
    CD_ERR_OUT_OF_SCHEDULE = 2,
    CD_ERR_DIMENSION_MISMATCH = 3,
    CD_ERR_NORMALIZATION = 4,
    CD_ERR_DEGENERATE_BASELINE = 5,
    CD_ERR_MODE = 6,
    CD_ERR_PRECONDITION = 7,
    CD_ERR_PARSE = 8,
    CD_ERR_IO = 9,
    CD_ERR_NULL_POINTER = 10,
    CD_ERR_INTERNAL = 99
} cd_status;

CD_API const char *cd_version(void);
CD_API const char *cd_status_name(cd_status status);
/* Message of the most recent failure on the calling thread ("" if none). */
CD_API const char *cd_last_error(void);
CD_API void cd_string_free(char *s);

/* ---- graph ------------------------------------------------------------- */

typedef struct cd_table cd_table;

CD_API cd_status cd_end_position(int n, int site, int bit, int *out);
CD_API cd_status cd_dominated_count(int n, int alice_site, int alice_bit, int bob_site, int bob_bit, int *out);

CD_API cd_status cd_table_create(int n, cd_table **out);
CD_API void cd_table_destroy(cd_table *table);
CD_API int cd_table_size(const cd_table *table);
CD_API cd_status cd_table_entry(const cd_table *table, int alice_site, int alice_bit, int bob_site, int bob_bit,
                                int *out);
/* Unweighted mean of all 4n^2 entries as a reduced fraction. */
CD_API cd_status cd_table_mean(const cd_table *table, int64_t *num, int64_t *den);
/* CSV: alice_site,alice_bit,bob_site,bob_bit,count */
CD_API cd_status cd_table_csv(const cd_table *table, char **out);

/* ---- strategies -------------------------------------------------------- */

typedef struct cd_strategy cd_strategy;
typedef struct cd_classical cd_classical;

CD_API cd_status cd_schedule_theta(int n, double *out);
CD_API cd_status cd_strategy_ansatz(int n, double theta, cd_strategy **out);
CD_API cd_status cd_strategy_from_angles(int n, const double *alice, const double *bob, cd_strategy **out);
CD_API cd_status cd_strategy_from_json(const char *json, cd_strategy **out);
CD_API void cd_strategy_destroy(cd_strategy *strategy);
CD_API int cd_strategy_size(const cd_strategy *strategy);
/* Copies n angles into each buffer. */
CD_API cd_status cd_strategy_angles(const cd_strategy *strategy, double *alice, double *bob);
/* {"n": int, "alice": [...], "bob": [...]} */
CD_API cd_status cd_strategy_json(const cd_strategy *strategy, char **out);
/* out = {p00, p01, p10, p11} */
CD_API cd_status cd_outcome_distribution(const cd_strategy *strategy, int alice_site, int bob_site, double out[4]);

CD_API cd_status cd_classical_create(int n, const int *alice_bits, const int *bob_bits, cd_classical **out);
CD_API void cd_classical_destroy(cd_classical *strategy);
CD_API int cd_classical_size(const cd_classical *strategy);
CD_API cd_status cd_classical_bits(const cd_classical *strategy, int *alice_bits, int *bob_bits);

/* ---- analytics --------------------------------------------------------- */

typedef struct cd_advantage {
    double q;
    double c;
    double r;
    double a;
    int a_percent;
} cd_advantage;

CD_API cd_status cd_exact_quantum(const cd_table *table, const cd_strategy *strategy, double *out);
CD_API cd_status cd_exact_classical(const cd_table *table, const cd_classical *strategy, int64_t *num,
                                    int64_t *den);
CD_API cd_status cd_exact_random(const cd_table *table, int64_t *num, int64_t *den);
CD_API cd_status cd_closed_form(int n, double theta, double *out);
/* lambda and mu_1..mu_{n-1} (buffer of n-1 doubles), all multiples of 1/2. */
CD_API cd_status cd_series_coefficients(int n, double *lambda, double *mu);
CD_API cd_status cd_series_json(int n, char **out);
CD_API cd_status cd_advantage_compute(double q, double c, double r, cd_advantage *out);
/* {"q","c","r","a","a_percent"} */
CD_API cd_status cd_advantage_json(const cd_advantage *report, char **out);

/* ---- optimizer --------------------------------------------------------- */

typedef struct cd_sweep cd_sweep;
typedef struct cd_full_result cd_full_result;

typedef struct cd_scan_row {
    int n;
    double theta_star;
    double n_theta_star;
    double d_star;
} cd_scan_row;

typedef enum cd_search_mode { CD_SEARCH_EXHAUSTIVE = 0, CD_SEARCH_LOCAL = 1 } cd_search_mode;

CD_API cd_status cd_optimize_theta(int n, int grid_size, cd_sweep **out);
CD_API void cd_sweep_destroy(cd_sweep *sweep);
CD_API double cd_sweep_theta_star(const cd_sweep *sweep);
CD_API double cd_sweep_d_star(const cd_sweep *sweep);
CD_API double cd_sweep_n_theta_star(const cd_sweep *sweep);
CD_API size_t cd_sweep_tie_count(const cd_sweep *sweep);
CD_API double cd_sweep_tie(const cd_sweep *sweep, size_t k);
CD_API size_t cd_sweep_grid_points(const cd_sweep *sweep);
CD_API cd_status cd_sweep_grid(const cd_sweep *sweep, double *theta, double *values);
CD_API cd_status cd_sweep_json(const cd_sweep *sweep, char **out);
CD_API int cd_default_grid_size(int n);

/* rows must hold n_max - n_min + 1 entries. */
CD_API cd_status cd_theta_scan(int n_min, int n_max, int workers, cd_scan_row *rows);
/* CSV: n,theta_star,n_theta_star,d_star */
CD_API cd_status cd_scan_csv(const cd_scan_row *rows, size_t count, int precision, char **out);
/* steps must hold `count` entries; *num_steps receives the number written. */
CD_API cd_status cd_scan_steps(const cd_scan_row *rows, size_t count, int *steps, size_t *num_steps);

CD_API cd_status cd_optimize_full(int n, int restarts, uint64_t seed, int workers, cd_full_result **out);
CD_API void cd_full_result_destroy(cd_full_result *result);
CD_API double cd_full_result_value(const cd_full_result *result);
CD_API double cd_full_result_gradient_norm(const cd_full_result *result);
CD_API int cd_full_result_converged(const cd_full_result *result);
CD_API int cd_full_result_lower_bound_only(const cd_full_result *result);
CD_API int cd_full_result_restarts(const cd_full_result *result);
/* Gauge-fixed best strategy; caller destroys. */
CD_API cd_status cd_full_result_strategy(const cd_full_result *result, cd_strategy **out);
CD_API cd_status cd_full_result_json(const cd_full_result *result, char **out);

CD_API cd_status cd_classical_optimum(const cd_table *table, cd_search_mode mode, uint64_t seed, int restarts,
                                      cd_classical **strategy, int64_t *num, int64_t *den);

/* ---- monte carlo ------------------------------------------------------- */

typedef enum cd_noise_kind { CD_NOISE_IDEAL = 0, CD_NOISE_WERNER = 1, CD_NOISE_READOUT = 2 } cd_noise_kind;

typedef struct cd_noise {
    cd_noise_kind kind;
    double p;
} cd_noise;

typedef struct cd_rng cd_rng;
typedef struct cd_simulation cd_simulation;

typedef struct cd_achieved {
    int n;
    cd_noise noise;
    uint64_t seed;
    uint64_t num_games;
    cd_advantage report;
    double q_std_error;
    int classical_exact;
} cd_achieved;

CD_API cd_status cd_rng_create(uint64_t seed, uint64_t stream, cd_rng **out);
CD_API void cd_rng_destroy(cd_rng *rng);

/* Exactly one of quantum / classical may be non-NULL; both NULL means
   coin-flipping play. */
CD_API cd_status cd_play_once(const cd_table *table, const cd_strategy *quantum, const cd_classical *classical,
                              cd_noise noise, cd_rng *rng, int *out);
CD_API cd_status cd_exact_noisy(const cd_table *table, const cd_strategy *quantum, const cd_classical *classical,
                                cd_noise noise, double *out);

/* checkpoint_every == 0 selects powers of two. */
CD_API cd_status cd_simulate(const cd_table *table, const cd_strategy *quantum, const cd_classical *classical,
                             cd_noise noise, uint64_t seed, uint64_t num_games, uint64_t checkpoint_every,
                             int workers, cd_simulation **out);
CD_API void cd_simulation_destroy(cd_simulation *sim);
CD_API double cd_simulation_final_mean(const cd_simulation *sim);
CD_API double cd_simulation_std_error(const cd_simulation *sim);
CD_API size_t cd_simulation_checkpoint_count(const cd_simulation *sim);
CD_API cd_status cd_simulation_checkpoint(const cd_simulation *sim, size_t k, uint64_t *games, double *mean);
/* CSV: games,running_mean */
CD_API cd_status cd_simulation_trace_csv(const cd_simulation *sim, int precision, char **out);
CD_API cd_status cd_simulation_json(const cd_simulation *sim, char **out);

CD_API cd_status cd_achieved_advantage(int n, cd_noise noise, uint64_t seed, uint64_t num_games, int workers,
                                       cd_achieved *out);
/* JSON array of {n, noise_kind, p, q, c, r, a, a_percent, seed, num_games} */
CD_API cd_status cd_campaign_json(const cd_achieved *entries, size_t count, char **out);
CD_API cd_status cd_calibrate_noise(int n, cd_noise_kind kind, double target_a, double *p_out);

#ifdef __cplusplus
}
#endif

#endif /* CYCLEDOM_H */
