/* Copyright (c) 2026 bosetrap developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the bosetrap library: canonical momentum
 * distributions of harmonically confined bosons and temperature-fit
 * thermometry.  All functions are thread-safe; error messages are
 * thread-local and remain valid until the next failing call on the
 * same thread.
 */

#ifndef BOSETRAP_H
#define BOSETRAP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bt_status {
  BT_OK = 0,
  BT_ERR_INVALID_ARGUMENT = 1, /* bad parameter, null pointer, mismatch   */
  BT_ERR_DOMAIN = 2,           /* physics out of range (e.g. collapse)    */
  BT_ERR_NUMERICAL = 3,        /* fit/quadrature failure at runtime       */
  BT_ERR_INTERNAL = 4
} bt_status;

/* Message for the most recent failure on the calling thread; never
 * NULL.  Cleared only by the next failure. */
const char* bt_last_error(void);

/* Semantic library version, e.g. "0.1.0". */
const char* bt_version(void);

/* ------------------------------------------------------------------ */
/* Model                                                               */
/* ------------------------------------------------------------------ */

typedef struct bt_model bt_model; /* opaque */
typedef struct bt_table bt_table; /* opaque */

typedef struct bt_model_params {
  int n_particles;
  double mass;
  double hbar;
  double boltzmann_k;
  double omega_xy;     /* radial confinement frequency  */
  double omega_z;      /* axial confinement frequency   */
  double inter_omega;  /* pair-interaction frequency    */
  int attractive;      /* nonzero: attractive coupling  */
} bt_model_params;

/* Fills natural-unit defaults: one particle, all scales 1, no
 * interaction, attractive sign. */
void bt_model_params_init(bt_model_params* params);

/* Validates and allocates; on success *out owns the model. */
bt_status bt_model_create(const bt_model_params* params, bt_model** out);
void bt_model_free(bt_model* model);

/* Internal-mode frequencies (w_xy, w_z); either output may be NULL. */
bt_status bt_model_frequencies(const bt_model* model, double* w_xy, double* w_z);

/* Finite-N condensation temperature T0. */
bt_status bt_model_condensation_temperature(const bt_model* model, double* t0);

/* Characteristic momentum sqrt(hbar m w); the unit of threshold
 * momenta. */
bt_status bt_model_momentum_scale(const bt_model* model, double* scale);

/* Default evaluation cutoff max(10 sqrt(hbar m w), 6 sqrt(2 m k T)). */
bt_status bt_default_momentum_cutoff(const bt_model* model, double temperature,
                                     double* p_max);

/* ------------------------------------------------------------------ */
/* Partition table                                                     */
/* ------------------------------------------------------------------ */

typedef enum bt_sinh_variant {
  BT_SINH_RENORMALIZED = 0, /* internal frequencies w (default)        */
  BT_SINH_CONFINEMENT = 1   /* bare confinement frequencies Omega      */
} bt_sinh_variant;

/* Builds log Z(0..N) at the given temperature from the cycle weights
 * of the chosen frequency family. */
bt_status bt_table_build(const bt_model* model, double temperature,
                         bt_sinh_variant variant, bt_table** out);
void bt_table_free(bt_table* table);

/* Largest particle number in the table, or -1 for NULL. */
int bt_table_size(const bt_table* table);

/* log Z(n), 0 <= n <= N. */
bt_status bt_table_log_z(const bt_table* table, int n, double* out);

/* log Z(N-ell) - log Z(N), 1 <= ell <= N. */
bt_status bt_table_log_ratio(const bt_table* table, int ell, double* out);

/* ------------------------------------------------------------------ */
/* Momentum distributions                                              */
/* ------------------------------------------------------------------ */

typedef enum bt_family {
  BT_FAMILY_BOSE_EXACT = 0,      /* interacting cycle sum              */
  BT_FAMILY_BOSE_IDEAL = 1,      /* zero-coupling limit                */
  BT_FAMILY_DISTINGUISHABLE = 2, /* length-1 cycles only               */
  BT_FAMILY_MAXWELL = 3          /* free particles                     */
} bt_family;

typedef enum bt_normalization {
  BT_NORM_TOTAL_N = 0,     /* values integrate to N */
  BT_NORM_PER_PARTICLE = 1 /* values integrate to 1 */
} bt_normalization;

typedef struct bt_dist_spec {
  bt_family family;
  bt_sinh_variant sinh_variant; /* bose_exact only */
  bt_normalization normalization;
} bt_dist_spec;

/* Defaults: ideal family, renormalized weights, total-N convention. */
void bt_dist_spec_init(bt_dist_spec* spec);

/* Single-point evaluation.  Rebuilds internal state (including any
 * partition table) per call; prefer bt_eval_grid for many points. */
bt_status bt_eval(const bt_model* model, double temperature, const bt_dist_spec* spec,
                  double p_rho, double p_z, double* out);

/* Evaluates `count` points (p_rho[i], p_z[i]) into out[i], sharing one
 * internal evaluator across the grid. */
bt_status bt_eval_grid(const bt_model* model, double temperature,
                       const bt_dist_spec* spec, const double* p_rho,
                       const double* p_z, size_t count, double* out);

/* 3D normalization integral of the distribution with `nodes` (>= 8)
 * quadrature points per dimension; error_estimate (optional) receives
 * the half-node difference. */
bt_status bt_normalization_integral(const bt_model* model, double temperature,
                                    const bt_dist_spec* spec, int nodes, double* value,
                                    double* error_estimate);

/* ------------------------------------------------------------------ */
/* Thermometry                                                         */
/* ------------------------------------------------------------------ */

typedef enum bt_fit_procedure {
  BT_FIT_MAXWELL_TAIL = 0, /* Maxwell fit above threshold p_c          */
  BT_FIT_BOSE_EINSTEIN = 1 /* ideal-boson fit over all momenta         */
} bt_fit_procedure;

typedef enum bt_amplitude_mode {
  BT_AMPLITUDE_PER_PARTICLE = 0, /* compare unit-normalized families   */
  BT_AMPLITUDE_FREE_SCALE = 1    /* fit a multiplicative prefactor too */
} bt_amplitude_mode;

typedef struct bt_fit_config {
  bt_fit_procedure procedure;
  double p_c;        /* tail threshold in units of the momentum scale  */
  double bracket_lo; /* absolute temperatures; 0 selects defaults      */
  double bracket_hi;
  double rel_tol;
  int quadrature_nodes;
  double quadrature_p_max; /* 0 = automatic                            */
  bt_amplitude_mode amplitude;
} bt_fit_config;

/* Defaults: maxwell tail, p_c = 5, default bracket, rel_tol = 1e-8,
 * 128 nodes, automatic truncation, per-particle amplitude. */
void bt_fit_config_init(bt_fit_config* config);

typedef struct bt_fit_result {
  double fitted_temperature;
  double objective_value;
  double objective_error_estimate;
  double amplitude_scale;
  int evaluations;
  double bracket_lo;
  double bracket_hi;
  bt_fit_procedure procedure;
} bt_fit_result;

/* Cylindrically symmetric measured distribution; must be safe to call
 * from multiple threads. */
typedef double (*bt_target_fn)(double p_rho, double p_z, void* user_data);

/* Least-squares temperature fit of the configured trial family to the
 * target.  Returns BT_ERR_NUMERICAL when the objective minimum sits on
 * a bracket edge. */
bt_status bt_fit_temperature(const bt_model* model, bt_target_fn target,
                             void* user_data, const bt_fit_config* config,
                             bt_fit_result* out);

typedef struct bt_sweep_row {
  int n_particles;
  double t_be;         /* generating temperature (absolute)            */
  double t_be_over_t0; /* same, in units of T0(N)                      */
  double t_mb;         /* tail-fit temperature                         */
  double rel_diff;     /* (T_BE - T_MB) / T_BE                         */
  int ok;              /* zero: fit failed, see note                   */
  char note[160];
} bt_sweep_row;

/* For every (N, t) pair: synthesizes the per-particle ideal
 * distribution at t * T0(N) and tail-fits the Maxwell family to it.
 * rows must hold n_count * t_count entries, ordered N-major.  Failed
 * rows are flagged via .ok; the call itself fails only on invalid
 * input. */
bt_status bt_bias_sweep(const bt_model* base_model, const int* n_list, size_t n_count,
                        const double* t_over_t0, size_t t_count,
                        const bt_fit_config* config, bt_sweep_row* rows);

/* ------------------------------------------------------------------ */
/* Self test                                                           */
/* ------------------------------------------------------------------ */

typedef void (*bt_selftest_report_fn)(const char* name, int passed, double measured,
                                      double tolerance, const char* detail,
                                      void* user_data);

/* Runs the cross-module check battery, reporting each check through
 * the (optional) callback.  Returns the number of failed checks, or -1
 * on internal error. */
int bt_selftest(bt_selftest_report_fn reporter, void* user_data);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BOSETRAP_H */
