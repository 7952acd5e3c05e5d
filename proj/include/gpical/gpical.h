// Copyright 2026 The gpical Authors
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

/* C interface to the gpical library.
 *
 * All objects are opaque handles created by gpical_*_create / gpical_*_draw /
 * gpical_*_compute functions and released with the matching *_destroy.
 * Every fallible call returns a gpical_status; on failure a message
 * describing the error is available from gpical_last_error() on the calling
 * thread until the next failing call on that thread.
 */
#ifndef GPICAL_GPICAL_H_
#define GPICAL_GPICAL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GPICAL_BUILDING_LIBRARY)
#define GPICAL_API __declspec(dllexport)
#else
#define GPICAL_API __declspec(dllimport)
#endif
#else
#define GPICAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpical_status {
  GPICAL_OK = 0,
  GPICAL_ERR_INVALID_ARGUMENT = 1,
  GPICAL_ERR_CONFIG = 2,
  GPICAL_ERR_IO = 3,
  GPICAL_ERR_NUMERICAL = 4,
  GPICAL_ERR_INTERNAL = 5
} gpical_status;

typedef enum gpical_loss {
  GPICAL_LOSS_MAP_MAX = 0,
  GPICAL_LOSS_RECONSTRUCTION = 1
} gpical_loss;

typedef enum gpical_method {
  GPICAL_METHOD_KNOWN_KAPPA = 0,
  GPICAL_METHOD_UNCOMPENSATED = 1,
  GPICAL_METHOD_LEARNED_MAX = 2,
  GPICAL_METHOD_LEARNED_NORM = 3
} gpical_method;

typedef struct gpical_config gpical_config;
typedef struct gpical_kappa gpical_kappa;
typedef struct gpical_observation gpical_observation;
typedef struct gpical_map gpical_map;
typedef struct gpical_train_log gpical_train_log;
typedef struct gpical_report gpical_report;

typedef struct gpical_detection {
  double statistic;
  int detected;
  double theta_hat;   /* rad */
  double tau_hat;     /* s */
  double gamma_hat_re;
  double gamma_hat_im;
  int theta_index;
  int tau_index;
} gpical_detection;

typedef struct gpical_method_summary {
  gpical_method method;
  const char* tag; /* static string, e.g. "known-kappa" */
  double angle_rmse_deg;
  double range_rmse_m;
  double kappa_error;
  int n_realizations;
} gpical_method_summary;

/* Receives a human-readable progress line. */
typedef void (*gpical_progress_fn)(const char* message, void* user);

GPICAL_API const char* gpical_version(void);
GPICAL_API const char* gpical_last_error(void);
GPICAL_API const char* gpical_status_string(gpical_status status);
GPICAL_API void gpical_set_threads(int n);

/* --- configuration ------------------------------------------------------ */

/* Creates a config holding the default (full-scale) parameters. */
GPICAL_API gpical_status gpical_config_create(gpical_config** out);
GPICAL_API gpical_status gpical_config_clone(const gpical_config* cfg,
                                             gpical_config** out);
GPICAL_API void gpical_config_destroy(gpical_config* cfg);
/* Replaces every key present in the file; other keys keep their values. */
GPICAL_API gpical_status gpical_config_load(gpical_config* cfg,
                                            const char* path);
GPICAL_API gpical_status gpical_config_set(gpical_config* cfg, const char* key,
                                           const char* value);
/* "key=value" form of gpical_config_set. */
GPICAL_API gpical_status gpical_config_assign(gpical_config* cfg,
                                              const char* assignment);
/* Copies the value of `key` into buf (NUL-terminated). *needed, if not
 * NULL, receives the required buffer size including the terminator. */
GPICAL_API gpical_status gpical_config_get(const gpical_config* cfg,
                                           const char* key, char* buf,
                                           size_t len, size_t* needed);
/* Canonical `key = value` text of the whole config. */
GPICAL_API gpical_status gpical_config_text(const gpical_config* cfg,
                                            char* buf, size_t len,
                                            size_t* needed);
GPICAL_API gpical_status gpical_config_save(const gpical_config* cfg,
                                            const char* path);
GPICAL_API gpical_status gpical_config_validate(const gpical_config* cfg);
GPICAL_API uint64_t gpical_config_seed(const gpical_config* cfg);
GPICAL_API int gpical_config_n_antennas(const gpical_config* cfg);

/* --- gain-phase vectors --------------------------------------------------- */

/* Impairment draw from the stream (seed, gain-phase, index). */
GPICAL_API gpical_status gpical_kappa_draw(const gpical_config* cfg,
                                           uint64_t seed, uint64_t index,
                                           gpical_kappa** out);
GPICAL_API gpical_status gpical_kappa_ones(int n, gpical_kappa** out);
/* Copies and renormalizes to ||kappa||^2 = n. */
GPICAL_API gpical_status gpical_kappa_from_parts(const double* re,
                                                 const double* im, int n,
                                                 gpical_kappa** out);
GPICAL_API gpical_status gpical_kappa_read_csv(const char* path,
                                               gpical_kappa** out);
GPICAL_API void gpical_kappa_destroy(gpical_kappa* kappa);
GPICAL_API int gpical_kappa_size(const gpical_kappa* kappa);
GPICAL_API gpical_status gpical_kappa_get(const gpical_kappa* kappa,
                                          double* re, double* im, int n);
/* Global-phase-aligned relative error between estimate and truth. */
GPICAL_API gpical_status gpical_kappa_error(const gpical_kappa* estimate,
                                            const gpical_kappa* truth,
                                            double* out);
GPICAL_API gpical_status gpical_kappa_write_csv(const gpical_kappa* kappa,
                                                const char* path);

/* --- observations, maps, detection ---------------------------------------- */

/* Draws a scenario from the stream (seed, map-demo, index) and synthesizes
 * its observation with kappa_true at the configured SNR. force_target is
 * -1 (draw t from the prior), 0 or 1. */
GPICAL_API gpical_status gpical_observation_draw(
    const gpical_config* cfg, const gpical_kappa* kappa_true, uint64_t seed,
    uint64_t index, int force_target, gpical_observation** out);
GPICAL_API void gpical_observation_destroy(gpical_observation* obs);
GPICAL_API gpical_status gpical_observation_write_csv(
    const gpical_observation* obs, const char* path);
/* Ground truth, for evaluation only. */
GPICAL_API gpical_status gpical_observation_truth(
    const gpical_observation* obs, int* t, double* theta, double* tau,
    double* theta_min, double* theta_max);

/* Angle-delay map on the observation's own prior-region grid. */
GPICAL_API gpical_status gpical_map_compute(const gpical_config* cfg,
                                            const gpical_observation* obs,
                                            const gpical_kappa* kappa_hat,
                                            gpical_map** out);
GPICAL_API void gpical_map_destroy(gpical_map* map);
GPICAL_API gpical_status gpical_map_max(const gpical_map* map, double* out);
GPICAL_API gpical_status gpical_map_shape(const gpical_map* map, int* n_theta,
                                          int* n_tau);
/* Writes values / scale; scale must be > 0. */
GPICAL_API gpical_status gpical_map_write_csv(const gpical_map* map,
                                              double scale, const char* path);

GPICAL_API gpical_status gpical_detect(const gpical_config* cfg,
                                       const gpical_observation* obs,
                                       const gpical_kappa* kappa_assumed,
                                       double eta, gpical_detection* out);

/* --- training --------------------------------------------------------------- */

/* Runs the calibration loop against observations synthesized with
 * kappa_true, from training streams keyed by `seed`. On success *learned
 * receives the final estimate and, if log is not NULL, *log the
 * per-iteration record (loss and global-phase-aligned error of the updated
 * estimate). A non-finite loss yields GPICAL_ERR_NUMERICAL and
 * *failed_iteration (if not NULL) is set to its index, otherwise -1. */
GPICAL_API gpical_status gpical_train(const gpical_config* cfg,
                                      gpical_loss loss,
                                      const gpical_kappa* kappa_true,
                                      uint64_t seed, gpical_kappa** learned,
                                      gpical_train_log** log,
                                      int64_t* failed_iteration);
GPICAL_API void gpical_train_log_destroy(gpical_train_log* log);
GPICAL_API int gpical_train_log_size(const gpical_train_log* log);
GPICAL_API gpical_status gpical_train_log_row(const gpical_train_log* log,
                                              int row, int* iteration,
                                              double* loss,
                                              double* kappa_error);
/* with_wall_clock adds a wall_ms column; such files are not reproducible. */
GPICAL_API gpical_status gpical_train_log_write_csv(
    const gpical_train_log* log, int with_wall_clock, const char* path);

/* --- evaluation ------------------------------------------------------------- */

GPICAL_API gpical_status gpical_run_comparison(const gpical_config* cfg,
                                               int n_realizations,
                                               uint64_t seed,
                                               gpical_progress_fn progress,
                                               void* user,
                                               gpical_report** out,
                                               int64_t* failed_realization);
GPICAL_API void gpical_report_destroy(gpical_report* report);
GPICAL_API int gpical_report_method_count(const gpical_report* report);
GPICAL_API gpical_status gpical_report_summary(const gpical_report* report,
                                               int method,
                                               gpical_method_summary* out);
GPICAL_API gpical_status gpical_report_pd_at_pfa(const gpical_report* report,
                                                 int method, double p_fa,
                                                 double* p_d);
GPICAL_API gpical_status gpical_report_write_roc_csv(
    const gpical_report* report, const char* path);
GPICAL_API gpical_status gpical_report_write_summary_csv(
    const gpical_report* report, const char* path);
/* Learned estimates of one realization (1 = max loss, 2 = norm loss, 0 =
 * true kappa), returned as new handles. */
GPICAL_API gpical_status gpical_report_realization_kappa(
    const gpical_report* report, int realization, int which,
    gpical_kappa** out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* GPICAL_GPICAL_H_ */
