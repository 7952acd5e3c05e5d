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

#include "gpical/gpical.h"

#include <chrono>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "gpical/calibrate.hpp"
#include "gpical/config.hpp"
#include "gpical/csv.hpp"
#include "gpical/detector.hpp"
#include "gpical/eval.hpp"
#include "gpical/parallel.hpp"
#include "gpical/rng.hpp"
#include "gpical/scenario.hpp"
#include "gpical/signal.hpp"

struct gpical_config {
  gpical::ScenarioConfig value;
};
struct gpical_kappa {
  gpical::GainPhase value;
};
struct gpical_observation {
  gpical::Observation value;
};
struct gpical_map {
  gpical::AngleDelayMap value;
};
struct gpical_train_log {
  std::vector<gpical::TrainLogRow> rows;
};
struct gpical_report {
  gpical::ComparisonResult value;
};

namespace {

thread_local std::string g_last_error;

gpical_status fail(gpical_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
gpical_status guarded(Fn&& fn) {
  try {
    fn();
    return GPICAL_OK;
  } catch (const gpical::Error& e) {
    return fail(static_cast<gpical_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GPICAL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GPICAL_ERR_INTERNAL, e.what());
  }
}

#define GPICAL_REQUIRE(cond, msg) \
  if (!(cond)) return fail(GPICAL_ERR_INVALID_ARGUMENT, msg)

gpical_status copy_string(const std::string& s, char* buf, size_t len,
                          size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf == nullptr || len == 0) {
    return needed ? GPICAL_OK
                  : fail(GPICAL_ERR_INVALID_ARGUMENT, "null output buffer");
  }
  if (len < s.size() + 1) {
    return fail(GPICAL_ERR_INVALID_ARGUMENT, "output buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return GPICAL_OK;
}

}  // namespace

extern "C" {

const char* gpical_version(void) { return GPICAL_VERSION_STRING; }

const char* gpical_last_error(void) { return g_last_error.c_str(); }

const char* gpical_status_string(gpical_status status) {
  switch (status) {
    case GPICAL_OK:
      return "ok";
    case GPICAL_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case GPICAL_ERR_CONFIG:
      return "configuration error";
    case GPICAL_ERR_IO:
      return "i/o error";
    case GPICAL_ERR_NUMERICAL:
      return "numerical failure";
    case GPICAL_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void gpical_set_threads(int n) { gpical::set_thread_count(n); }

gpical_status gpical_config_create(gpical_config** out) {
  GPICAL_REQUIRE(out, "null output handle");
  return guarded([&] { *out = new gpical_config{}; });
}

gpical_status gpical_config_clone(const gpical_config* cfg,
                                  gpical_config** out) {
  GPICAL_REQUIRE(cfg && out, "null handle");
  return guarded([&] { *out = new gpical_config{cfg->value}; });
}

void gpical_config_destroy(gpical_config* cfg) { delete cfg; }

gpical_status gpical_config_load(gpical_config* cfg, const char* path) {
  GPICAL_REQUIRE(cfg && path, "null argument");
  return guarded([&] {
    gpical::ScenarioConfig merged = cfg->value;
    merged.apply_file(path);
    cfg->value = merged;
  });
}

gpical_status gpical_config_set(gpical_config* cfg, const char* key,
                                const char* value) {
  GPICAL_REQUIRE(cfg && key && value, "null argument");
  return guarded([&] { cfg->value.set(key, value); });
}

gpical_status gpical_config_assign(gpical_config* cfg,
                                   const char* assignment) {
  GPICAL_REQUIRE(cfg && assignment, "null argument");
  return guarded([&] {
    const auto [key, value] = gpical::split_assignment(assignment);
    cfg->value.set(key, value);
  });
}

gpical_status gpical_config_get(const gpical_config* cfg, const char* key,
                                char* buf, size_t len, size_t* needed) {
  GPICAL_REQUIRE(cfg && key, "null argument");
  std::string value;
  const gpical_status st = guarded([&] { value = cfg->value.get(key); });
  if (st != GPICAL_OK) return st;
  return copy_string(value, buf, len, needed);
}

gpical_status gpical_config_text(const gpical_config* cfg, char* buf,
                                 size_t len, size_t* needed) {
  GPICAL_REQUIRE(cfg, "null config");
  return copy_string(cfg->value.to_text(), buf, len, needed);
}

gpical_status gpical_config_save(const gpical_config* cfg, const char* path) {
  GPICAL_REQUIRE(cfg && path, "null argument");
  return guarded([&] { cfg->value.save(path); });
}

gpical_status gpical_config_validate(const gpical_config* cfg) {
  GPICAL_REQUIRE(cfg, "null config");
  return guarded([&] { cfg->value.validate(); });
}

uint64_t gpical_config_seed(const gpical_config* cfg) {
  return cfg ? cfg->value.seed : 0;
}

int gpical_config_n_antennas(const gpical_config* cfg) {
  return cfg ? cfg->value.n_antennas : 0;
}

gpical_status gpical_kappa_draw(const gpical_config* cfg, uint64_t seed,
                                uint64_t index, gpical_kappa** out) {
  GPICAL_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    cfg->value.validate();
    gpical::Stream rng(seed, gpical::Purpose::kGainPhase, index);
    *out = new gpical_kappa{gpical::draw_gain_phase(cfg->value, rng)};
  });
}

gpical_status gpical_kappa_ones(int n, gpical_kappa** out) {
  GPICAL_REQUIRE(out && n >= 1, "need n >= 1 and an output handle");
  return guarded([&] { *out = new gpical_kappa{gpical::GainPhase::ones(n)}; });
}

gpical_status gpical_kappa_from_parts(const double* re, const double* im,
                                      int n, gpical_kappa** out) {
  GPICAL_REQUIRE(re && im && out && n >= 1, "invalid argument");
  return guarded([&] {
    gpical::CVector v(n);
    for (int k = 0; k < n; ++k) v[k] = gpical::Complex(re[k], im[k]);
    *out = new gpical_kappa{gpical::GainPhase::normalized(v)};
  });
}

gpical_status gpical_kappa_read_csv(const char* path, gpical_kappa** out) {
  GPICAL_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new gpical_kappa{
        gpical::GainPhase::normalized(gpical::read_kappa_csv(path).kappa)};
  });
}

void gpical_kappa_destroy(gpical_kappa* kappa) { delete kappa; }

int gpical_kappa_size(const gpical_kappa* kappa) {
  return kappa ? kappa->value.size() : 0;
}

gpical_status gpical_kappa_get(const gpical_kappa* kappa, double* re,
                               double* im, int n) {
  GPICAL_REQUIRE(kappa && re && im, "null argument");
  GPICAL_REQUIRE(n == kappa->value.size(), "length mismatch");
  for (int k = 0; k < n; ++k) {
    re[k] = kappa->value.kappa[k].real();
    im[k] = kappa->value.kappa[k].imag();
  }
  return GPICAL_OK;
}

gpical_status gpical_kappa_error(const gpical_kappa* estimate,
                                 const gpical_kappa* truth, double* out) {
  GPICAL_REQUIRE(estimate && truth && out, "null argument");
  return guarded(
      [&] { *out = gpical::kappa_error(estimate->value, truth->value); });
}

gpical_status gpical_kappa_write_csv(const gpical_kappa* kappa,
                                     const char* path) {
  GPICAL_REQUIRE(kappa && path, "null argument");
  return guarded([&] { gpical::write_kappa_csv(path, kappa->value); });
}

gpical_status gpical_observation_draw(const gpical_config* cfg,
                                      const gpical_kappa* kappa_true,
                                      uint64_t seed, uint64_t index,
                                      int force_target,
                                      gpical_observation** out) {
  GPICAL_REQUIRE(cfg && kappa_true && out, "null argument");
  GPICAL_REQUIRE(force_target >= -1 && force_target <= 1,
                 "force_target must be -1, 0 or 1");
  return guarded([&] {
    const gpical::ScenarioConfig& c = cfg->value;
    c.validate();
    gpical::Stream rng(seed, gpical::Purpose::kMapDemo, index);
    gpical::ScenarioDraw draw = gpical::draw_scenario(c, rng);
    if (force_target >= 0) draw.t = force_target;
    *out = new gpical_observation{
        gpical::synthesize(draw, kappa_true->value, c.noise_power(), c, rng)};
  });
}

void gpical_observation_destroy(gpical_observation* obs) { delete obs; }

gpical_status gpical_observation_write_csv(const gpical_observation* obs,
                                           const char* path) {
  GPICAL_REQUIRE(obs && path, "null argument");
  return guarded([&] { gpical::write_observation_csv(path, obs->value.y); });
}

gpical_status gpical_observation_truth(const gpical_observation* obs, int* t,
                                       double* theta, double* tau,
                                       double* theta_min, double* theta_max) {
  GPICAL_REQUIRE(obs, "null observation");
  const gpical::ScenarioDraw& d = obs->value.truth;
  if (t) *t = d.t;
  if (theta) *theta = d.theta;
  if (tau) *tau = d.tau;
  if (theta_min) *theta_min = d.theta_min;
  if (theta_max) *theta_max = d.theta_max;
  return GPICAL_OK;
}

gpical_status gpical_map_compute(const gpical_config* cfg,
                                 const gpical_observation* obs,
                                 const gpical_kappa* kappa_hat,
                                 gpical_map** out) {
  GPICAL_REQUIRE(cfg && obs && kappa_hat && out, "null argument");
  return guarded([&] {
    const auto grid = gpical::GridSpec::for_draw(obs->value.truth, cfg->value);
    *out = new gpical_map{gpical::angle_delay_map(obs->value, kappa_hat->value,
                                                  grid, cfg->value)};
  });
}

void gpical_map_destroy(gpical_map* map) { delete map; }

gpical_status gpical_map_max(const gpical_map* map, double* out) {
  GPICAL_REQUIRE(map && out, "null argument");
  *out = map->value.values.maxCoeff();
  return GPICAL_OK;
}

gpical_status gpical_map_shape(const gpical_map* map, int* n_theta,
                               int* n_tau) {
  GPICAL_REQUIRE(map, "null map");
  if (n_theta) *n_theta = static_cast<int>(map->value.values.rows());
  if (n_tau) *n_tau = static_cast<int>(map->value.values.cols());
  return GPICAL_OK;
}

gpical_status gpical_map_write_csv(const gpical_map* map, double scale,
                                   const char* path) {
  GPICAL_REQUIRE(map && path, "null argument");
  GPICAL_REQUIRE(scale > 0.0, "scale must be > 0");
  return guarded([&] { gpical::write_map_csv(path, map->value, scale); });
}

gpical_status gpical_detect(const gpical_config* cfg,
                            const gpical_observation* obs,
                            const gpical_kappa* kappa_assumed, double eta,
                            gpical_detection* out) {
  GPICAL_REQUIRE(cfg && obs && kappa_assumed && out, "null argument");
  return guarded([&] {
    const auto grid = gpical::GridSpec::for_draw(obs->value.truth, cfg->value);
    const gpical::DetectionResult r =
        gpical::maprt(obs->value, kappa_assumed->value, grid, eta, cfg->value);
    *out = gpical_detection{r.statistic,         r.detected ? 1 : 0,
                            r.theta_hat,         r.tau_hat,
                            r.gamma_hat.real(),  r.gamma_hat.imag(),
                            r.theta_index,       r.tau_index};
  });
}

gpical_status gpical_train(const gpical_config* cfg, gpical_loss loss,
                           const gpical_kappa* kappa_true, uint64_t seed,
                           gpical_kappa** learned, gpical_train_log** log,
                           int64_t* failed_iteration) {
  GPICAL_REQUIRE(cfg && kappa_true && learned, "null argument");
  GPICAL_REQUIRE(loss == GPICAL_LOSS_MAP_MAX ||
                     loss == GPICAL_LOSS_RECONSTRUCTION,
                 "unknown loss");
  if (failed_iteration) *failed_iteration = -1;
  const auto choice = loss == GPICAL_LOSS_MAP_MAX
                          ? gpical::LossChoice::kMapMax
                          : gpical::LossChoice::kReconstruction;
  auto record = std::make_unique<gpical_train_log>();
  const auto start = std::chrono::steady_clock::now();
  // The logging observer is the only reader of kappa_true besides synthesis.
  auto observer = [&](const gpical::TrainState& s) {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    record->rows.push_back(
        {s.iteration, s.loss_history.back(),
         gpical::kappa_error(s.kappa_hat, kappa_true->value), ms});
  };
  try {
    gpical::TrainResult result =
        gpical::train(cfg->value, choice, kappa_true->value, seed, observer);
    *learned = new gpical_kappa{std::move(result.kappa_hat)};
    if (log) *log = record.release();
    return GPICAL_OK;
  } catch (const gpical::NumericalError& e) {
    if (failed_iteration) *failed_iteration = e.iteration();
    return fail(GPICAL_ERR_NUMERICAL, e.what());
  } catch (const gpical::Error& e) {
    return fail(static_cast<gpical_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(GPICAL_ERR_INTERNAL, e.what());
  }
}

void gpical_train_log_destroy(gpical_train_log* log) { delete log; }

int gpical_train_log_size(const gpical_train_log* log) {
  return log ? static_cast<int>(log->rows.size()) : 0;
}

gpical_status gpical_train_log_row(const gpical_train_log* log, int row,
                                   int* iteration, double* loss,
                                   double* kappa_error) {
  GPICAL_REQUIRE(log, "null log");
  GPICAL_REQUIRE(row >= 0 && row < static_cast<int>(log->rows.size()),
                 "row out of range");
  const auto& r = log->rows[row];
  if (iteration) *iteration = r.iteration;
  if (loss) *loss = r.loss;
  if (kappa_error) *kappa_error = r.kappa_error;
  return GPICAL_OK;
}

gpical_status gpical_train_log_write_csv(const gpical_train_log* log,
                                         int with_wall_clock,
                                         const char* path) {
  GPICAL_REQUIRE(log && path, "null argument");
  return guarded([&] {
    gpical::write_train_log_csv(path, log->rows, with_wall_clock != 0);
  });
}

gpical_status gpical_run_comparison(const gpical_config* cfg,
                                    int n_realizations, uint64_t seed,
                                    gpical_progress_fn progress, void* user,
                                    gpical_report** out,
                                    int64_t* failed_realization) {
  GPICAL_REQUIRE(cfg && out, "null argument");
  if (failed_realization) *failed_realization = -1;
  gpical::ProgressCallback cb;
  if (progress) {
    cb = [progress, user](const std::string& msg) {
      progress(msg.c_str(), user);
    };
  }
  try {
    *out = new gpical_report{
        gpical::run_comparison(cfg->value, n_realizations, seed, cb)};
    return GPICAL_OK;
  } catch (const gpical::NumericalError& e) {
    if (failed_realization) *failed_realization = e.realization();
    return fail(GPICAL_ERR_NUMERICAL, e.what());
  } catch (const gpical::Error& e) {
    return fail(static_cast<gpical_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(GPICAL_ERR_INTERNAL, e.what());
  }
}

void gpical_report_destroy(gpical_report* report) { delete report; }

int gpical_report_method_count(const gpical_report* report) {
  return report ? static_cast<int>(report->value.reports.size()) : 0;
}

gpical_status gpical_report_summary(const gpical_report* report, int method,
                                    gpical_method_summary* out) {
  GPICAL_REQUIRE(report && out, "null argument");
  GPICAL_REQUIRE(method >= 0 && method < gpical::kMethodCount,
                 "method out of range");
  static const char* const kTags[] = {"known-kappa", "uncompensated",
                                      "learned-max", "learned-norm"};
  const gpical::EvalReport& r = report->value.reports[method];
  *out = gpical_method_summary{static_cast<gpical_method>(method),
                               kTags[method],
                               r.angle_rmse_deg,
                               r.range_rmse_m,
                               r.kappa_error,
                               r.n_realizations};
  return GPICAL_OK;
}

gpical_status gpical_report_pd_at_pfa(const gpical_report* report, int method,
                                      double p_fa, double* p_d) {
  GPICAL_REQUIRE(report && p_d, "null argument");
  GPICAL_REQUIRE(method >= 0 && method < gpical::kMethodCount,
                 "method out of range");
  *p_d = gpical::pd_at_pfa(report->value.reports[method].roc, p_fa);
  return GPICAL_OK;
}

gpical_status gpical_report_write_roc_csv(const gpical_report* report,
                                          const char* path) {
  GPICAL_REQUIRE(report && path, "null argument");
  return guarded(
      [&] { gpical::write_roc_csv(path, report->value.reports); });
}

gpical_status gpical_report_write_summary_csv(const gpical_report* report,
                                              const char* path) {
  GPICAL_REQUIRE(report && path, "null argument");
  return guarded(
      [&] { gpical::write_summary_csv(path, report->value.reports); });
}

gpical_status gpical_report_realization_kappa(const gpical_report* report,
                                              int realization, int which,
                                              gpical_kappa** out) {
  GPICAL_REQUIRE(report && out, "null argument");
  const auto& recs = report->value.realizations;
  GPICAL_REQUIRE(realization >= 0 &&
                     realization < static_cast<int>(recs.size()),
                 "realization out of range");
  GPICAL_REQUIRE(which >= 0 && which <= 2, "which must be 0, 1 or 2");
  const auto& rec = recs[realization];
  const gpical::GainPhase& k = which == 0   ? rec.kappa_true
                               : which == 1 ? rec.kappa_learned_max
                                            : rec.kappa_learned_norm;
  return guarded([&] { *out = new gpical_kappa{k}; });
}

}  // extern "C"
