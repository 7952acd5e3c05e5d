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

#ifndef GPICAL_EVAL_HPP_
#define GPICAL_EVAL_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gpical/config.hpp"
#include "gpical/scenario.hpp"
#include "gpical/types.hpp"

namespace gpical {

// Relative calibration error after removing the unobservable global phase:
//   min_phi ||exp(j phi) kappa_hat - kappa_true|| / ||kappa_true||.
// The minimizer is phi = arg(kappa_hat^H kappa_true).
double kappa_error(const GainPhase& kappa_hat, const GainPhase& kappa_true);

struct RocPoint {
  double eta = 0.0;
  double p_fa = 0.0;  // fraction of H0 statistics > eta
  double p_d = 0.0;   // fraction of H1 statistics > eta
  int n_h0 = 0;
  int n_h1 = 0;
};

// Exact empirical ROC. Thresholds are 0, every distinct pooled statistic in
// increasing order, and +inf. With `compact`, interior points of purely
// horizontal or vertical runs are dropped; the step function is unchanged.
std::vector<RocPoint> roc_from_statistics(std::vector<double> h0,
                                          std::vector<double> h1,
                                          bool compact = false);

// Best detection probability among operating points with p_fa <= target.
double pd_at_pfa(const std::vector<RocPoint>& roc, double p_fa_target);

// Per-trial outcomes of one kappa_assumed on a shared set of trials.
struct TrialOutcomes {
  std::vector<double> h0_statistics;
  std::vector<double> h1_statistics;
  std::vector<double> angle_errors_deg;  // H1 trials, argmax minus truth
  std::vector<double> range_errors_m;
};

// Runs n_trials H0 and n_trials H1 observations (synthesized with
// kappa_true) through the MAPRT under every kappa in `assumed`. Trial k of
// each hypothesis uses the stream (seed, kEvalNull / kEvalTarget, k), so all
// kappas see identical observations.
std::vector<TrialOutcomes> evaluate_trials(
    const ScenarioConfig& config, const std::vector<GainPhase>& assumed,
    const GainPhase& kappa_true, int n_trials, std::uint64_t seed);

std::vector<RocPoint> roc_curve(const ScenarioConfig& config,
                                const GainPhase& kappa_assumed,
                                const GainPhase& kappa_true, int n_trials,
                                std::uint64_t seed);

struct PositionRmse {
  double angle_rmse_deg = 0.0;
  double range_rmse_m = 0.0;
};

// Ungated argmax estimates over n_trials target-present draws.
PositionRmse position_rmse(const ScenarioConfig& config,
                           const GainPhase& kappa_assumed,
                           const GainPhase& kappa_true, int n_trials,
                           std::uint64_t seed);
PositionRmse rmse_from_errors(const std::vector<double>& angle_errors_deg,
                              const std::vector<double>& range_errors_m);

enum class MethodTag { kKnownKappa, kUncompensated, kLearnedMax, kLearnedNorm };
inline constexpr int kMethodCount = 4;
std::string to_string(MethodTag tag);

struct EvalReport {
  MethodTag method = MethodTag::kKnownKappa;
  std::vector<RocPoint> roc;
  double angle_rmse_deg = 0.0;
  double range_rmse_m = 0.0;
  double kappa_error = 0.0;  // mean over realizations
  int n_realizations = 0;
  std::vector<double> kappa_error_per_realization;
};

struct RealizationRecord {
  int index = 0;
  GainPhase kappa_true;
  GainPhase kappa_learned_max;
  GainPhase kappa_learned_norm;
  std::vector<double> loss_history_max;
  std::vector<double> loss_history_norm;
};

struct ComparisonResult {
  std::vector<EvalReport> reports;  // one per MethodTag, in enum order
  std::vector<RealizationRecord> realizations;
};

using ProgressCallback = std::function<void(const std::string&)>;

// For every GPI realization r: draws kappa_true from (seed, kGainPhase, r),
// trains both losses from the realization seed, then evaluates the known,
// uncompensated and both learned kappas on common trials
// (config.eval_trials per hypothesis). ROC statistics and position errors
// are pooled across realizations. A non-finite training loss is rethrown as
// NumericalError carrying the realization index.
ComparisonResult run_comparison(const ScenarioConfig& config,
                                int n_realizations, std::uint64_t seed,
                                const ProgressCallback& progress = {});

}  // namespace gpical

#endif  // GPICAL_EVAL_HPP_
