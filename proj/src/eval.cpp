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

#include "gpical/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpical/calibrate.hpp"
#include "gpical/detector.hpp"
#include "gpical/rng.hpp"
#include "gpical/signal.hpp"

namespace gpical {

double kappa_error(const GainPhase& kappa_hat, const GainPhase& kappa_true) {
  if (kappa_hat.size() != kappa_true.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "kappa_error: vectors differ in length");
  }
  const double phi = std::arg(kappa_hat.kappa.dot(kappa_true.kappa));
  const CVector aligned = std::polar(1.0, phi) * kappa_hat.kappa;
  return (aligned - kappa_true.kappa).norm() / kappa_true.kappa.norm();
}

std::vector<RocPoint> roc_from_statistics(std::vector<double> h0,
                                          std::vector<double> h1,
                                          bool compact) {
  std::sort(h0.begin(), h0.end());
  std::sort(h1.begin(), h1.end());
  std::vector<double> thresholds;
  thresholds.reserve(h0.size() + h1.size() + 2);
  thresholds.push_back(0.0);
  std::merge(h0.begin(), h0.end(), h1.begin(), h1.end(),
             std::back_inserter(thresholds));
  thresholds.push_back(std::numeric_limits<double>::infinity());
  // Statistics are nonnegative; anything at or below zero duplicates eta=0.
  std::sort(thresholds.begin() + 1, thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.erase(std::remove_if(thresholds.begin() + 1, thresholds.end(),
                                  [](double v) { return v <= 0.0; }),
                   thresholds.end());

  const int n0 = static_cast<int>(h0.size());
  const int n1 = static_cast<int>(h1.size());
  auto fraction_above = [](const std::vector<double>& sorted, double eta) {
    if (sorted.empty()) return 0.0;
    const auto above = sorted.end() -
                       std::upper_bound(sorted.begin(), sorted.end(), eta);
    return static_cast<double>(above) / static_cast<double>(sorted.size());
  };

  std::vector<RocPoint> roc;
  roc.reserve(thresholds.size());
  for (const double eta : thresholds) {
    roc.push_back({eta, fraction_above(h0, eta), fraction_above(h1, eta), n0,
                   n1});
  }
  if (!compact || roc.size() <= 2) return roc;

  std::vector<RocPoint> kept;
  kept.push_back(roc.front());
  for (std::size_t k = 1; k + 1 < roc.size(); ++k) {
    const RocPoint& prev = roc[k - 1];
    const RocPoint& next = roc[k + 1];
    const bool vertical_run = prev.p_fa == roc[k].p_fa && next.p_fa == roc[k].p_fa;
    const bool horizontal_run = prev.p_d == roc[k].p_d && next.p_d == roc[k].p_d;
    if (!vertical_run && !horizontal_run) kept.push_back(roc[k]);
  }
  kept.push_back(roc.back());
  return kept;
}

double pd_at_pfa(const std::vector<RocPoint>& roc, double p_fa_target) {
  double best = 0.0;
  for (const RocPoint& p : roc) {
    if (p.p_fa <= p_fa_target) best = std::max(best, p.p_d);
  }
  return best;
}

std::vector<TrialOutcomes> evaluate_trials(
    const ScenarioConfig& config, const std::vector<GainPhase>& assumed,
    const GainPhase& kappa_true, int n_trials, std::uint64_t seed) {
  if (n_trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_trials must be >= 1");
  }
  config.validate();
  const RVector tau_axis =
      linspace(config.tau_min(), config.tau_max(), config.n_tau_grid);
  const CMatrix phi_tau = delay_dictionary(tau_axis, config);
  const double n0 = config.noise_power();
  const auto n_methods = assumed.size();

  std::vector<TrialOutcomes> out(n_methods);
  for (auto& o : out) {
    o.h0_statistics.assign(n_trials, 0.0);
    o.h1_statistics.assign(n_trials, 0.0);
    o.angle_errors_deg.assign(n_trials, 0.0);
    o.range_errors_m.assign(n_trials, 0.0);
  }

#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 0; k < n_trials; ++k) {
    for (const int target : {0, 1}) {
      Stream rng(seed, target ? Purpose::kEvalTarget : Purpose::kEvalNull,
                 static_cast<std::uint64_t>(k));
      ScenarioDraw draw = draw_scenario(config, rng);
      draw.t = target;
      const Observation obs = synthesize(draw, kappa_true, n0, config, rng);
      const RVector theta_axis =
          linspace(draw.theta_min, draw.theta_max, config.n_theta_grid);
      const CMatrix ramps = angle_ramps(theta_axis, config);
      const CMatrix z = delay_matched(obs.y, draw.x, phi_tau);
      for (std::size_t m = 0; m < n_methods; ++m) {
        const MapPeak peak =
            map_argmax(matched_output(z, assumed[m], ramps).cwiseAbs2());
        if (target == 0) {
          out[m].h0_statistics[k] = peak.value;
          continue;
        }
        out[m].h1_statistics[k] = peak.value;
        out[m].angle_errors_deg[k] =
            rad_to_deg(theta_axis[peak.theta_index] - draw.theta);
        out[m].range_errors_m[k] = delay_to_range(tau_axis[peak.tau_index]) -
                                   delay_to_range(draw.tau);
      }
    }
  }
  return out;
}

std::vector<RocPoint> roc_curve(const ScenarioConfig& config,
                                const GainPhase& kappa_assumed,
                                const GainPhase& kappa_true, int n_trials,
                                std::uint64_t seed) {
  auto outcomes =
      evaluate_trials(config, {kappa_assumed}, kappa_true, n_trials, seed);
  return roc_from_statistics(std::move(outcomes[0].h0_statistics),
                             std::move(outcomes[0].h1_statistics));
}

PositionRmse rmse_from_errors(const std::vector<double>& angle_errors_deg,
                              const std::vector<double>& range_errors_m) {
  auto rms = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (const double e : v) acc += e * e;
    return std::sqrt(acc / static_cast<double>(v.size()));
  };
  return {rms(angle_errors_deg), rms(range_errors_m)};
}

PositionRmse position_rmse(const ScenarioConfig& config,
                           const GainPhase& kappa_assumed,
                           const GainPhase& kappa_true, int n_trials,
                           std::uint64_t seed) {
  const auto outcomes =
      evaluate_trials(config, {kappa_assumed}, kappa_true, n_trials, seed);
  return rmse_from_errors(outcomes[0].angle_errors_deg,
                          outcomes[0].range_errors_m);
}

std::string to_string(MethodTag tag) {
  switch (tag) {
    case MethodTag::kKnownKappa:
      return "known-kappa";
    case MethodTag::kUncompensated:
      return "uncompensated";
    case MethodTag::kLearnedMax:
      return "learned-max";
    case MethodTag::kLearnedNorm:
      return "learned-norm";
  }
  return "unknown";
}

ComparisonResult run_comparison(const ScenarioConfig& config,
                                int n_realizations, std::uint64_t seed,
                                const ProgressCallback& progress) {
  if (n_realizations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_realizations must be >= 1");
  }
  config.validate();
  auto report = [&](const std::string& msg) {
    if (progress) progress(msg);
  };

  ComparisonResult result;
  std::vector<TrialOutcomes> pooled(kMethodCount);
  std::vector<std::vector<double>> kappa_errors(kMethodCount);

  for (int r = 0; r < n_realizations; ++r) {
    RealizationRecord rec;
    rec.index = r;
    Stream kappa_rng(seed, Purpose::kGainPhase, static_cast<std::uint64_t>(r));
    rec.kappa_true = draw_gain_phase(config, kappa_rng);
    const std::uint64_t realization_seed =
        derive_seed(seed, Purpose::kRealization, static_cast<std::uint64_t>(r));

    const std::string tag = "realization " + std::to_string(r);
    try {
      report(tag + ": training max loss");
      TrainResult max_run = train(config, LossChoice::kMapMax, rec.kappa_true,
                                  realization_seed);
      report(tag + ": training norm loss");
      TrainResult norm_run = train(config, LossChoice::kReconstruction,
                                   rec.kappa_true, realization_seed);
      rec.kappa_learned_max = std::move(max_run.kappa_hat);
      rec.loss_history_max = std::move(max_run.loss_history);
      rec.kappa_learned_norm = std::move(norm_run.kappa_hat);
      rec.loss_history_norm = std::move(norm_run.loss_history);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " (GPI realization " +
                               std::to_string(r) + ")",
                           e.iteration(), r);
    }

    report(tag + ": evaluating");
    const std::vector<GainPhase> assumed = {
        rec.kappa_true, GainPhase::ones(config.n_antennas),
        rec.kappa_learned_max, rec.kappa_learned_norm};
    const auto outcomes = evaluate_trials(config, assumed, rec.kappa_true,
                                          config.eval_trials, realization_seed);
    for (int m = 0; m < kMethodCount; ++m) {
      auto append = [](std::vector<double>& dst, const std::vector<double>& src) {
        dst.insert(dst.end(), src.begin(), src.end());
      };
      append(pooled[m].h0_statistics, outcomes[m].h0_statistics);
      append(pooled[m].h1_statistics, outcomes[m].h1_statistics);
      append(pooled[m].angle_errors_deg, outcomes[m].angle_errors_deg);
      append(pooled[m].range_errors_m, outcomes[m].range_errors_m);
      kappa_errors[m].push_back(kappa_error(assumed[m], rec.kappa_true));
    }
    result.realizations.push_back(std::move(rec));
  }

  for (int m = 0; m < kMethodCount; ++m) {
    EvalReport rep;
    rep.method = static_cast<MethodTag>(m);
    rep.roc = roc_from_statistics(std::move(pooled[m].h0_statistics),
                                  std::move(pooled[m].h1_statistics), true);
    const PositionRmse rmse = rmse_from_errors(pooled[m].angle_errors_deg,
                                               pooled[m].range_errors_m);
    rep.angle_rmse_deg = rmse.angle_rmse_deg;
    rep.range_rmse_m = rmse.range_rmse_m;
    rep.n_realizations = n_realizations;
    double acc = 0.0;
    for (const double e : kappa_errors[m]) acc += e;
    rep.kappa_error = acc / n_realizations;
    rep.kappa_error_per_realization = kappa_errors[m];
    result.reports.push_back(std::move(rep));
  }
  return result;
}

}  // namespace gpical
