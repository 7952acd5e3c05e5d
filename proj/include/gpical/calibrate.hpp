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

#ifndef GPICAL_CALIBRATE_HPP_
#define GPICAL_CALIBRATE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gpical/config.hpp"
#include "gpical/scenario.hpp"
#include "gpical/signal.hpp"
#include "gpical/types.hpp"

namespace gpical {

enum class LossChoice {
  kMapMax,          // -max_{i,j} M(kappa_hat)
  kReconstruction,  // ||Y - Ytilde(kappa_hat)||_F
};

std::string to_string(LossChoice choice);
// Accepts "max" / "map-max" and "norm" / "reconstruction".
LossChoice parse_loss_choice(const std::string& name);

// Optimizer state over the 2N real parameters (re, im interleaved).
struct TrainState {
  GainPhase kappa_hat;
  RVector adam_m;
  RVector adam_v;
  int iteration = 0;
  std::vector<double> loss_history;

  // kappa_hat = all-ones, zero moments.
  static TrainState initial(int n_antennas);
};

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// (re, im) interleaving used for gradients and optimizer moments.
RVector to_real_params(const CVector& kappa);
CVector from_real_params(const RVector& params);

// kappa_hat-independent part of one observation: the delay-matched block
// Z = Y (Phi_tau .* x 1^T)^* and the angle ramps of the sample's own grid.
struct PreparedSample {
  CMatrix y;
  CVector x;
  CMatrix z;       // N x N_tau
  CMatrix ramps;   // N x N_theta
};

// Phi_tau is shared by every sample because the delay prior is fixed.
PreparedSample prepare_sample(const Observation& obs, const CMatrix& phi_tau,
                              const ScenarioConfig& config);

struct SampleTerm {
  double loss = 0.0;
  RVector grad;  // empty unless requested
  int theta_index = 0;
  int tau_index = 0;
};

// Loss of one sample and, optionally, its gradient with respect to the
// interleaved real parameters of kappa_hat. The argmax (i, j) is found on
// the sample's map and then held fixed while differentiating.
SampleTerm evaluate_sample(const PreparedSample& sample,
                           const GainPhase& kappa_hat, LossChoice choice,
                           const CMatrix& phi_tau,
                           const ScenarioConfig& config, bool with_gradient);

// Batch means. Every sample is evaluated on the grid of its own prior region.
double loss_map_max(const std::vector<Observation>& batch,
                    const GainPhase& kappa_hat, const ScenarioConfig& config);
double loss_reconstruction(const std::vector<Observation>& batch,
                           const GainPhase& kappa_hat,
                           const ScenarioConfig& config);
double batch_loss(const std::vector<Observation>& batch,
                  const GainPhase& kappa_hat, LossChoice choice,
                  const ScenarioConfig& config);
RVector loss_gradient(const std::vector<Observation>& batch,
                      const GainPhase& kappa_hat, LossChoice choice,
                      const ScenarioConfig& config);

// Removes the component of `grad` along kappa_hat itself, i.e. the part that
// only changes ||kappa_hat|| and is undone by renormalization. Without it,
// Adam's per-coordinate scaling turns a large radial gradient into a
// non-radial step that survives renormalization as a phase distortion.
RVector project_to_tangent(const RVector& grad, const GainPhase& kappa_hat);

// One Adam update with bias correction followed by renormalization of
// kappa_hat to ||kappa_hat||^2 = N.
TrainState adam_step(const TrainState& state, const RVector& grad,
                     const ScenarioConfig& config, const AdamParams& adam = {});

// Training batch `iteration`, drawn from streams keyed by
// (seed, kTrainBatch, iteration, sample) and synthesized with kappa_true.
std::vector<Observation> draw_batch(const ScenarioConfig& config,
                                    const GainPhase& kappa_true,
                                    std::uint64_t seed, int iteration);

struct TrainResult {
  GainPhase kappa_hat;
  std::vector<double> loss_history;
};

// Called after every completed iteration with a snapshot of the state.
using TrainObserver = std::function<void(const TrainState&)>;

// Unsupervised calibration loop: starting from all-ones, each iteration
// draws a fresh batch, evaluates the chosen loss and its gradient, projects
// the gradient onto the tangent space of ||kappa||^2 = N (when
// config.tangent_projection is set), takes an Adam step and renormalizes.
// kappa_true is only used to synthesize the observations. Throws
// NumericalError on a non-finite loss or gradient.
TrainResult train(const ScenarioConfig& config, LossChoice choice,
                  const GainPhase& kappa_true, std::uint64_t seed,
                  const TrainObserver& observer = {});

}  // namespace gpical

#endif  // GPICAL_CALIBRATE_HPP_
