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

#include "gpical/signal.hpp"

#include <cmath>

namespace gpical {

CVector array_phase_ramp(double theta, const ScenarioConfig& config) {
  const double step = -2.0 * kPi * config.resolved_element_spacing() *
                      std::sin(theta) / config.wavelength();
  CVector v(config.n_antennas);
  for (int n = 0; n < config.n_antennas; ++n) {
    v[n] = std::polar(1.0, step * n);
  }
  return v;
}

CVector steering_vector(double theta, const GainPhase& kappa,
                        const ScenarioConfig& config) {
  if (kappa.size() != config.n_antennas) {
    throw Error(ErrorCode::kInvalidArgument,
                "kappa length does not match n_antennas");
  }
  return kappa.kappa.cwiseProduct(array_phase_ramp(theta, config));
}

CVector delay_vector(double tau, const ScenarioConfig& config) {
  const double step = -2.0 * kPi * config.subcarrier_spacing * tau;
  CVector b(config.n_subcarriers);
  for (int s = 0; s < config.n_subcarriers; ++s) {
    b[s] = std::polar(1.0, step * s);
  }
  return b;
}

CMatrix noiseless_response(const ScenarioDraw& draw, const GainPhase& kappa,
                           const ScenarioConfig& config) {
  if (draw.t == 0) {
    return CMatrix::Zero(config.n_antennas, config.n_subcarriers);
  }
  const CVector a = steering_vector(draw.theta, kappa, config);
  const CVector g = delay_vector(draw.tau, config).cwiseProduct(draw.x);
  return draw.gamma * a * g.transpose();
}

Observation synthesize(const ScenarioDraw& draw, const GainPhase& kappa,
                       double n0, const ScenarioConfig& config, Stream& rng) {
  if (!(n0 >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise power must be >= 0");
  }
  if (draw.x.size() != config.n_subcarriers) {
    throw Error(ErrorCode::kInvalidArgument,
                "symbol vector length does not match n_subcarriers");
  }
  Observation obs;
  obs.y = noiseless_response(draw, kappa, config);
  if (n0 > 0.0) {
    const double sigma = std::sqrt(0.5 * n0);
    for (int n = 0; n < config.n_antennas; ++n) {
      for (int s = 0; s < config.n_subcarriers; ++s) {
        const double re = rng.normal();
        const double im = rng.normal();
        obs.y(n, s) += Complex(sigma * re, sigma * im);
      }
    }
  }
  obs.truth = draw;
  obs.kappa_true = kappa;
  obs.noise_power = n0;
  return obs;
}

}  // namespace gpical
