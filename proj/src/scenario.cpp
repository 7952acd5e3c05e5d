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

#include "gpical/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace gpical {

GainPhase GainPhase::ones(int n) {
  return GainPhase{CVector::Ones(n)};
}

GainPhase GainPhase::normalized(const CVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gain-phase vector must have finite nonzero norm");
  }
  return GainPhase{v * (std::sqrt(static_cast<double>(v.size())) / norm)};
}

Complex qpsk_symbol(std::uint64_t bits) {
  constexpr double kScale = 0.70710678118654752440;
  const double re = (bits & 1U) ? kScale : -kScale;
  const double im = (bits & 2U) ? kScale : -kScale;
  return {re, im};
}

ScenarioDraw draw_scenario(const ScenarioConfig& config, Stream& rng) {
  ScenarioDraw d;
  d.t = rng.uniform() < config.target_prior ? 1 : 0;

  const double sigma = std::sqrt(0.5 * config.sigma_gamma_sq);
  const double g_re = rng.normal();
  const double g_im = rng.normal();
  d.gamma = Complex(sigma * g_re, sigma * g_im);

  const double mean = deg_to_rad(rng.uniform(config.theta_mean_range.first,
                                             config.theta_mean_range.second));
  const double width = deg_to_rad(rng.uniform(
      config.delta_theta_range.first, config.delta_theta_range.second));
  d.theta_min = mean - 0.5 * width;
  d.theta_max = mean + 0.5 * width;
  d.theta = std::clamp(rng.uniform(d.theta_min, d.theta_max), d.theta_min,
                       d.theta_max);
  d.tau = rng.uniform(config.tau_min(), config.tau_max());

  d.x.resize(config.n_subcarriers);
  for (int s = 0; s < config.n_subcarriers; ++s) {
    d.x[s] = qpsk_symbol(rng.next() >> 62);
  }
  return d;
}

GainPhase draw_gain_phase(const ScenarioConfig& config, Stream& rng) {
  CVector k(config.n_antennas);
  for (int n = 0; n < config.n_antennas; ++n) {
    const double mag = rng.uniform(config.kappa_mag_range.first,
                                   config.kappa_mag_range.second);
    const double phase = rng.uniform(config.kappa_phase_range.first,
                                     config.kappa_phase_range.second);
    k[n] = std::polar(mag, phase);
  }
  return GainPhase::normalized(k);
}

}  // namespace gpical
