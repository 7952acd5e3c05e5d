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

#ifndef GPICAL_SIGNAL_HPP_
#define GPICAL_SIGNAL_HPP_

#include "gpical/config.hpp"
#include "gpical/rng.hpp"
#include "gpical/scenario.hpp"
#include "gpical/types.hpp"

namespace gpical {

// Frequency-domain N x S received block. The ground truth is carried along
// for evaluation only; estimators must not read it.
struct Observation {
  CMatrix y;
  ScenarioDraw truth;
  GainPhase kappa_true;
  double noise_power = 0.0;
};

// Ideal ULA phase ramp, element n = exp(-j 2 pi n d_R sin(theta) / lambda).
CVector array_phase_ramp(double theta, const ScenarioConfig& config);

// a(theta; kappa) = kappa .* array_phase_ramp(theta).
CVector steering_vector(double theta, const GainPhase& kappa,
                        const ScenarioConfig& config);

// b(tau), element s = exp(-j 2 pi s delta_f tau).
CVector delay_vector(double tau, const ScenarioConfig& config);

// Y = t gamma a(theta; kappa) (b(tau) .* x)^T + W, where every entry of W is
// circular complex Gaussian with total variance n0. Noise is drawn row by
// row (antenna-major), real part before imaginary part.
Observation synthesize(const ScenarioDraw& draw, const GainPhase& kappa,
                       double n0, const ScenarioConfig& config, Stream& rng);

// Noise-free part t gamma a (b .* x)^T alone.
CMatrix noiseless_response(const ScenarioDraw& draw, const GainPhase& kappa,
                           const ScenarioConfig& config);

}  // namespace gpical

#endif  // GPICAL_SIGNAL_HPP_
