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

#ifndef GPICAL_SCENARIO_HPP_
#define GPICAL_SCENARIO_HPP_

#include "gpical/config.hpp"
#include "gpical/rng.hpp"
#include "gpical/types.hpp"

namespace gpical {

// One realization of the random single-target scene, together with the
// angular prior region the target was drawn from.
struct ScenarioDraw {
  int t = 0;               // target present (1) or absent (0)
  Complex gamma{0.0, 0.0};
  double theta = 0.0;      // rad
  double tau = 0.0;        // s
  CVector x;               // unit-modulus QPSK symbols, length S
  double theta_min = 0.0;  // rad
  double theta_max = 0.0;  // rad
};

// Per-element receive gain-phase impairments, normalized so that
// ||kappa||^2 = N.
struct GainPhase {
  CVector kappa;

  int size() const { return static_cast<int>(kappa.size()); }
  static GainPhase ones(int n);
  // Rescales an arbitrary nonzero vector to squared norm n; phases are kept.
  static GainPhase normalized(const CVector& v);
};

// Draws t, gamma, the prior region, theta, tau and x, in that order.
ScenarioDraw draw_scenario(const ScenarioConfig& config, Stream& rng);

// Draws element magnitudes and phases from the configured uniform ranges
// and rescales the vector by sqrt(N) / ||kappa||.
GainPhase draw_gain_phase(const ScenarioConfig& config, Stream& rng);

// Unit-modulus QPSK symbol (+-1 +- j) / sqrt(2) from two random bits.
Complex qpsk_symbol(std::uint64_t bits);

}  // namespace gpical

#endif  // GPICAL_SCENARIO_HPP_
