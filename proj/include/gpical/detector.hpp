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

#ifndef GPICAL_DETECTOR_HPP_
#define GPICAL_DETECTOR_HPP_

#include <utility>

#include "gpical/config.hpp"
#include "gpical/scenario.hpp"
#include "gpical/signal.hpp"
#include "gpical/types.hpp"

namespace gpical {

// Uniform search grid; both axes include their endpoints.
struct GridSpec {
  RVector theta_axis;  // rad
  RVector tau_axis;    // s

  static GridSpec uniform(double theta_min, double theta_max, int n_theta,
                          double tau_min, double tau_max, int n_tau);
  // Grid over a draw's own angular prior region and the configured delay
  // prior.
  static GridSpec for_draw(const ScenarioDraw& draw,
                           const ScenarioConfig& config);
};

// n points from lo to hi inclusive; the last point is exactly hi.
RVector linspace(double lo, double hi, int n);

struct AngleDelayMap {
  RMatrix values;  // N_theta x N_tau, squared magnitudes
  GridSpec grid;
};

struct MapPeak {
  double value = 0.0;
  int theta_index = 0;
  int tau_index = 0;
};

struct DetectionResult {
  double statistic = 0.0;
  bool detected = false;
  double theta_hat = 0.0;
  double tau_hat = 0.0;
  Complex gamma_hat{0.0, 0.0};
  int theta_index = 0;
  int tau_index = 0;
};

struct Dictionaries {
  CMatrix phi_theta;  // N x N_theta, columns a(theta_k; kappa_hat)
  CMatrix phi_tau;    // S x N_tau, columns b(tau_k)
};

Dictionaries build_dictionaries(const GainPhase& kappa_hat,
                                const GridSpec& grid,
                                const ScenarioConfig& config);

// Phase ramps of the theta axis without impairments, N x N_theta.
CMatrix angle_ramps(const RVector& theta_axis, const ScenarioConfig& config);
// Delay dictionary Phi_tau, S x N_tau.
CMatrix delay_dictionary(const RVector& tau_axis,
                         const ScenarioConfig& config);

// Z = Y (Phi_tau .* x 1^T)^*, N x N_tau. Z does not depend on kappa_hat, so
// callers evaluating several kappa_hat on one observation compute it once.
CMatrix delay_matched(const CMatrix& y, const CVector& x,
                      const CMatrix& phi_tau);

// Complex matched-filter output Phi_theta(kappa_hat)^H Z, N_theta x N_tau.
CMatrix matched_output(const CMatrix& z, const GainPhase& kappa_hat,
                       const CMatrix& ramps);

// Global maximum; ties resolve to the first entry in row-major order.
MapPeak map_argmax(const RMatrix& values);

// M = |Phi_theta(kappa_hat)^H Y (Phi_tau .* x 1^T)^*|^2.
AngleDelayMap angle_delay_map(const CMatrix& y, const CVector& x,
                              const GainPhase& kappa_hat, const GridSpec& grid,
                              const ScenarioConfig& config);
AngleDelayMap angle_delay_map(const Observation& obs,
                              const GainPhase& kappa_hat, const GridSpec& grid,
                              const ScenarioConfig& config);

// Gain estimate
//   gamma_hat = a^H(theta; kappa) Y (b(tau) .* x)^* / (N ||x||^2 + rho),
// with rho = N0 / sigma_gamma^2. Equals the ridge solution
// vec(M)^H vec(Y) / (||M||_F^2 + rho) for M = a (b .* x)^T without forming M.
Complex estimate_gain(const CMatrix& y, const CVector& x, double theta_hat,
                      double tau_hat, const GainPhase& kappa_hat,
                      double n0_over_sigma2, const ScenarioConfig& config);

// Ytilde = gamma_hat a(theta_hat; kappa_hat) (b(tau_hat) .* x)^T.
CMatrix reconstruct(double theta_hat, double tau_hat, Complex gamma_hat,
                    const CVector& x, const GainPhase& kappa_hat,
                    const ScenarioConfig& config);

// MAP ratio test: statistic is the map maximum, detected = statistic > eta,
// (theta_hat, tau_hat) are the grid values at the argmax and gamma_hat is
// estimated there with rho taken from the config.
DetectionResult maprt(const CMatrix& y, const CVector& x,
                      const GainPhase& kappa_assumed, const GridSpec& grid,
                      double eta, const ScenarioConfig& config);
DetectionResult maprt(const Observation& obs, const GainPhase& kappa_assumed,
                      const GridSpec& grid, double eta,
                      const ScenarioConfig& config);

}  // namespace gpical

#endif  // GPICAL_DETECTOR_HPP_
