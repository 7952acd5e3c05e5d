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

#include "gpical/detector.hpp"

#include <cmath>

namespace gpical {
namespace {

void check_dims(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInternal, what);
}

}  // namespace

RVector linspace(double lo, double hi, int n) {
  RVector v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  v[n - 1] = hi;
  return v;
}

GridSpec GridSpec::uniform(double theta_min, double theta_max, int n_theta,
                           double tau_min, double tau_max, int n_tau) {
  if (n_theta < 1 || n_tau < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs at least one point");
  }
  if ((n_theta > 1 && !(theta_min < theta_max)) ||
      (n_tau > 1 && !(tau_min < tau_max))) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid axes must be strictly increasing");
  }
  return GridSpec{linspace(theta_min, theta_max, n_theta),
                  linspace(tau_min, tau_max, n_tau)};
}

GridSpec GridSpec::for_draw(const ScenarioDraw& draw,
                            const ScenarioConfig& config) {
  return uniform(draw.theta_min, draw.theta_max, config.n_theta_grid,
                 config.tau_min(), config.tau_max(), config.n_tau_grid);
}

CMatrix angle_ramps(const RVector& theta_axis, const ScenarioConfig& config) {
  CMatrix ramps(config.n_antennas, theta_axis.size());
  for (Eigen::Index k = 0; k < theta_axis.size(); ++k) {
    ramps.col(k) = array_phase_ramp(theta_axis[k], config);
  }
  return ramps;
}

CMatrix delay_dictionary(const RVector& tau_axis,
                         const ScenarioConfig& config) {
  CMatrix phi(config.n_subcarriers, tau_axis.size());
  for (Eigen::Index k = 0; k < tau_axis.size(); ++k) {
    phi.col(k) = delay_vector(tau_axis[k], config);
  }
  return phi;
}

Dictionaries build_dictionaries(const GainPhase& kappa_hat,
                                const GridSpec& grid,
                                const ScenarioConfig& config) {
  check_dims(kappa_hat.size() == config.n_antennas,
             "kappa length does not match n_antennas");
  CMatrix phi_theta = angle_ramps(grid.theta_axis, config);
  phi_theta = kappa_hat.kappa.asDiagonal() * phi_theta;
  return {std::move(phi_theta), delay_dictionary(grid.tau_axis, config)};
}

CMatrix delay_matched(const CMatrix& y, const CVector& x,
                      const CMatrix& phi_tau) {
  check_dims(y.cols() == x.size() && phi_tau.rows() == x.size(),
             "delay_matched: subcarrier dimension mismatch");
  // Y diag(x^*) Phi_tau^*
  const CMatrix yx = y * x.conjugate().asDiagonal();
  return yx * phi_tau.conjugate();
}

CMatrix matched_output(const CMatrix& z, const GainPhase& kappa_hat,
                       const CMatrix& ramps) {
  check_dims(z.rows() == ramps.rows() && kappa_hat.size() == z.rows(),
             "matched_output: antenna dimension mismatch");
  // Phi_theta^H Z = ramps^H diag(kappa^*) Z
  const CMatrix zk = kappa_hat.kappa.conjugate().asDiagonal() * z;
  return ramps.adjoint() * zk;
}

MapPeak map_argmax(const RMatrix& values) {
  check_dims(values.size() > 0, "map_argmax: empty map");
  MapPeak peak{values(0, 0), 0, 0};
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (values(i, j) > peak.value) {
        peak = {values(i, j), static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  return peak;
}

AngleDelayMap angle_delay_map(const CMatrix& y, const CVector& x,
                              const GainPhase& kappa_hat, const GridSpec& grid,
                              const ScenarioConfig& config) {
  check_dims(y.rows() == config.n_antennas && y.cols() == config.n_subcarriers,
             "angle_delay_map: observation must be N x S");
  const CMatrix z =
      delay_matched(y, x, delay_dictionary(grid.tau_axis, config));
  const CMatrix out =
      matched_output(z, kappa_hat, angle_ramps(grid.theta_axis, config));
  return AngleDelayMap{out.cwiseAbs2(), grid};
}

AngleDelayMap angle_delay_map(const Observation& obs,
                              const GainPhase& kappa_hat, const GridSpec& grid,
                              const ScenarioConfig& config) {
  return angle_delay_map(obs.y, obs.truth.x, kappa_hat, grid, config);
}

Complex estimate_gain(const CMatrix& y, const CVector& x, double theta_hat,
                      double tau_hat, const GainPhase& kappa_hat,
                      double n0_over_sigma2, const ScenarioConfig& config) {
  if (!(n0_over_sigma2 >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "n0_over_sigma2 must be >= 0");
  }
  const CVector a = steering_vector(theta_hat, kappa_hat, config);
  const CVector g = delay_vector(tau_hat, config).cwiseProduct(x);
  const Complex inner = a.dot(y * g.conjugate());  // a^H Y g^*
  const double denom = config.n_antennas * x.squaredNorm() + n0_over_sigma2;
  return inner / denom;
}

CMatrix reconstruct(double theta_hat, double tau_hat, Complex gamma_hat,
                    const CVector& x, const GainPhase& kappa_hat,
                    const ScenarioConfig& config) {
  const CVector a = steering_vector(theta_hat, kappa_hat, config);
  const CVector g = delay_vector(tau_hat, config).cwiseProduct(x);
  return gamma_hat * a * g.transpose();
}

DetectionResult maprt(const CMatrix& y, const CVector& x,
                      const GainPhase& kappa_assumed, const GridSpec& grid,
                      double eta, const ScenarioConfig& config) {
  if (!(eta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be >= 0");
  }
  const AngleDelayMap map = angle_delay_map(y, x, kappa_assumed, grid, config);
  const MapPeak peak = map_argmax(map.values);
  DetectionResult r;
  r.statistic = peak.value;
  r.detected = peak.value > eta;
  r.theta_index = peak.theta_index;
  r.tau_index = peak.tau_index;
  r.theta_hat = grid.theta_axis[peak.theta_index];
  r.tau_hat = grid.tau_axis[peak.tau_index];
  r.gamma_hat = estimate_gain(y, x, r.theta_hat, r.tau_hat, kappa_assumed,
                              config.n0_over_sigma2(), config);
  return r;
}

DetectionResult maprt(const Observation& obs, const GainPhase& kappa_assumed,
                      const GridSpec& grid, double eta,
                      const ScenarioConfig& config) {
  return maprt(obs.y, obs.truth.x, kappa_assumed, grid, eta, config);
}

}  // namespace gpical
