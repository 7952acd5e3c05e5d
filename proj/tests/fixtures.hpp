// Shared test fixtures.
#ifndef GPICAL_TESTS_FIXTURES_HPP_
#define GPICAL_TESTS_FIXTURES_HPP_

#include <cmath>
#include <complex>
#include <random>

#include "gpical/config.hpp"
#include "gpical/detector.hpp"
#include "gpical/scenario.hpp"
#include "gpical/signal.hpp"
#include "gpical/types.hpp"

namespace fixtures {

using gpical::CMatrix;
using gpical::Complex;
using gpical::CVector;

inline gpical::ScenarioConfig small_config(int n, int s, int grid) {
  gpical::ScenarioConfig c;
  c.n_antennas = n;
  c.n_subcarriers = s;
  c.n_theta_grid = grid;
  c.n_tau_grid = grid;
  c.batch_size = 4;
  return c;
}

inline gpical::ScenarioConfig desk_config() {
  gpical::ScenarioConfig c;
  c.n_antennas = 16;
  c.n_subcarriers = 32;
  c.n_theta_grid = 64;
  c.n_tau_grid = 64;
  c.batch_size = 256;
  c.n_iterations = 2000;
  c.learning_rate = 1e-2;
  c.snr_db = 15.0;
  return c;
}

inline Complex random_complex(std::mt19937_64& g) {
  std::normal_distribution<double> d(0.0, 1.0);
  const double re = d(g);
  return {re, d(g)};
}

inline CMatrix random_matrix(std::mt19937_64& g, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = random_complex(g);
  }
  return m;
}

inline CVector random_vector(std::mt19937_64& g, int n) {
  CVector v(n);
  for (int k = 0; k < n; ++k) v[k] = random_complex(g);
  return v;
}

inline CVector random_qpsk(std::mt19937_64& g, int s) {
  const double h = std::sqrt(0.5);
  CVector x(s);
  for (int k = 0; k < s; ++k) {
    const auto bits = g();
    x[k] = {(bits & 1) ? h : -h, (bits & 2) ? h : -h};
  }
  return x;
}

// Random normalized impairment with magnitudes in [0.8, 1.2] and arbitrary
// phases.
inline gpical::GainPhase random_kappa(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> mag(0.8, 1.2), ph(-3.0, 3.0);
  CVector v(n);
  for (int k = 0; k < n; ++k) v[k] = std::polar(mag(g), ph(g));
  return gpical::GainPhase::normalized(v);
}

// Noiseless target sitting exactly on grid point (i, j) of a grid over
// [theta_lo, theta_hi] x [tau_min, tau_max].
struct OnGrid {
  gpical::Observation obs;
  gpical::GridSpec grid;
};

inline OnGrid on_grid_target(const gpical::ScenarioConfig& c,
                             const gpical::GainPhase& kappa, Complex gamma,
                             int i, int j, double theta_lo, double theta_hi,
                             std::mt19937_64& g) {
  OnGrid out;
  out.grid = gpical::GridSpec::uniform(theta_lo, theta_hi, c.n_theta_grid,
                                       c.tau_min(), c.tau_max(), c.n_tau_grid);
  gpical::ScenarioDraw d;
  d.t = 1;
  d.gamma = gamma;
  d.theta = out.grid.theta_axis[i];
  d.tau = out.grid.tau_axis[j];
  d.theta_min = theta_lo;
  d.theta_max = theta_hi;
  d.x = random_qpsk(g, c.n_subcarriers);
  out.obs.truth = d;
  out.obs.kappa_true = kappa;
  out.obs.noise_power = 0.0;
  out.obs.y = gpical::noiseless_response(d, kappa, c);
  return out;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace fixtures

#endif  // GPICAL_TESTS_FIXTURES_HPP_
