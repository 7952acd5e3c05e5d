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

#ifndef GPICAL_CONFIG_HPP_
#define GPICAL_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gpical {

using Range = std::pair<double, double>;

// All physical, prior, grid, training and evaluation parameters of a run.
// Defaults reproduce the full-scale simulation regime (N=64, S=256,
// 60 GHz carrier, 240 kHz spacing, 15 dB SNR, 100x100 grid).
//
// Text form is one `key = value` per line; `#` starts a comment. Range
// values are written as two numbers separated by a comma.
struct ScenarioConfig {
  int n_antennas = 64;
  int n_subcarriers = 256;
  double subcarrier_spacing = 240e3;  // Hz
  double carrier_freq = 60e9;         // Hz
  double element_spacing = 0.0;       // m; 0 selects half a wavelength
  double r_min = 10.0;                // m
  double r_max = 43.75;               // m
  Range theta_mean_range{-60.0, 60.0};   // deg
  Range delta_theta_range{10.0, 20.0};   // deg
  double snr_db = 15.0;
  double sigma_gamma_sq = 1.0;
  Range kappa_mag_range{0.95, 1.05};
  Range kappa_phase_range{-1.5707963267948966, 1.5707963267948966};  // rad
  int n_theta_grid = 100;
  int n_tau_grid = 100;
  double target_prior = 0.5;
  double learning_rate = 1e-2;
  int batch_size = 1024;
  int n_iterations = 10000;
  // Drop the radial gradient component before the Adam step (see
  // project_to_tangent). 0 applies Adam to the raw gradient.
  int tangent_projection = 1;
  std::uint64_t seed = 1;
  int eval_trials = 10000;      // Monte Carlo trials per hypothesis
  int gpi_realizations = 100;

  double wavelength() const;
  // d_R, resolving the half-wavelength default.
  double resolved_element_spacing() const;
  double tau_min() const;
  double tau_max() const;
  // N0 = sigma_gamma^2 * N * S / 10^(snr_db / 10).
  double noise_power() const;
  double n0_over_sigma2() const { return noise_power() / sigma_gamma_sq; }

  // Throws ConfigError naming the first violated constraint.
  void validate() const;

  // Applies one `key=value` assignment. Unknown keys and malformed values
  // throw ConfigError.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  // Canonical text form; parse(to_text()) reproduces the config exactly.
  std::string to_text() const;
  static ScenarioConfig parse(const std::string& text);
  static ScenarioConfig load(const std::string& path);
  // Apply the assignments of a config text / file on top of this config.
  void apply_text(const std::string& text);
  void apply_file(const std::string& path);
  void save(const std::string& path) const;

  static const std::vector<std::string>& keys();
};

// Splits "key=value" at the first '='. Throws ConfigError if absent.
std::pair<std::string, std::string> split_assignment(const std::string& arg);

}  // namespace gpical

#endif  // GPICAL_CONFIG_HPP_
