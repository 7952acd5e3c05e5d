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

#include "gpical/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "gpical/csv.hpp"
#include "gpical/types.hpp"

namespace gpical {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("invalid number for '" + key + "': '" + text + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("invalid integer for '" + key + "': '" + text + "'");
  }
  return value;
}

Range parse_range(const std::string& key, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ConfigError("range '" + key + "' needs two comma-separated values");
  }
  return {parse_double(key, text.substr(0, comma)),
          parse_double(key, text.substr(comma + 1))};
}

std::string range_text(const Range& r) {
  return format_double(r.first) + ", " + format_double(r.second);
}

struct Field {
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define GPICAL_DOUBLE_FIELD(name)                                            \
  {#name,                                                                    \
   {[](ScenarioConfig& c, const std::string& v) {                            \
      c.name = parse_double(#name, v);                                       \
    },                                                                       \
    [](const ScenarioConfig& c) { return format_double(c.name); }}}
#define GPICAL_INT_FIELD(name, type)                                         \
  {#name,                                                                    \
   {[](ScenarioConfig& c, const std::string& v) {                            \
      c.name = parse_int<type>(#name, v);                                    \
    },                                                                       \
    [](const ScenarioConfig& c) { return std::to_string(c.name); }}}
#define GPICAL_RANGE_FIELD(name)                                             \
  {#name,                                                                    \
   {[](ScenarioConfig& c, const std::string& v) {                            \
      c.name = parse_range(#name, v);                                        \
    },                                                                       \
    [](const ScenarioConfig& c) { return range_text(c.name); }}}

// Declaration order is the canonical text order.
const std::vector<std::pair<std::string, Field>>& field_table() {
  static const std::vector<std::pair<std::string, Field>> table = {
      GPICAL_INT_FIELD(n_antennas, int),
      GPICAL_INT_FIELD(n_subcarriers, int),
      GPICAL_DOUBLE_FIELD(subcarrier_spacing),
      GPICAL_DOUBLE_FIELD(carrier_freq),
      GPICAL_DOUBLE_FIELD(element_spacing),
      GPICAL_DOUBLE_FIELD(r_min),
      GPICAL_DOUBLE_FIELD(r_max),
      GPICAL_RANGE_FIELD(theta_mean_range),
      GPICAL_RANGE_FIELD(delta_theta_range),
      GPICAL_DOUBLE_FIELD(snr_db),
      GPICAL_DOUBLE_FIELD(sigma_gamma_sq),
      GPICAL_RANGE_FIELD(kappa_mag_range),
      GPICAL_RANGE_FIELD(kappa_phase_range),
      GPICAL_INT_FIELD(n_theta_grid, int),
      GPICAL_INT_FIELD(n_tau_grid, int),
      GPICAL_DOUBLE_FIELD(target_prior),
      GPICAL_DOUBLE_FIELD(learning_rate),
      GPICAL_INT_FIELD(batch_size, int),
      GPICAL_INT_FIELD(n_iterations, int),
      GPICAL_INT_FIELD(tangent_projection, int),
      GPICAL_INT_FIELD(seed, std::uint64_t),
      GPICAL_INT_FIELD(eval_trials, int),
      GPICAL_INT_FIELD(gpi_realizations, int),
  };
  return table;
}

#undef GPICAL_DOUBLE_FIELD
#undef GPICAL_INT_FIELD
#undef GPICAL_RANGE_FIELD

const Field& find_field(const std::string& key) {
  for (const auto& [name, field] : field_table()) {
    if (name == key) return field;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool ordered(const Range& r) {
  return std::isfinite(r.first) && std::isfinite(r.second) &&
         r.first <= r.second;
}

}  // namespace

double ScenarioConfig::wavelength() const {
  return kSpeedOfLight / carrier_freq;
}

double ScenarioConfig::resolved_element_spacing() const {
  return element_spacing > 0.0 ? element_spacing : 0.5 * wavelength();
}

double ScenarioConfig::tau_min() const { return range_to_delay(r_min); }
double ScenarioConfig::tau_max() const { return range_to_delay(r_max); }

double ScenarioConfig::noise_power() const {
  return sigma_gamma_sq * n_antennas * n_subcarriers /
         std::pow(10.0, snr_db / 10.0);
}

void ScenarioConfig::validate() const {
  require(n_antennas >= 1, "n_antennas must be >= 1");
  require(n_subcarriers >= 1, "n_subcarriers must be >= 1");
  require(subcarrier_spacing > 0.0, "subcarrier_spacing must be > 0");
  require(carrier_freq > 0.0, "carrier_freq must be > 0");
  require(element_spacing >= 0.0, "element_spacing must be >= 0");
  require(r_min >= 0.0 && r_min < r_max, "need 0 <= r_min < r_max");
  require(ordered(theta_mean_range), "theta_mean_range must be ordered");
  require(ordered(delta_theta_range) && delta_theta_range.first >= 0.0,
          "delta_theta_range must be ordered and nonnegative");
  require(std::isfinite(snr_db), "snr_db must be finite");
  require(sigma_gamma_sq > 0.0, "sigma_gamma_sq must be > 0");
  const double n0 = noise_power();
  require(std::isfinite(n0) && n0 > 0.0, "noise power N0 must be > 0");
  require(ordered(kappa_mag_range) && kappa_mag_range.first >= 0.0 &&
              kappa_mag_range.second > 0.0,
          "kappa_mag_range must be ordered, nonnegative, not all zero");
  require(ordered(kappa_phase_range), "kappa_phase_range must be ordered");
  require(n_theta_grid >= 2, "n_theta_grid must be >= 2");
  require(n_tau_grid >= 2, "n_tau_grid must be >= 2");
  require(target_prior >= 0.0 && target_prior <= 1.0,
          "target_prior must lie in [0, 1]");
  require(learning_rate > 0.0, "learning_rate must be > 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(n_iterations >= 0, "n_iterations must be >= 0");
  require(tangent_projection == 0 || tangent_projection == 1,
          "tangent_projection must be 0 or 1");
  require(eval_trials >= 1, "eval_trials must be >= 1");
  require(gpi_realizations >= 1, "gpi_realizations must be >= 1");
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  find_field(trim(key)).set(*this, trim(value));
}

std::string ScenarioConfig::get(const std::string& key) const {
  return find_field(trim(key)).get(*this);
}

std::string ScenarioConfig::to_text() const {
  std::ostringstream out;
  for (const auto& [name, field] : field_table()) {
    out << name << " = " << field.get(*this) << '\n';
  }
  return out.str();
}

void ScenarioConfig::apply_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void ScenarioConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    apply_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ScenarioConfig ScenarioConfig::parse(const std::string& text) {
  ScenarioConfig config;
  config.apply_text(text);
  return config;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  ScenarioConfig config;
  config.apply_file(path);
  return config;
}

void ScenarioConfig::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << to_text();
  if (!out) throw IoError("write failed for '" + path + "'");
}

const std::vector<std::string>& ScenarioConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& entry : field_table()) v.push_back(entry.first);
    return v;
  }();
  return names;
}

std::pair<std::string, std::string> split_assignment(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("expected key=value, got '" + arg + "'");
  }
  return {trim(arg.substr(0, eq)), trim(arg.substr(eq + 1))};
}

}  // namespace gpical
