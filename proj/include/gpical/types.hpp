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

#ifndef GPICAL_TYPES_HPP_
#define GPICAL_TYPES_HPP_

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpical {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Round-trip delay of a point at range r, and its inverse.
inline constexpr double range_to_delay(double r) { return 2.0 * r / kSpeedOfLight; }
inline constexpr double delay_to_range(double tau) { return 0.5 * kSpeedOfLight * tau; }

// Error categories. Values match the gpical_status codes of the C API.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kConfig = 2,
  kIo = 3,
  kNumerical = 4,
  kInternal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCode::kConfig, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

// Raised when a training loss or gradient stops being finite.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::int64_t iteration,
                 std::int64_t realization = -1)
      : Error(ErrorCode::kNumerical, what),
        iteration_(iteration),
        realization_(realization) {}
  std::int64_t iteration() const { return iteration_; }
  std::int64_t realization() const { return realization_; }

 private:
  std::int64_t iteration_;
  std::int64_t realization_;
};

}  // namespace gpical

#endif  // GPICAL_TYPES_HPP_
