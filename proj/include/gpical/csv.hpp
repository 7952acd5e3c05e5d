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

#ifndef GPICAL_CSV_HPP_
#define GPICAL_CSV_HPP_

#include <string>
#include <vector>

#include "gpical/types.hpp"

namespace gpical {

struct AngleDelayMap;
struct GainPhase;
struct EvalReport;

// Shortest round-trip decimal form, '.' separator, "inf"/"-inf"/"nan".
std::string format_double(double v);

// All writers emit a header row and '\n'-terminated rows, and throw IoError
// when the file cannot be written.

// Row-major N x S block; each cell is a "re,im" pair.
void write_observation_csv(const std::string& path, const CMatrix& y);

// Header row holds the tau axis (s), first column the theta axis (rad).
// Values are divided by `scale`.
void write_map_csv(const std::string& path, const AngleDelayMap& map,
                   double scale = 1.0);

// index,re,im
void write_kappa_csv(const std::string& path, const GainPhase& kappa);
GainPhase read_kappa_csv(const std::string& path);

struct TrainLogRow {
  int iteration = 0;
  double loss = 0.0;
  double kappa_error = 0.0;
  double wall_ms = 0.0;
};

// iteration,loss,kappa_error[,wall_ms]
void write_train_log_csv(const std::string& path,
                         const std::vector<TrainLogRow>& rows,
                         bool with_wall_clock);

// eta,p_fa,p_d,n_h0,n_h1,method_tag
void write_roc_csv(const std::string& path,
                   const std::vector<EvalReport>& reports);

// method_tag,angle_rmse_deg,range_rmse_m,kappa_error,n_realizations
void write_summary_csv(const std::string& path,
                       const std::vector<EvalReport>& reports);

}  // namespace gpical

#endif  // GPICAL_CSV_HPP_
