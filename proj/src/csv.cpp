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

#include "gpical/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gpical/detector.hpp"
#include "gpical/eval.hpp"
#include "gpical/scenario.hpp"

namespace gpical {
namespace {

template <typename T>
bool parse_field(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

class CsvFile {
 public:
  explicit CsvFile(const std::string& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return out_; }
  void close() {
    out_.close();
    if (!out_) throw IoError("write failed for '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error(ErrorCode::kInternal, "to_chars failed");
  return std::string(buf, ptr);
}

void write_observation_csv(const std::string& path, const CMatrix& y) {
  CsvFile f(path);
  auto& out = f.stream();
  for (Eigen::Index s = 0; s < y.cols(); ++s) {
    if (s) out << ',';
    out << 's' << s << "_re,s" << s << "_im";
  }
  out << '\n';
  for (Eigen::Index n = 0; n < y.rows(); ++n) {
    for (Eigen::Index s = 0; s < y.cols(); ++s) {
      if (s) out << ',';
      out << format_double(y(n, s).real()) << ','
          << format_double(y(n, s).imag());
    }
    out << '\n';
  }
  f.close();
}

void write_map_csv(const std::string& path, const AngleDelayMap& map,
                   double scale) {
  CsvFile f(path);
  auto& out = f.stream();
  out << "theta_rad\\tau_s";
  for (Eigen::Index j = 0; j < map.grid.tau_axis.size(); ++j) {
    out << ',' << format_double(map.grid.tau_axis[j]);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < map.values.rows(); ++i) {
    out << format_double(map.grid.theta_axis[i]);
    for (Eigen::Index j = 0; j < map.values.cols(); ++j) {
      out << ',' << format_double(map.values(i, j) / scale);
    }
    out << '\n';
  }
  f.close();
}

void write_kappa_csv(const std::string& path, const GainPhase& kappa) {
  CsvFile f(path);
  auto& out = f.stream();
  out << "index,re,im\n";
  for (int n = 0; n < kappa.size(); ++n) {
    out << n << ',' << format_double(kappa.kappa[n].real()) << ','
        << format_double(kappa.kappa[n].imag()) << '\n';
  }
  f.close();
}

GainPhase read_kappa_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,re,im", 0) != 0) {
    throw IoError("'" + path + "' lacks the index,re,im header");
  }
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string idx, re, im;
    if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') ||
        !std::getline(row, im)) {
      throw IoError("malformed row in '" + path + "': " + line);
    }
    std::size_t index = 0;
    double vr = 0.0, vi = 0.0;
    if (!parse_field(idx, index) || !parse_field(re, vr) ||
        !parse_field(im, vi)) {
      throw IoError("malformed row in '" + path + "': " + line);
    }
    if (index != values.size()) {
      throw IoError("non-consecutive index in '" + path + "'");
    }
    values.emplace_back(vr, vi);
  }
  GainPhase k;
  k.kappa = Eigen::Map<const CVector>(values.data(),
                                      static_cast<Eigen::Index>(values.size()));
  return k;
}

void write_train_log_csv(const std::string& path,
                         const std::vector<TrainLogRow>& rows,
                         bool with_wall_clock) {
  CsvFile f(path);
  auto& out = f.stream();
  out << "iteration,loss,kappa_error" << (with_wall_clock ? ",wall_ms" : "")
      << '\n';
  for (const TrainLogRow& r : rows) {
    out << r.iteration << ',' << format_double(r.loss) << ','
        << format_double(r.kappa_error);
    if (with_wall_clock) out << ',' << format_double(r.wall_ms);
    out << '\n';
  }
  f.close();
}

void write_roc_csv(const std::string& path,
                   const std::vector<EvalReport>& reports) {
  CsvFile f(path);
  auto& out = f.stream();
  out << "eta,p_fa,p_d,n_h0,n_h1,method_tag\n";
  for (const EvalReport& rep : reports) {
    const std::string tag = to_string(rep.method);
    for (const RocPoint& p : rep.roc) {
      out << format_double(p.eta) << ',' << format_double(p.p_fa) << ','
          << format_double(p.p_d) << ',' << p.n_h0 << ',' << p.n_h1 << ','
          << tag << '\n';
    }
  }
  f.close();
}

void write_summary_csv(const std::string& path,
                       const std::vector<EvalReport>& reports) {
  CsvFile f(path);
  auto& out = f.stream();
  out << "method_tag,angle_rmse_deg,range_rmse_m,kappa_error,n_realizations\n";
  for (const EvalReport& rep : reports) {
    out << to_string(rep.method) << ',' << format_double(rep.angle_rmse_deg)
        << ',' << format_double(rep.range_rmse_m) << ','
        << format_double(rep.kappa_error) << ',' << rep.n_realizations << '\n';
  }
  f.close();
}

}  // namespace gpical
