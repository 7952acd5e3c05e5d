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

// gpical command-line front end. Talks to the library only through the C API.
//
//   gpical map      --out-dir D [--config F] [--seed S] [--set k=v ...]
//   gpical train    --out-dir D --loss {max|norm} ...
//   gpical evaluate --out-dir D [--n-realizations R] ...
//
// Exit status: 0 success, 2 usage/config/output-directory error, 3 numerical
// failure, 1 anything else.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpical/gpical.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr const char* kConfigEnv = "GPICAL_CONFIG";

// Carries an exit code out of the command bodies.
struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(gpical_status s) {
  switch (s) {
    case GPICAL_OK: return kExitOk;
    case GPICAL_ERR_INVALID_ARGUMENT:
    case GPICAL_ERR_CONFIG:
    case GPICAL_ERR_IO: return kExitUsage;
    case GPICAL_ERR_NUMERICAL: return kExitNumerical;
    default: return kExitOther;
  }
}

void check(gpical_status s, const std::string& what) {
  if (s == GPICAL_OK) return;
  throw Failure{exit_code_for(s), what + ": " + gpical_last_error()};
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Config = std::unique_ptr<gpical_config,
                               Deleter<gpical_config, gpical_config_destroy>>;
using Kappa = std::unique_ptr<gpical_kappa,
                              Deleter<gpical_kappa, gpical_kappa_destroy>>;
using Obs = std::unique_ptr<gpical_observation,
                            Deleter<gpical_observation,
                                    gpical_observation_destroy>>;
using Map = std::unique_ptr<gpical_map, Deleter<gpical_map, gpical_map_destroy>>;
using TrainLog = std::unique_ptr<
    gpical_train_log, Deleter<gpical_train_log, gpical_train_log_destroy>>;
using Report = std::unique_ptr<gpical_report,
                               Deleter<gpical_report, gpical_report_destroy>>;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  int threads = 0;
  std::vector<std::string> overrides;
};

std::string config_text(const gpical_config* cfg) {
  std::size_t needed = 0;
  check(gpical_config_text(cfg, nullptr, 0, &needed), "config");
  std::string buf(needed, '\0');
  check(gpical_config_text(cfg, buf.data(), buf.size(), nullptr), "config");
  buf.resize(needed - 1);
  return buf;
}

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Failure{kExitUsage, "cannot write " + path.string()};
}

// Loads, overrides and validates the config; prepares the output directory.
struct Run {
  Config cfg;
  std::uint64_t seed = 0;
  fs::path out_dir;
  fs::path manifest_path;
  ordered_json manifest;

  void write_manifest() const {
    write_text(manifest_path, manifest.dump(2) + "\n");
  }

  std::string output(const std::string& name) {
    manifest["outputs"].push_back(name);
    return (out_dir / name).string();
  }
};

Run start_run(const CommonOptions& opt, const std::string& command,
              const std::string& tag) {
  Run run;
  gpical_config* raw = nullptr;
  check(gpical_config_create(&raw), "config");
  run.cfg.reset(raw);

  std::string path = opt.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (!path.empty()) check(gpical_config_load(raw, path.c_str()), "config");
  for (const std::string& kv : opt.overrides) {
    check(gpical_config_assign(raw, kv.c_str()), "--set " + kv);
  }
  if (opt.seed) {
    check(gpical_config_set(raw, "seed", std::to_string(*opt.seed).c_str()),
          "--seed");
  }
  check(gpical_config_validate(raw), "config");
  run.seed = gpical_config_seed(raw);
  if (opt.threads > 0) gpical_set_threads(opt.threads);

  run.out_dir = opt.out_dir;
  std::error_code ec;
  fs::create_directories(run.out_dir, ec);
  if (ec || !fs::is_directory(run.out_dir)) {
    throw Failure{kExitUsage,
                  "cannot create output directory " + opt.out_dir};
  }

  const std::string stem = tag.empty() ? command : command + "_" + tag;
  run.manifest_path = run.out_dir / ("manifest_" + stem + ".json");
  const std::string resolved = "resolved_" + stem + ".cfg";

  ordered_json& m = run.manifest;
  m["command"] = command;
  if (!tag.empty()) m["loss"] = tag;
  m["seed"] = run.seed;
  m["version"] = gpical_version();
  m["config_source"] = path.empty() ? "built-in defaults" : path;
  m["overrides"] = opt.overrides;
  m["threads"] = opt.threads;
  m["resolved_config_file"] = resolved;
  m["config"] = config_text(raw);
  m["outputs"] = ordered_json::array();
  m["started_at"] = timestamp_utc();
  m["status"] = "running";
  run.write_manifest();
  write_text(run.out_dir / resolved, config_text(raw));
  return run;
}

void finish_run(Run& run, const std::string& status) {
  run.manifest["finished_at"] = timestamp_utc();
  run.manifest["status"] = status;
  run.write_manifest();
}

Kappa draw_true_kappa(const Run& run) {
  gpical_kappa* k = nullptr;
  check(gpical_kappa_draw(run.cfg.get(), run.seed, 0, &k), "kappa draw");
  return Kappa(k);
}

void cmd_map(const CommonOptions& opt) {
  Run run = start_run(opt, "map", "");
  const gpical_config* cfg = run.cfg.get();
  Kappa kappa_true = draw_true_kappa(run);
  Kappa ones;
  {
    gpical_kappa* k = nullptr;
    check(gpical_kappa_ones(gpical_config_n_antennas(cfg), &k), "kappa");
    ones.reset(k);
  }
  gpical_observation* o = nullptr;
  check(gpical_observation_draw(cfg, kappa_true.get(), run.seed, 0, 1, &o),
        "observation");
  Obs obs(o);

  gpical_map* mk = nullptr;
  check(gpical_map_compute(cfg, obs.get(), kappa_true.get(), &mk), "map");
  Map known(mk);
  gpical_map* mu = nullptr;
  check(gpical_map_compute(cfg, obs.get(), ones.get(), &mu), "map");
  Map uncomp(mu);

  double known_max = 0.0, uncomp_max = 0.0;
  check(gpical_map_max(known.get(), &known_max), "map");
  check(gpical_map_max(uncomp.get(), &uncomp_max), "map");
  if (!(known_max > 0.0)) {
    throw Failure{kExitNumerical, "known-kappa map maximum is not positive"};
  }
  const std::string p_known = run.output("map_known.csv");
  const std::string p_uncomp = run.output("map_uncompensated.csv");
  const std::string p_obs = run.output("observation.csv");
  const std::string p_kappa = run.output("kappa_true.csv");
  run.write_manifest();
  check(gpical_map_write_csv(known.get(), known_max, p_known.c_str()), "write");
  check(gpical_map_write_csv(uncomp.get(), known_max, p_uncomp.c_str()),
        "write");
  check(gpical_observation_write_csv(obs.get(), p_obs.c_str()), "write");
  check(gpical_kappa_write_csv(kappa_true.get(), p_kappa.c_str()), "write");

  run.manifest["normalized_max"] = {{"known", 1.0},
                                    {"uncompensated", uncomp_max / known_max}};
  finish_run(run, "ok");
  std::printf("map: uncompensated peak / known peak = %.6f\n",
              uncomp_max / known_max);
}

void cmd_train(const CommonOptions& opt, const std::string& loss,
               bool wall_clock) {
  Run run = start_run(opt, "train", loss);
  const gpical_loss choice =
      loss == "max" ? GPICAL_LOSS_MAP_MAX : GPICAL_LOSS_RECONSTRUCTION;
  Kappa kappa_true = draw_true_kappa(run);
  const std::string p_kappa = run.output("kappa_learned_" + loss + ".csv");
  const std::string p_log = run.output("train_log_" + loss + ".csv");
  const std::string p_true = run.output("kappa_true.csv");
  run.write_manifest();
  check(gpical_kappa_write_csv(kappa_true.get(), p_true.c_str()), "write");

  gpical_kappa* learned = nullptr;
  gpical_train_log* log = nullptr;
  std::int64_t failed = -1;
  const gpical_status s = gpical_train(run.cfg.get(), choice, kappa_true.get(),
                                       run.seed, &learned, &log, &failed);
  if (s == GPICAL_ERR_NUMERICAL) {
    run.manifest["failed_iteration"] = failed;
    finish_run(run, "numerical failure");
    throw Failure{kExitNumerical, "training diverged at iteration " +
                                      std::to_string(failed) + ": " +
                                      gpical_last_error()};
  }
  check(s, "train");
  Kappa learned_h(learned);
  TrainLog log_h(log);
  check(gpical_kappa_write_csv(learned, p_kappa.c_str()), "write");
  check(gpical_train_log_write_csv(log, wall_clock ? 1 : 0, p_log.c_str()),
        "write");

  Kappa ones;
  {
    gpical_kappa* k = nullptr;
    check(gpical_kappa_ones(gpical_kappa_size(learned), &k), "kappa");
    ones.reset(k);
  }
  double e0 = 0.0, e1 = 0.0;
  check(gpical_kappa_error(ones.get(), kappa_true.get(), &e0), "kappa");
  check(gpical_kappa_error(learned, kappa_true.get(), &e1), "kappa");
  run.manifest["kappa_error_initial"] = e0;
  run.manifest["kappa_error_final"] = e1;
  finish_run(run, "ok");
  std::printf("train[%s]: kappa error %.6f -> %.6f\n", loss.c_str(), e0, e1);
}

void print_progress(const char* message, void*) {
  std::fprintf(stderr, "%s\n", message);
}

void cmd_evaluate(const CommonOptions& opt, int n_realizations) {
  Run run = start_run(opt, "evaluate", "");
  if (n_realizations <= 0) {
    char buf[32];
    check(gpical_config_get(run.cfg.get(), "gpi_realizations", buf, sizeof buf,
                            nullptr),
          "config");
    n_realizations = std::atoi(buf);
  }
  run.manifest["n_realizations"] = n_realizations;
  const std::string p_roc = run.output("roc.csv");
  const std::string p_summary = run.output("summary.csv");
  run.write_manifest();

  gpical_report* rep = nullptr;
  std::int64_t failed = -1;
  const gpical_status s =
      gpical_run_comparison(run.cfg.get(), n_realizations, run.seed,
                            print_progress, nullptr, &rep, &failed);
  if (s == GPICAL_ERR_NUMERICAL) {
    run.manifest["failed_realization"] = failed;
    finish_run(run, "numerical failure");
    throw Failure{kExitNumerical, "run failed in GPI realization " +
                                      std::to_string(failed) + ": " +
                                      gpical_last_error()};
  }
  check(s, "evaluate");
  Report report(rep);
  check(gpical_report_write_roc_csv(rep, p_roc.c_str()), "write");
  check(gpical_report_write_summary_csv(rep, p_summary.c_str()), "write");
  finish_run(run, "ok");

  for (int m = 0; m < gpical_report_method_count(rep); ++m) {
    gpical_method_summary sum{};
    double pd = 0.0;
    check(gpical_report_summary(rep, m, &sum), "report");
    check(gpical_report_pd_at_pfa(rep, m, 1e-2, &pd), "report");
    std::printf("%-14s p_d@1e-2=%.4f angle_rmse=%.4f deg range_rmse=%.4f m "
                "kappa_err=%.4f\n",
                sum.tag, pd, sum.angle_rmse_deg, sum.range_rmse_m,
                sum.kappa_error);
  }
}

void add_common(CLI::App* sub, CommonOptions& opt) {
  sub->add_option("--config", opt.config_path,
                  std::string("config file (default: $") + kConfigEnv +
                      ", else built-in defaults)");
  sub->add_option("--seed", opt.seed, "master seed (overrides config)");
  sub->add_option("--out-dir", opt.out_dir, "output directory")->required();
  sub->add_option("--threads", opt.threads, "worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--set", opt.overrides, "override a config key: key=value")
      ->allow_extra_args(false)
      ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind gain-phase calibration for OFDM sensing arrays"};
  app.set_version_flag("--version", std::string(gpical_version()));
  app.require_subcommand(1);

  CommonOptions map_opt, train_opt, eval_opt;
  CLI::App* map = app.add_subcommand("map", "angle-delay maps of one draw");
  add_common(map, map_opt);

  CLI::App* train = app.add_subcommand("train", "learn kappa from data");
  add_common(train, train_opt);
  std::string loss;
  bool wall_clock = false;
  train->add_option("--loss", loss, "training loss")
      ->required()
      ->check(CLI::IsMember({"max", "norm"}));
  train->add_flag("--log-wall-clock", wall_clock,
                  "add a wall_ms column to the training log");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "ROC/RMSE comparison of all methods");
  add_common(evaluate, eval_opt);
  int n_realizations = 0;
  evaluate->add_option("--n-realizations", n_realizations,
                       "GPI realizations (default: config gpi_realizations)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*map) cmd_map(map_opt);
    if (*train) cmd_train(train_opt, loss, wall_clock);
    if (*evaluate) cmd_evaluate(eval_opt, n_realizations);
  } catch (const Failure& f) {
    std::fprintf(stderr, "gpical: %s\n", f.message.c_str());
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gpical: %s\n", e.what());
    return kExitOther;
  }
  return kExitOk;
}
