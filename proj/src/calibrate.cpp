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

#include "gpical/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "gpical/detector.hpp"
#include "gpical/rng.hpp"

namespace gpical {

std::string to_string(LossChoice choice) {
  return choice == LossChoice::kMapMax ? "max" : "norm";
}

LossChoice parse_loss_choice(const std::string& name) {
  if (name == "max" || name == "map-max") return LossChoice::kMapMax;
  if (name == "norm" || name == "reconstruction") {
    return LossChoice::kReconstruction;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown loss '" + name + "' (expected max or norm)");
}

TrainState TrainState::initial(int n_antennas) {
  TrainState s;
  s.kappa_hat = GainPhase::ones(n_antennas);
  s.adam_m = RVector::Zero(2 * n_antennas);
  s.adam_v = RVector::Zero(2 * n_antennas);
  return s;
}

RVector to_real_params(const CVector& kappa) {
  RVector p(2 * kappa.size());
  for (Eigen::Index n = 0; n < kappa.size(); ++n) {
    p[2 * n] = kappa[n].real();
    p[2 * n + 1] = kappa[n].imag();
  }
  return p;
}

CVector from_real_params(const RVector& params) {
  CVector k(params.size() / 2);
  for (Eigen::Index n = 0; n < k.size(); ++n) {
    k[n] = Complex(params[2 * n], params[2 * n + 1]);
  }
  return k;
}

PreparedSample prepare_sample(const Observation& obs, const CMatrix& phi_tau,
                              const ScenarioConfig& config) {
  PreparedSample p;
  p.y = obs.y;
  p.x = obs.truth.x;
  p.z = delay_matched(obs.y, obs.truth.x, phi_tau);
  p.ramps = angle_ramps(
      linspace(obs.truth.theta_min, obs.truth.theta_max, config.n_theta_grid),
      config);
  return p;
}

SampleTerm evaluate_sample(const PreparedSample& sample,
                           const GainPhase& kappa_hat, LossChoice choice,
                           const CMatrix& phi_tau,
                           const ScenarioConfig& config, bool with_gradient) {
  const CMatrix out = matched_output(sample.z, kappa_hat, sample.ramps);
  const MapPeak peak = map_argmax(out.cwiseAbs2());
  const int i = peak.theta_index;
  const int j = peak.tau_index;
  const Complex c = out(i, j);  // kappa_hat^H w
  const Eigen::Index n_ant = kappa_hat.kappa.size();

  SampleTerm term;
  term.theta_index = i;
  term.tau_index = j;
  if (with_gradient) term.grad = RVector::Zero(2 * n_ant);

  // w = conj(ramp_i) .* z_j, so that the map entry is c = kappa_hat^H w.
  auto matched_column = [&] {
    return CVector(sample.ramps.col(i).conjugate().cwiseProduct(
        sample.z.col(j)));
  };

  if (choice == LossChoice::kMapMax) {
    term.loss = -peak.value;
    if (with_gradient) {
      const CVector w = matched_column();
      for (Eigen::Index m = 0; m < n_ant; ++m) {
        const Complex q = std::conj(c) * w[m];
        term.grad[2 * m] = -2.0 * q.real();
        term.grad[2 * m + 1] = -2.0 * q.imag();
      }
    }
    return term;
  }

  const double denom =
      config.n_antennas * sample.x.squaredNorm() + config.n0_over_sigma2();
  const Complex gamma_hat = c / denom;
  const CVector a = kappa_hat.kappa.cwiseProduct(sample.ramps.col(i));
  const CVector g = phi_tau.col(j).cwiseProduct(sample.x);
  const CMatrix residual = sample.y - gamma_hat * a * g.transpose();
  const double norm = residual.norm();
  term.loss = norm;
  if (!with_gradient || norm == 0.0) return term;

  // dL = -(1/L) Re<R, dYtilde>, with <R, u g^T> = h^H u and h = R g^*.
  const CVector w = matched_column();
  const CVector h = residual * g.conjugate();
  const Complex e = h.dot(a);
  const double scale = 1.0 / (norm * denom);
  for (Eigen::Index m = 0; m < n_ant; ++m) {
    const Complex through_gain = w[m] * e;
    const Complex through_steering =
        c * std::conj(h[m]) * sample.ramps(m, i);
    term.grad[2 * m] = -scale * (through_gain + through_steering).real();
    term.grad[2 * m + 1] =
        -scale * (through_gain.imag() - through_steering.imag());
  }
  return term;
}

namespace {

struct BatchResult {
  double loss = 0.0;
  RVector grad;
};

BatchResult evaluate_batch(const std::vector<Observation>& batch,
                           const GainPhase& kappa_hat, LossChoice choice,
                           const ScenarioConfig& config, bool with_gradient) {
  if (batch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "batch must not be empty");
  }
  const CMatrix phi_tau = delay_dictionary(
      linspace(config.tau_min(), config.tau_max(), config.n_tau_grid), config);
  std::vector<SampleTerm> terms(batch.size());
  const auto n = static_cast<long>(batch.size());
#pragma omp parallel for schedule(static)
  for (long b = 0; b < n; ++b) {
    const PreparedSample p = prepare_sample(batch[b], phi_tau, config);
    terms[b] =
        evaluate_sample(p, kappa_hat, choice, phi_tau, config, with_gradient);
  }
  BatchResult r;
  if (with_gradient) r.grad = RVector::Zero(2 * kappa_hat.size());
  for (const SampleTerm& t : terms) {
    r.loss += t.loss;
    if (with_gradient) r.grad += t.grad;
  }
  r.loss /= static_cast<double>(batch.size());
  if (with_gradient) r.grad /= static_cast<double>(batch.size());
  return r;
}

}  // namespace

double loss_map_max(const std::vector<Observation>& batch,
                    const GainPhase& kappa_hat, const ScenarioConfig& config) {
  return evaluate_batch(batch, kappa_hat, LossChoice::kMapMax, config, false)
      .loss;
}

double loss_reconstruction(const std::vector<Observation>& batch,
                           const GainPhase& kappa_hat,
                           const ScenarioConfig& config) {
  return evaluate_batch(batch, kappa_hat, LossChoice::kReconstruction, config,
                        false)
      .loss;
}

double batch_loss(const std::vector<Observation>& batch,
                  const GainPhase& kappa_hat, LossChoice choice,
                  const ScenarioConfig& config) {
  return evaluate_batch(batch, kappa_hat, choice, config, false).loss;
}

RVector loss_gradient(const std::vector<Observation>& batch,
                      const GainPhase& kappa_hat, LossChoice choice,
                      const ScenarioConfig& config) {
  return evaluate_batch(batch, kappa_hat, choice, config, true).grad;
}

namespace {

void adam_update(TrainState& state, const RVector& grad,
                 const ScenarioConfig& config, const AdamParams& adam) {
  const Eigen::Index dim = 2 * state.kappa_hat.kappa.size();
  if (grad.size() != dim || state.adam_m.size() != dim ||
      state.adam_v.size() != dim) {
    throw Error(ErrorCode::kInvalidArgument,
                "adam_step: gradient and state dimensions differ");
  }
  state.iteration += 1;
  state.adam_m = adam.beta1 * state.adam_m + (1.0 - adam.beta1) * grad;
  state.adam_v =
      adam.beta2 * state.adam_v + (1.0 - adam.beta2) * grad.cwiseAbs2();
  const double m_corr = 1.0 - std::pow(adam.beta1, state.iteration);
  const double v_corr = 1.0 - std::pow(adam.beta2, state.iteration);

  RVector params = to_real_params(state.kappa_hat.kappa);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double m_hat = state.adam_m[k] / m_corr;
    const double v_hat = state.adam_v[k] / v_corr;
    params[k] -=
        config.learning_rate * m_hat / (std::sqrt(v_hat) + adam.epsilon);
  }
  state.kappa_hat = GainPhase::normalized(from_real_params(params));
}

}  // namespace

RVector project_to_tangent(const RVector& grad, const GainPhase& kappa_hat) {
  const RVector p = to_real_params(kappa_hat.kappa);
  const double p2 = p.squaredNorm();
  if (grad.size() != p.size() || p2 == 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "project_to_tangent: dimension mismatch or zero kappa");
  }
  return grad - (grad.dot(p) / p2) * p;
}

TrainState adam_step(const TrainState& state, const RVector& grad,
                     const ScenarioConfig& config, const AdamParams& adam) {
  TrainState next = state;
  adam_update(next, grad, config, adam);
  return next;
}

std::vector<Observation> draw_batch(const ScenarioConfig& config,
                                    const GainPhase& kappa_true,
                                    std::uint64_t seed, int iteration) {
  const double n0 = config.noise_power();
  std::vector<Observation> batch(config.batch_size);
  for (int b = 0; b < config.batch_size; ++b) {
    Stream rng(seed, Purpose::kTrainBatch, static_cast<std::uint64_t>(iteration),
               static_cast<std::uint64_t>(b));
    const ScenarioDraw draw = draw_scenario(config, rng);
    batch[b] = synthesize(draw, kappa_true, n0, config, rng);
  }
  return batch;
}

TrainResult train(const ScenarioConfig& config, LossChoice choice,
                  const GainPhase& kappa_true, std::uint64_t seed,
                  const TrainObserver& observer) {
  config.validate();
  if (kappa_true.size() != config.n_antennas) {
    throw Error(ErrorCode::kInvalidArgument,
                "kappa_true length does not match n_antennas");
  }
  const CMatrix phi_tau = delay_dictionary(
      linspace(config.tau_min(), config.tau_max(), config.n_tau_grid), config);
  const double n0 = config.noise_power();
  const int batch = config.batch_size;

  TrainState state = TrainState::initial(config.n_antennas);
  std::vector<SampleTerm> terms(batch);
  for (int it = 0; it < config.n_iterations; ++it) {
    const GainPhase& kappa_hat = state.kappa_hat;
#pragma omp parallel for schedule(static)
    for (int b = 0; b < batch; ++b) {
      // Draw, synthesize and reduce one sample at a time so the batch is
      // never held in memory.
      Stream rng(seed, Purpose::kTrainBatch, static_cast<std::uint64_t>(it),
                 static_cast<std::uint64_t>(b));
      const ScenarioDraw draw = draw_scenario(config, rng);
      const Observation obs = synthesize(draw, kappa_true, n0, config, rng);
      const PreparedSample p = prepare_sample(obs, phi_tau, config);
      terms[b] = evaluate_sample(p, kappa_hat, choice, phi_tau, config, true);
    }
    double loss = 0.0;
    RVector grad = RVector::Zero(2 * config.n_antennas);
    for (const SampleTerm& t : terms) {
      loss += t.loss;
      grad += t.grad;
    }
    loss /= batch;
    grad /= batch;
    if (!std::isfinite(loss) || !grad.allFinite()) {
      throw NumericalError(
          "non-finite training loss at iteration " + std::to_string(it), it);
    }
    if (config.tangent_projection) grad = project_to_tangent(grad, kappa_hat);
    adam_update(state, grad, config, AdamParams{});
    state.loss_history.push_back(loss);
    if (observer) observer(state);
  }
  return TrainResult{state.kappa_hat, state.loss_history};
}

}  // namespace gpical
