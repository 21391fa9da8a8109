// Copyright 2026 The qbm-gse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbm/sgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qbm {

namespace {

// Stream-path tags outside the iteration counter range.
constexpr std::uint64_t kInitTag = ~std::uint64_t{0};
constexpr std::uint64_t kMeasureTag = ~std::uint64_t{0} - 1;

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
}

std::uint64_t checked_ceil(double x, const char* what) {
  const double c = std::ceil(x);
  if (!(c >= 0.0 && c < 1.8e19)) throw ConfigError(std::string(what) + " overflows 64 bits");
  return static_cast<std::uint64_t>(c);
}

}  // namespace

Hyperparameters derive_hyperparameters(int num_parameters, double alpha_one_norm, double epsilon,
                                       double delta_bound) {
  check_epsilon(epsilon);
  if (!(delta_bound > 0.0) || !std::isfinite(delta_bound)) {
    throw ConfigError("Delta bound must be finite and > 0");
  }
  const double num = static_cast<double>(num_parameters);

  Hyperparameters hp;
  hp.ell = smoothness_constant(num_parameters, alpha_one_norm);
  hp.eta = 1.0 / hp.ell;
  const std::uint64_t m = checked_ceil(12.0 * delta_bound * hp.ell / (epsilon * epsilon), "M");
  if (m > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ConfigError("iteration count overflows");
  }
  hp.iterations = static_cast<std::int64_t>(m);
  hp.epsilon1 = hp.epsilon2 = epsilon / (2.0 * std::sqrt(2.0 * num));
  hp.delta1 = hp.delta2 = epsilon * epsilon / (8.0 * num * alpha_one_norm * alpha_one_norm);
  hp.shots_first = hoeffding_shots(alpha_one_norm, hp.epsilon1, hp.delta1);
  hp.shots_second = hoeffding_shots(alpha_one_norm, hp.epsilon2, hp.delta2);
  hp.delta_bound = delta_bound;
  return hp;
}

Hyperparameters derive_hyperparameters(const WeightedPauliSum& h, const Ansatz& ansatz,
                                       double epsilon, double delta_bound) {
  return derive_hyperparameters(ansatz.size(), one_norm(h), epsilon, delta_bound);
}

double default_delta(const WeightedPauliSum& h, const Ansatz& ansatz, const RealVector& theta0) {
  return objective(h, thermal_state(ansatz, theta0)) + one_norm(h);
}

RealVector initial_theta(int num_parameters, std::uint64_t seed) {
  RandomStream rng = derive_stream(seed, {kInitTag});
  RealVector theta(num_parameters);
  for (int j = 0; j < num_parameters; ++j) theta(j) = uniform01(rng) - 0.5;
  return theta;
}

double measure_energy(const WeightedPauliSum& h, const ThermalState& state,
                      std::optional<std::int64_t> shots, RandomStream& rng) {
  if (!shots) return objective(h, state);
  if (*shots < 1) throw ConfigError("measure_energy needs at least one shot");
  std::vector<double> plus_probability;
  for (const auto& term : h.terms()) {
    const double mean = expectation(dense_matrix(term.string), state.rho());
    plus_probability.push_back(0.5 * (1.0 + mean));
  }
  const TermSampler terms(h.coefficients());
  std::int64_t signed_sum = 0;
  for (std::int64_t n = 0; n < *shots; ++n) {
    const std::size_t k = terms.sample(rng);
    const int outcome = bernoulli(rng, plus_probability[k]) ? 1 : -1;
    signed_sum += h.term(k).sign * outcome;
  }
  return one_norm(h) * static_cast<double>(signed_sum) / static_cast<double>(*shots);
}

SampleComplexity sample_complexity(double epsilon, int num_parameters, double alpha_one_norm,
                                   double ell, double delta_bound) {
  check_epsilon(epsilon);
  if (num_parameters < 1) throw ConfigError("sample_complexity: J must be >= 1");
  if (!(alpha_one_norm > 0.0) || !(ell > 0.0) || !(delta_bound > 0.0)) {
    throw ConfigError("sample_complexity: ||alpha||_1, ell and Delta must be > 0");
  }
  const double eps2 = epsilon * epsilon;
  const double j = static_cast<double>(num_parameters);
  const double a2 = alpha_one_norm * alpha_one_norm;

  SampleComplexity out;
  out.iterations = checked_ceil(12.0 * ell * delta_bound / eps2, "M");
  out.shots_per_term = checked_ceil(8.0 * j * a2 * std::log(16.0 * j * a2 / eps2) / eps2, "N1");
  const unsigned __int128 total = static_cast<unsigned __int128>(2u * static_cast<unsigned>(num_parameters)) *
                                  out.iterations * out.shots_per_term;
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    throw ConfigError("sample complexity overflows 64 bits");
  }
  out.total = static_cast<std::uint64_t>(total);
  return out;
}

TrainResult qbm_gse(const WeightedPauliSum& h, const Ansatz& ansatz, const TrainConfig& cfg,
                    const RecordSink& sink) {
  check_epsilon(cfg.epsilon);
  if (h.num_qubits() != ansatz.num_qubits()) {
    throw DimensionError("Hamiltonian and ansatz act on different qubit counts");
  }
  const int num = ansatz.size();
  const ComplexMatrix h_dense = dense_matrix(h);

  TrainResult result;
  result.theta0 = cfg.theta0 ? *cfg.theta0 : initial_theta(num, cfg.seed);
  if (result.theta0.size() != num) throw DimensionError("theta0 length does not match the ansatz");

  const ThermalState start = thermal_state(ansatz, result.theta0);
  double delta = 0.0;
  if (cfg.delta_bound) {
    delta = *cfg.delta_bound;
  } else {
    delta = objective(h_dense, start) + one_norm(h);
    result.delta_defaulted = true;
  }
  result.hyper = derive_hyperparameters(h, ansatz, cfg.epsilon, delta);
  const Hyperparameters& hp = result.hyper;

  std::int64_t iterations = hp.iterations;
  if (cfg.max_iterations) {
    if (*cfg.max_iterations < 1) throw ConfigError("max iterations must be >= 1");
    iterations = std::min(iterations, *cfg.max_iterations);
  }
  result.iterations_run = iterations;

  EstimatorConfig est;
  est.epsilon1 = hp.epsilon1;
  est.epsilon2 = hp.epsilon2;
  est.delta1 = hp.delta1;
  est.delta2 = hp.delta2;
  est.seed = cfg.seed;
  if (cfg.shot_mode.kind == ShotMode::Kind::kFixed) {
    if (cfg.shot_mode.shots < 1) throw ConfigError("fixed shot mode needs a count >= 1");
    est.shots_first = est.shots_second = cfg.shot_mode.shots;
  }
  const bool analytic = cfg.shot_mode.kind == ShotMode::Kind::kAnalytic;
  std::optional<HighPeakTentSampler> sampler;
  if (!analytic) sampler = HighPeakTentSampler::build(cfg.sampler_t_max, cfg.sampler_grid_size);

  RealVector theta = result.theta0;
  std::int64_t preparations = 0;
  double min_energy = std::numeric_limits<double>::infinity();
  double min_grad = std::numeric_limits<double>::infinity();
  result.records.reserve(static_cast<std::size_t>(iterations));

  for (std::int64_t m = 0; m < iterations; ++m) {
    const ThermalState state = thermal_state(ansatz, theta);
    TrainRecord rec;
    rec.iteration = m;
    rec.theta = theta;
    rec.f_analytic = objective(h_dense, state);
    const RealVector exact_grad = analytic_gradient(h_dense, ansatz, state);
    rec.grad_analytic_norm = exact_grad.norm();
    if (analytic) {
      rec.grad_estimate = exact_grad;
    } else {
      GradientEstimate g = qbge(h, ansatz, state, est, *sampler, static_cast<std::uint64_t>(m));
      rec.grad_estimate = std::move(g.components);
      preparations += g.preparations;
    }
    rec.preparations_used = preparations;
    min_energy = std::min(min_energy, rec.f_analytic);
    min_grad = std::min(min_grad, rec.grad_analytic_norm);

    theta = theta - hp.eta * rec.grad_estimate;
    if (!theta.allFinite()) {
      throw NumericalError("non-finite parameters after iteration " + std::to_string(m));
    }
    if (sink) sink(rec);
    result.records.push_back(std::move(rec));
  }

  const ThermalState last = thermal_state(ansatz, theta);
  result.final_theta = theta;
  result.final_energy = objective(h_dense, last);
  min_energy = std::min(min_energy, result.final_energy);
  min_grad = std::min(min_grad, analytic_gradient(h_dense, ansatz, last).norm());

  std::optional<std::int64_t> measure_shots;
  if (cfg.shot_mode.kind == ShotMode::Kind::kFixed) measure_shots = cfg.shot_mode.shots;
  if (cfg.shot_mode.kind == ShotMode::Kind::kHoeffding) measure_shots = hp.shots_second;
  RandomStream measure_rng = derive_stream(cfg.seed, {kMeasureTag});
  result.final_energy_estimate = measure_energy(h, last, measure_shots, measure_rng);
  result.final_measurement_shots = measure_shots.value_or(0);

  result.min_trajectory_energy = min_energy;
  result.min_grad_norm = min_grad;
  result.total_preparations = preparations + result.final_measurement_shots;
  return result;
}

}  // namespace qbm
