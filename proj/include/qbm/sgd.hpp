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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qbm/circuit.hpp"
#include "qbm/pauli.hpp"
#include "qbm/random.hpp"
#include "qbm/sampling.hpp"
#include "qbm/thermal.hpp"
#include "qbm/types.hpp"

namespace qbm {

/// How the trainer obtains its gradient at each iteration.
struct ShotMode {
  enum class Kind {
    kHoeffding,  ///< N1, N2 from the Hoeffding formulas at the derived precisions
    kFixed,      ///< the same explicit count for both sub-estimators
    kAnalytic,   ///< exact gradient, no shot noise
  };
  Kind kind = Kind::kHoeffding;
  std::int64_t shots = 0;

  static ShotMode hoeffding() { return {Kind::kHoeffding, 0}; }
  static ShotMode fixed(std::int64_t n) { return {Kind::kFixed, n}; }
  static ShotMode analytic() { return {Kind::kAnalytic, 0}; }
};

struct TrainConfig {
  /// Target stationarity, in (0, 1).
  double epsilon = 0.1;
  /// Upper bound on f(theta_0) - inf f; default_delta() when absent.
  std::optional<double> delta_bound;
  /// Caps the iteration count below the formula's M.
  std::optional<std::int64_t> max_iterations;
  std::uint64_t seed = 0;
  ShotMode shot_mode = ShotMode::hoeffding();
  /// Fixed starting point; otherwise initial_theta(J, seed).
  std::optional<RealVector> theta0;
  double sampler_t_max = HighPeakTentSampler::kDefaultTMax;
  std::size_t sampler_grid_size = HighPeakTentSampler::kDefaultGridSize;
};

struct Hyperparameters {
  double ell = 0.0;
  double eta = 0.0;
  /// ceil(12 Delta ell / epsilon^2).
  std::int64_t iterations = 0;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::int64_t shots_first = 0;
  std::int64_t shots_second = 0;
  double delta_bound = 0.0;
};

/// eta = 1/ell, M = ceil(12 Delta ell / eps^2), eps1 = eps2 = eps / (2 sqrt(2J)),
/// delta1 = delta2 = eps^2 / (8 J ||alpha||_1^2), N1 and N2 by Hoeffding.
/// Throws ConfigError unless epsilon is in (0, 1) and delta_bound > 0.
Hyperparameters derive_hyperparameters(const WeightedPauliSum& h, const Ansatz& ansatz,
                                       double epsilon, double delta_bound);
/// Same, from the scalar summaries of a Pauli ansatz and Hamiltonian.
Hyperparameters derive_hyperparameters(int num_parameters, double alpha_one_norm, double epsilon,
                                       double delta_bound);

/// f(theta0) + ||alpha||_1, which bounds f(theta0) - inf f because
/// inf f >= -||H|| >= -||alpha||_1.
double default_delta(const WeightedPauliSum& h, const Ansatz& ansatz, const RealVector& theta0);

/// Each entry uniform on [-0.5, 0.5], from a stream reserved for initialization.
RealVector initial_theta(int num_parameters, std::uint64_t seed);

/// Shot-based estimate of Tr[H rho]: k ~ alpha / ||alpha||_1, then a +/-1
/// measurement of H_k. Without a shot count the exact value is returned.
double measure_energy(const WeightedPauliSum& h, const ThermalState& state,
                      std::optional<std::int64_t> shots, RandomStream& rng);

/// 2J * ceil(12 ell Delta / eps^2) * ceil(8 J ||alpha||_1^2 ln(16 J ||alpha||_1^2 / eps^2) / eps^2).
struct SampleComplexity {
  std::uint64_t iterations = 0;
  std::uint64_t shots_per_term = 0;
  std::uint64_t total = 0;
};
SampleComplexity sample_complexity(double epsilon, int num_parameters, double alpha_one_norm,
                                   double ell, double delta_bound);

struct TrainRecord {
  std::int64_t iteration = 0;
  RealVector theta;
  double f_analytic = 0.0;
  double grad_analytic_norm = 0.0;
  RealVector grad_estimate;
  /// Cumulative thermal-state preparations after this iteration's gradient.
  std::int64_t preparations_used = 0;
};

struct TrainResult {
  Hyperparameters hyper;
  bool delta_defaulted = false;
  /// Iterations actually run; below hyper.iterations the guarantee is void.
  std::int64_t iterations_run = 0;
  RealVector theta0;
  std::vector<TrainRecord> records;
  RealVector final_theta;
  /// Tr[H rho(theta_M)], exact.
  double final_energy = 0.0;
  /// Shot estimate of Tr[H rho(theta_M)].
  double final_energy_estimate = 0.0;
  std::int64_t final_measurement_shots = 0;
  /// min over m in [0, M] of Tr[H rho(theta_m)], exact.
  double min_trajectory_energy = 0.0;
  /// min over m in [0, M] of the exact gradient norm.
  double min_grad_norm = 0.0;
  /// Gradient preparations plus final-measurement shots.
  std::int64_t total_preparations = 0;
};

using RecordSink = std::function<void(const TrainRecord&)>;

/// Stochastic gradient descent theta_{m+1} = theta_m - eta * g(theta_m) with
/// g from qbge (or the exact gradient in analytic mode). The exact f and
/// ||grad f|| are recorded every iteration for diagnostics only.
/// Throws NumericalError if a parameter becomes non-finite.
TrainResult qbm_gse(const WeightedPauliSum& h, const Ansatz& ansatz, const TrainConfig& cfg,
                    const RecordSink& sink = {});

}  // namespace qbm
