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
#include <optional>
#include <vector>

#include "qbm/pauli.hpp"
#include "qbm/random.hpp"
#include "qbm/sampling.hpp"
#include "qbm/thermal.hpp"
#include "qbm/types.hpp"

namespace qbm {

/// ceil(2 ||alpha||_1^2 ln(2 / delta) / epsilon^2): shots for an epsilon-close
/// estimate with probability >= 1 - delta of a mean of [-||alpha||_1, ||alpha||_1]
/// variables.
std::int64_t hoeffding_shots(double alpha_one_norm, double epsilon, double delta);

struct EstimatorConfig {
  double epsilon1 = 0.1;
  double epsilon2 = 0.1;
  double delta1 = 0.1;
  double delta2 = 0.1;
  std::uint64_t seed = 0;
  /// Explicit shot counts that bypass the Hoeffding formula.
  std::optional<std::int64_t> shots_first;
  std::optional<std::int64_t> shots_second;

  std::int64_t first_term_shots(double alpha_one_norm) const;
  std::int64_t second_term_shots(double alpha_one_norm) const;
};

/// Sample mean of one shot-based estimator.
struct TermEstimate {
  double mean = 0.0;
  /// Per-shot variance (1/N normalization), never above ||alpha||_1^2.
  double sample_variance = 0.0;
  std::int64_t shots = 0;
  /// Thermal-state copies consumed.
  std::int64_t preparations = 0;

  double standard_error() const;
};

struct GradientEstimate {
  RealVector components;
  std::vector<std::int64_t> shots_first;
  std::vector<std::int64_t> shots_second;
  /// Estimated variance of each component: s1^2 / N1 + s2^2 / N2.
  RealVector sample_variance;
  std::int64_t preparations = 0;

  RealVector standard_error() const { return sample_variance.cwiseSqrt(); }
};

/// Probability of reading 0 on the control qubit of the Hadamard test that
/// interferes branches u0 and u1 on input rho:
/// (2 + Tr[(u1^dag u0 + u0^dag u1) rho]) / 4.
double hadamard_test_p0(const ComplexMatrix& u0, const ComplexMatrix& u1, const ComplexMatrix& rho);

struct UnitaryPair {
  ComplexMatrix u0;
  ComplexMatrix u1;
};

/// u0 = exp(-iGt), u1 = H_k exp(-iGt) G_j; the branches of the first-term circuit.
UnitaryPair conjugation_unitaries(const WeightedPauliSum& h, const Ansatz& ansatz,
                                  const ThermalState& state, int j, int k, double t);

/// Per-state tables shared by every shot at one parameter point: H_k and G_j
/// in the eigenbasis of G(theta) and their Pauli expectations.
class EstimatorContext {
 public:
  EstimatorContext(const WeightedPauliSum& h, const Ansatz& ansatz, const ThermalState& state);

  int num_parameters() const { return static_cast<int>(generator_means_.size()); }
  std::size_t num_terms() const { return term_means_.size(); }
  double alpha_one_norm() const { return alpha_one_norm_; }

  /// Hadamard-test p0 for the first-term circuit with term k, generator j and
  /// evolution time t. Matches hadamard_test_p0(conjugation_unitaries(...)).
  double first_term_p0(int j, std::size_t k, double t) const;

  /// First-term estimate: sample mean of ||alpha||_1 sign_k (-1)^(b+1) over shots, with
  /// k ~ alpha / ||alpha||_1, t ~ p(t) and b the Hadamard-test outcome.
  TermEstimate estimate_first_term(int j, std::int64_t shots, const HighPeakTentSampler& sampler,
                                   RandomStream& rng) const;

  /// Second-term estimate: sample mean of ||alpha||_1 sign_k h g with h, g the +/-1 outcomes of
  /// measuring H_k and G_j on two fresh copies of rho.
  TermEstimate estimate_second_term(int j, std::int64_t shots, RandomStream& rng) const;

 private:
  // Re Tr[G_j exp(iGt) H_k exp(-iGt) rho] = constant + sum_i c_i cos(w_i t) + s_i sin(w_i t).
  struct Oscillation {
    double omega, cos_weight, sin_weight;
  };
  struct InterferenceKernel {
    double constant = 0.0;
    std::vector<Oscillation> terms;
  };

  double alpha_one_norm_ = 0.0;
  std::vector<int> term_signs_;
  std::vector<double> term_means_;
  std::vector<double> generator_means_;
  TermSampler term_sampler_;
  // kernels_[j * K + k]
  std::vector<InterferenceKernel> kernels_;
};

TermEstimate estimate_first_term(const WeightedPauliSum& h, const Ansatz& ansatz,
                                 const ThermalState& state, int j, const EstimatorConfig& cfg,
                                 const HighPeakTentSampler& sampler, RandomStream& rng);

TermEstimate estimate_second_term(const WeightedPauliSum& h, const Ansatz& ansatz,
                                  const ThermalState& state, int j, const EstimatorConfig& cfg,
                                  RandomStream& rng);

/// Full stochastic gradient. Component j draws from the streams
/// derive_stream(cfg.seed, {iteration, j, 0}) and {iteration, j, 1}.
GradientEstimate qbge(const WeightedPauliSum& h, const Ansatz& ansatz, const ThermalState& state,
                      const EstimatorConfig& cfg, const HighPeakTentSampler& sampler,
                      std::uint64_t iteration = 0);

}  // namespace qbm
