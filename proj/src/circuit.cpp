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

#include "qbm/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qbm {

namespace {

void check_unitary(const ComplexMatrix& u, const char* name) {
  if (u.rows() != u.cols()) throw DimensionError(std::string(name) + " is not square");
  const double defect =
      (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    throw ConfigError(std::string(name) + " is not unitary (defect " + std::to_string(defect) +
                      ")");
  }
}

// Maps a raw outcome probability into [0, 1]; anything further than 1e-9
// outside is a numerical fault rather than rounding.
double clamp_probability(double p) {
  if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
    throw NumericalError("Hadamard-test probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

void check_index(int j, int size, const char* what) {
  if (j < 0 || j >= size) {
    throw ConfigError(std::string(what) + " index " + std::to_string(j) + " out of range [0, " +
                      std::to_string(size) + ")");
  }
}

// Mean and 1/N variance of N draws of scale * (+/-1) with the given signed sum.
TermEstimate summarize(std::int64_t signed_sum, std::int64_t shots, double scale,
                       std::int64_t preparations) {
  TermEstimate e;
  const double mean_sign = static_cast<double>(signed_sum) / static_cast<double>(shots);
  e.mean = scale * mean_sign;
  e.sample_variance = scale * scale * std::max(0.0, 1.0 - mean_sign * mean_sign);
  e.shots = shots;
  e.preparations = preparations;
  return e;
}

}  // namespace

std::int64_t hoeffding_shots(double alpha_one_norm, double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw ConfigError("Hoeffding shots: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("Hoeffding shots: delta must be in (0, 1)");
  if (!(alpha_one_norm > 0.0)) throw ConfigError("Hoeffding shots: ||alpha||_1 must be > 0");
  const double n =
      std::ceil(2.0 * alpha_one_norm * alpha_one_norm * std::log(2.0 / delta) / (epsilon * epsilon));
  if (!(n < 9.0e18)) throw ConfigError("Hoeffding shot count overflows a 64-bit counter");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

std::int64_t EstimatorConfig::first_term_shots(double alpha_one_norm) const {
  if (shots_first) {
    if (*shots_first < 1) throw ConfigError("first-term shot override must be >= 1");
    return *shots_first;
  }
  return hoeffding_shots(alpha_one_norm, epsilon1, delta1);
}

std::int64_t EstimatorConfig::second_term_shots(double alpha_one_norm) const {
  if (shots_second) {
    if (*shots_second < 1) throw ConfigError("second-term shot override must be >= 1");
    return *shots_second;
  }
  return hoeffding_shots(alpha_one_norm, epsilon2, delta2);
}

double TermEstimate::standard_error() const {
  return shots > 0 ? std::sqrt(sample_variance / static_cast<double>(shots)) : 0.0;
}

double hadamard_test_p0(const ComplexMatrix& u0, const ComplexMatrix& u1, const ComplexMatrix& rho) {
  if (u0.rows() != u1.rows() || u0.cols() != u1.cols() || u0.rows() != rho.rows() ||
      rho.rows() != rho.cols()) {
    throw DimensionError("hadamard_test_p0: operand dimensions disagree");
  }
  check_unitary(u0, "u0");
  check_unitary(u1, "u1");
  const ComplexMatrix m = u1.adjoint() * u0 + u0.adjoint() * u1;
  const double interference = (m * rho).trace().real();
  return clamp_probability((2.0 + interference) / 4.0);
}

UnitaryPair conjugation_unitaries(const WeightedPauliSum& h, const Ansatz& ansatz,
                                  const ThermalState& state, int j, int k, double t) {
  check_index(j, ansatz.size(), "generator");
  check_index(k, static_cast<int>(h.size()), "Hamiltonian term");
  if (h.num_qubits() != ansatz.num_qubits()) {
    throw DimensionError("Hamiltonian and ansatz act on different qubit counts");
  }
  ComplexMatrix u0 = state.evolution(t);
  ComplexMatrix u1 = dense_matrix(h.term(static_cast<std::size_t>(k)).string) * u0 *
                     ansatz.dense_generator(j);
  return {std::move(u0), std::move(u1)};
}

EstimatorContext::EstimatorContext(const WeightedPauliSum& h, const Ansatz& ansatz,
                                   const ThermalState& state)
    : alpha_one_norm_(one_norm(h)), term_sampler_(h.coefficients()) {
  if (h.num_qubits() != ansatz.num_qubits()) {
    throw DimensionError("Hamiltonian and ansatz act on different qubit counts");
  }
  if (state.theta().size() != ansatz.size()) {
    throw DimensionError("thermal state and ansatz disagree on parameter count");
  }
  const RealVector& pops = state.populations();
  const RealVector& lambda = state.eigenvalues();
  const Eigen::Index d = state.dimension();
  const std::size_t num_terms = h.size();

  std::vector<ComplexMatrix> terms_eigen;
  for (const auto& term : h.terms()) {
    terms_eigen.push_back(state.to_eigenbasis(dense_matrix(term.string)));
    term_signs_.push_back(term.sign);
    term_means_.push_back(terms_eigen.back().diagonal().real().dot(pops));
  }

  kernels_.resize(static_cast<std::size_t>(ansatz.size()) * num_terms);
  for (int j = 0; j < ansatz.size(); ++j) {
    const ComplexMatrix g = state.to_eigenbasis(ansatz.dense_generator(j));
    generator_means_.push_back(g.diagonal().real().dot(pops));
    for (std::size_t k = 0; k < num_terms; ++k) {
      const ComplexMatrix& hk = terms_eigen[k];
      // W_ab = G_ab H_ba pi_a; the kernel is Re sum_ab W_ab exp(-i (l_a - l_b) t).
      auto weight = [&](Eigen::Index a, Eigen::Index b) { return g(a, b) * hk(b, a) * pops(a); };
      InterferenceKernel& kernel = kernels_[static_cast<std::size_t>(j) * num_terms + k];
      for (Eigen::Index a = 0; a < d; ++a) {
        kernel.constant += weight(a, a).real();
        for (Eigen::Index b = a + 1; b < d; ++b) {
          const Complex wab = weight(a, b);
          const Complex wba = weight(b, a);
          const double c = wab.real() + wba.real();
          const double s = wab.imag() - wba.imag();
          const double omega = lambda(a) - lambda(b);
          if (std::abs(omega) < 1e-14) {
            kernel.constant += c;
          } else if (std::abs(c) + std::abs(s) > 1e-16) {
            kernel.terms.push_back({omega, c, s});
          }
        }
      }
    }
  }
}

double EstimatorContext::first_term_p0(int j, std::size_t k, double t) const {
  check_index(j, num_parameters(), "generator");
  if (k >= num_terms()) throw ConfigError("Hamiltonian term index out of range");
  const InterferenceKernel& kernel = kernels_[static_cast<std::size_t>(j) * num_terms() + k];
  double value = kernel.constant;
  for (const auto& osc : kernel.terms) {
    const double phase = osc.omega * t;
    value += osc.cos_weight * std::cos(phase) + osc.sin_weight * std::sin(phase);
  }
  return clamp_probability(0.5 * (1.0 + value));
}

TermEstimate EstimatorContext::estimate_first_term(int j, std::int64_t shots,
                                                   const HighPeakTentSampler& sampler,
                                                   RandomStream& rng) const {
  check_index(j, num_parameters(), "generator");
  if (shots < 1) throw ConfigError("first-term estimator needs at least one shot");
  std::int64_t signed_sum = 0;
  for (std::int64_t n = 0; n < shots; ++n) {
    const std::size_t k = term_sampler_.sample(rng);
    const double t = sampler.sample(rng);
    const bool outcome_zero = bernoulli(rng, first_term_p0(j, k, t));
    // (-1)^(b + 1): b = 0 contributes -1.
    signed_sum += term_signs_[k] * (outcome_zero ? -1 : 1);
  }
  return summarize(signed_sum, shots, alpha_one_norm_, shots);
}

TermEstimate EstimatorContext::estimate_second_term(int j, std::int64_t shots,
                                                    RandomStream& rng) const {
  check_index(j, num_parameters(), "generator");
  if (shots < 1) throw ConfigError("second-term estimator needs at least one shot");
  const double g_plus = 0.5 * (1.0 + generator_means_[static_cast<std::size_t>(j)]);
  std::int64_t signed_sum = 0;
  for (std::int64_t n = 0; n < shots; ++n) {
    const std::size_t k = term_sampler_.sample(rng);
    // Outcome +1 is bit 0.
    const int h_outcome = bernoulli(rng, 0.5 * (1.0 + term_means_[k])) ? 1 : -1;
    const int g_outcome = bernoulli(rng, g_plus) ? 1 : -1;
    signed_sum += term_signs_[k] * h_outcome * g_outcome;
  }
  return summarize(signed_sum, shots, alpha_one_norm_, 2 * shots);
}

TermEstimate estimate_first_term(const WeightedPauliSum& h, const Ansatz& ansatz,
                                 const ThermalState& state, int j, const EstimatorConfig& cfg,
                                 const HighPeakTentSampler& sampler, RandomStream& rng) {
  const EstimatorContext ctx(h, ansatz, state);
  return ctx.estimate_first_term(j, cfg.first_term_shots(ctx.alpha_one_norm()), sampler, rng);
}

TermEstimate estimate_second_term(const WeightedPauliSum& h, const Ansatz& ansatz,
                                  const ThermalState& state, int j, const EstimatorConfig& cfg,
                                  RandomStream& rng) {
  const EstimatorContext ctx(h, ansatz, state);
  return ctx.estimate_second_term(j, cfg.second_term_shots(ctx.alpha_one_norm()), rng);
}

GradientEstimate qbge(const WeightedPauliSum& h, const Ansatz& ansatz, const ThermalState& state,
                      const EstimatorConfig& cfg, const HighPeakTentSampler& sampler,
                      std::uint64_t iteration) {
  const EstimatorContext ctx(h, ansatz, state);
  const std::int64_t n1 = cfg.first_term_shots(ctx.alpha_one_norm());
  const std::int64_t n2 = cfg.second_term_shots(ctx.alpha_one_norm());
  const int num = ansatz.size();

  GradientEstimate out;
  out.components.resize(num);
  out.sample_variance.resize(num);
  for (int j = 0; j < num; ++j) {
    const auto uj = static_cast<std::uint64_t>(j);
    RandomStream first_stream = derive_stream(cfg.seed, {iteration, uj, 0});
    RandomStream second_stream = derive_stream(cfg.seed, {iteration, uj, 1});
    const TermEstimate first = ctx.estimate_first_term(j, n1, sampler, first_stream);
    const TermEstimate second = ctx.estimate_second_term(j, n2, second_stream);
    out.components(j) = first.mean + second.mean;
    out.sample_variance(j) = first.sample_variance / static_cast<double>(first.shots) +
                             second.sample_variance / static_cast<double>(second.shots);
    out.shots_first.push_back(first.shots);
    out.shots_second.push_back(second.shots);
    out.preparations += first.preparations + second.preparations;
  }
  return out;
}

}  // namespace qbm
