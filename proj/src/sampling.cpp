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

#include "qbm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qbm/quadrature.hpp"

namespace qbm {

namespace {

constexpr double kPi = std::numbers::pi;
// Oracles truncate the real line here; p(40) ~ 1e-55.
constexpr double kQuadratureCap = 40.0;

// Mass of p on (0, a] from the small-t expansion p(t) ~ (2/pi) ln(2 / (pi t)).
double small_t_mass(double a) { return (2.0 / kPi) * a * (std::log(2.0 / (kPi * a)) + 1.0); }

// Mass of the envelope (4/pi) exp(-pi t) on (t_max, infinity).
double tail_envelope_mass(double t_max) { return 4.0 / (kPi * kPi) * std::exp(-kPi * t_max); }

template <class F>
double half_line_integral(F f) {
  // The log singularity sits at the left end of the first piece.
  return integrate(f, 0.0, 1.0).value + integrate(f, 1.0, kQuadratureCap).value;
}

}  // namespace

double high_peak_tent_pdf(double t) {
  const double x = std::abs(t);
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  // ln coth(pi x / 2) = log1p(2 q / (1 - q)) with q = exp(-pi x).
  const double q = std::exp(-kPi * x);
  const double one_minus_q = -std::expm1(-kPi * x);
  return (2.0 / kPi) * std::log1p(2.0 * q / one_minus_q);
}

double fourier_oracle(double omega) {
  if (!(std::abs(omega) <= 100.0)) throw ConfigError("fourier_oracle: |omega| must be <= 100");
  // The sine part vanishes by symmetry.
  return 2.0 * half_line_integral(
                   [omega](double t) { return high_peak_tent_pdf(t) * std::cos(omega * t); });
}

double abs_t_mean_oracle() {
  return 2.0 * half_line_integral([](double t) { return t * high_peak_tent_pdf(t); });
}

double half_line_mass_oracle(double x) {
  if (x <= 0.0) return 0.0;
  auto p = [](double t) { return high_peak_tent_pdf(t); };
  if (x <= 1.0) return integrate(p, 0.0, x).value;
  return integrate(p, 0.0, 1.0).value + integrate(p, 1.0, std::min(x, kQuadratureCap)).value;
}

HighPeakTentSampler HighPeakTentSampler::build(double t_max, std::size_t grid_size) {
  if (!(t_max >= 10.0) || !std::isfinite(t_max)) {
    throw ConfigError("high-peak-tent sampler: t_max must be >= 10");
  }
  if (grid_size < 2048) throw ConfigError("high-peak-tent sampler: grid_size must be >= 2048");

  HighPeakTentSampler s;
  s.t_max_ = t_max;
  s.grid_.resize(grid_size);
  s.cdf_.resize(grid_size);

  // Geometric nodes from kFirstNode to t_max resolve the peak at the origin.
  const double log_ratio = std::log(t_max / kFirstNode) / static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    s.grid_[i] = kFirstNode * std::exp(log_ratio * static_cast<double>(i));
  }
  s.grid_.back() = t_max;

  auto p = [](double t) { return high_peak_tent_pdf(t); };
  s.cdf_[0] = small_t_mass(kFirstNode);
  for (std::size_t i = 1; i < grid_size; ++i) {
    s.cdf_[i] = s.cdf_[i - 1] + kronrod15(p, s.grid_[i - 1], s.grid_[i]);
  }
  s.tail_mass_ = tail_envelope_mass(t_max);
  return s;
}

double HighPeakTentSampler::half_line_mass(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= t_max_) return cdf_.back() + tail_mass_ * -std::expm1(-kPi * (x - t_max_));
  if (x <= grid_.front()) return cdf_.front() * x / grid_.front();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(grid_.begin(), grid_.end(), x) - grid_.begin());
  const std::size_t lo = hi - 1;
  const double frac = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return cdf_[lo] + frac * (cdf_[hi] - cdf_[lo]);
}

double HighPeakTentSampler::inverse_half_line_mass(double mass) const {
  if (mass <= 0.0) return 0.0;
  if (mass >= cdf_.back()) {
    // Exponential tail: mass beyond t_max + s is tail_mass * exp(-pi s).
    const double remaining = std::min(mass - cdf_.back(), tail_mass_ * (1.0 - 1e-16));
    return t_max_ - std::log1p(-remaining / tail_mass_) / kPi;
  }
  if (mass <= cdf_.front()) return grid_.front() * mass / cdf_.front();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(cdf_.begin(), cdf_.end(), mass) - cdf_.begin());
  const std::size_t lo = hi - 1;
  const double frac = (mass - cdf_[lo]) / (cdf_[hi] - cdf_[lo]);
  return grid_[lo] + frac * (grid_[hi] - grid_[lo]);
}

double HighPeakTentSampler::sample(RandomStream& rng) const {
  const bool negative = (rng() >> 63) != 0;
  const double magnitude = inverse_half_line_mass(uniform01(rng) * (cdf_.back() + tail_mass_));
  return negative ? -magnitude : magnitude;
}

TermSampler::TermSampler(const RealVector& alpha) {
  if (alpha.size() == 0) throw ConfigError("term sampler: empty coefficient vector");
  cumulative_.reserve(static_cast<std::size_t>(alpha.size()));
  double total = 0.0;
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    if (!(alpha(k) > 0.0) || !std::isfinite(alpha(k))) {
      throw ConfigError("term sampler: coefficients must be finite and > 0");
    }
    total += alpha(k);
    cumulative_.push_back(total);
  }
}

std::size_t TermSampler::sample(RandomStream& rng) const {
  const double u = uniform01(rng) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

std::size_t sample_term_index(const RealVector& alpha, RandomStream& rng) {
  return TermSampler(alpha).sample(rng);
}

}  // namespace qbm
