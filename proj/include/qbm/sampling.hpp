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

#include <cstddef>
#include <vector>

#include "qbm/random.hpp"
#include "qbm/types.hpp"

namespace qbm {

/// p(t) = (2/pi) ln coth(pi |t| / 2). Even, integrable log singularity at the
/// origin (returns +infinity at t = 0), tails ~ (4/pi) exp(-pi |t|).
double high_peak_tent_pdf(double t);

/// Quadrature of int p(t) exp(-i omega t) dt over the real line, |omega| <= 100.
/// Test oracle for the closed-form filter kernel.
double fourier_oracle(double omega);

/// Quadrature of int |t| p(t) dt (about 0.2714).
double abs_t_mean_oracle();

/// Quadrature of int_0^x p(t) dt for x >= 0; the half line carries mass 1/2.
double half_line_mass_oracle(double x);

/// Inverse-CDF sampler for p(t). |t| is drawn from a CDF tabulated on a
/// geometric grid over (0, t_max] plus an exact exponential tail beyond t_max;
/// the sign is drawn separately.
class HighPeakTentSampler {
 public:
  static constexpr double kDefaultTMax = 15.0;
  static constexpr std::size_t kDefaultGridSize = 65536;
  static constexpr double kFirstNode = 1e-8;

  /// Requires t_max >= 10 and grid_size >= 2048; throws ConfigError otherwise.
  static HighPeakTentSampler build(double t_max = kDefaultTMax,
                                   std::size_t grid_size = kDefaultGridSize);

  const std::vector<double>& grid() const { return grid_; }
  /// cdf()[i] is the mass of p on (0, grid()[i]].
  const std::vector<double>& cdf() const { return cdf_; }
  double tail_mass() const { return tail_mass_; }
  double t_max() const { return t_max_; }

  /// Mass on (0, x] under the sampler's induced distribution of |t|.
  double half_line_mass(double x) const;

  /// Inverse of half_line_mass for mass in [0, cdf().back() + tail_mass()).
  double inverse_half_line_mass(double mass) const;

  double sample(RandomStream& rng) const;

 private:
  HighPeakTentSampler() = default;

  std::vector<double> grid_;
  std::vector<double> cdf_;
  double tail_mass_ = 0.0;
  double t_max_ = 0.0;
};

/// Draws index k with probability alpha_k / sum(alpha) by cumulative-sum
/// inversion.
class TermSampler {
 public:
  /// Throws ConfigError if alpha is empty or has a nonpositive entry.
  explicit TermSampler(const RealVector& alpha);

  std::size_t sample(RandomStream& rng) const;
  std::size_t size() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

std::size_t sample_term_index(const RealVector& alpha, RandomStream& rng);

}  // namespace qbm
