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

#include "qbm/thermal.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "qbm/sampling.hpp"
#include "test_support.hpp"

namespace qbm {
namespace {

Ansatz ansatz_of(std::initializer_list<const char*> words) {
  std::vector<PauliString> gens;
  for (const char* w : words) gens.push_back(parse_pauli(w));
  return Ansatz(gens);
}

WeightedPauliSum single(double c, const char* word) {
  return WeightedPauliSum({{c, parse_pauli(word)}});
}

RealVector vec(std::initializer_list<double> v) {
  RealVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double sech2(double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); }

TEST(Ansatz, TextFormat) {
  std::istringstream in("# generators\nZZ\n\nXI  # field\nIX\n");
  const Ansatz a = parse_ansatz(in);
  ASSERT_EQ(a.size(), 3);
  EXPECT_EQ(a.generator(1).to_string(), "XI");
  std::istringstream back(format_ansatz(a));
  EXPECT_EQ(parse_ansatz(back).generators(), a.generators());

  std::istringstream mixed("ZZ\nX\n");
  EXPECT_THROW(parse_ansatz(mixed), ConfigError);
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(parse_ansatz(empty), ConfigError);
}

TEST(BuildGenerator, Examples) {
  const Ansatz a = ansatz_of({"X", "Y"});
  EXPECT_TRUE(build_generator(a, vec({0.0, 0.0})).isZero());
  const ComplexMatrix expected = dense_matrix(parse_pauli("X")) + 2.0 * dense_matrix(parse_pauli("Y"));
  EXPECT_TRUE(build_generator(a, vec({1.0, 2.0})).isApprox(expected));
  EXPECT_THROW(build_generator(a, vec({1.0})), DimensionError);

  RandomStream rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing::random_instance(3, 2, 4, 2.0, rng);
    const ComplexMatrix g = build_generator(inst.ansatz, inst.theta);
    EXPECT_LT((g - g.adjoint()).norm(), 1e-12);
  }
}

TEST(ThermalState, MaximallyMixedAtZero) {
  const Ansatz a = ansatz_of({"ZZI", "XYZ"});
  const ThermalState s = thermal_state(a, RealVector::Zero(2));
  EXPECT_TRUE(s.rho().isApprox(ComplexMatrix::Identity(8, 8) / 8.0, 1e-14));
  EXPECT_NEAR(s.log_partition(), 3.0 * std::log(2.0), 1e-14);
}

TEST(ThermalState, SingleQubitClosedForm) {
  const ThermalState s = thermal_state(ansatz_of({"Z"}), vec({1.0}));
  const double e = std::exp(1.0);
  EXPECT_NEAR(s.rho()(0, 0).real(), (1.0 / e) / (1.0 / e + e), 1e-15);
  EXPECT_NEAR(s.rho()(1, 1).real(), e / (1.0 / e + e), 1e-15);
  EXPECT_NEAR(expectation(dense_matrix(parse_pauli("Z")), s.rho()), -std::tanh(1.0), 1e-15);
  EXPECT_NEAR(s.log_partition(), std::log(e + 1.0 / e), 1e-14);
}

TEST(ThermalState, LargeParameterDoesNotOverflow) {
  const ThermalState s = thermal_state(ansatz_of({"Z"}), vec({40.0}));
  const double z = expectation(dense_matrix(parse_pauli("Z")), s.rho());
  EXPECT_NEAR(z, -1.0, 1e-6);
  EXPECT_TRUE(std::isfinite(s.log_partition()));
  EXPECT_NEAR(s.log_partition(), 40.0, 1e-12);

  const ThermalState huge = thermal_state(ansatz_of({"ZZ", "XX"}), vec({800.0, -600.0}));
  EXPECT_TRUE(huge.rho().allFinite());
  EXPECT_NEAR(huge.rho().trace().real(), 1.0, 1e-12);
}

TEST(ThermalState, StateInvariantsAgainstSeriesOracle) {
  RandomStream rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_instance(2 + trial % 2, 2, 2 + trial % 3, 2.0, rng);
    const ThermalState s = thermal_state(inst.ansatz, inst.theta);
    const ComplexMatrix& rho = s.rho();
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
    EXPECT_LT((rho - rho.adjoint()).norm(), 1e-12);
    const RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(rho).eigenvalues();
    EXPECT_GE(ev.minCoeff(), -1e-14);
    const ComplexMatrix& g = s.generator();
    EXPECT_LE((rho * g - g * rho).norm(), 1e-9);
    EXPECT_LE((rho - testing::gibbs_by_series(g)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ThermalState, RejectsWrongLength) {
  EXPECT_THROW(thermal_state(ansatz_of({"Z"}), vec({1.0, 2.0})), DimensionError);
}

TEST(Objective, Examples) {
  const Ansatz a = ansatz_of({"XY", "ZZ"});
  const WeightedPauliSum h({{0.3, parse_pauli("XI")}, {-0.7, parse_pauli("YZ")}});
  EXPECT_NEAR(objective(h, thermal_state(a, RealVector::Zero(2))), 0.0, 1e-15);
  EXPECT_NEAR(objective(single(1.0, "Z"), thermal_state(ansatz_of({"Z"}), vec({0.5}))),
              -std::tanh(0.5), 1e-15);
  EXPECT_NEAR(objective(single(1.0, "Y"), thermal_state(ansatz_of({"X", "Y"}), vec({0.0, 0.0}))),
              0.0, 1e-15);
}

TEST(Objective, BoundedByOneNorm) {
  RandomStream rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::random_instance(2, 3, 3, 5.0, rng);
    EXPECT_LE(std::abs(objective(inst.h, thermal_state(inst.ansatz, inst.theta))),
              one_norm(inst.h) + 1e-12);
  }
}

TEST(FilterKernel, ClosedFormAndSeries) {
  EXPECT_DOUBLE_EQ(filter_kernel(0.0), 1.0);
  for (double w : {1e-13, 1e-9, 1e-6, 1e-4, 1e-3, 0.3, 2.0, 10.0, -7.5, 300.0}) {
    const double expected = std::tanh(w / 2.0) / (w / 2.0);
    EXPECT_NEAR(filter_kernel(w), expected, 1e-15 + 1e-13 * std::abs(expected)) << w;
  }
  // Derivative against a central difference away from the series branch.
  for (double w : {-3.0, 0.02, 0.5, 4.0}) {
    const double h = 1e-6;
    const double fd = (filter_kernel(w + h) - filter_kernel(w - h)) / (2 * h);
    EXPECT_NEAR(filter_kernel_derivative(w), fd, 1e-8) << w;
  }
  // Series branch against the analytic derivative written out in long double.
  for (double w : {1e-5, 3e-3, -8e-3}) {
    const long double x = w / 2.0L;
    const long double exact =
        (x / std::cosh(x) / std::cosh(x) - std::tanh(x)) / (2.0L * x * x);
    EXPECT_NEAR(filter_kernel_derivative(w), static_cast<double>(exact), 1e-12) << w;
  }
}

TEST(ApplyPhi, Examples) {
  const ThermalState s = thermal_state(ansatz_of({"Z"}), vec({1.0}));
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_LT((apply_phi(s, id) - id).norm(), 1e-14);
  EXPECT_LT((apply_phi(s, s.rho()) - s.rho()).norm(), 1e-14);
  const ComplexMatrix x = dense_matrix(parse_pauli("X"));
  EXPECT_LT((apply_phi(s, x) - std::tanh(1.0) * x).norm(), 1e-14);
}

TEST(ApplyPhi, MatchesTimeDomainAverage) {
  // Phi(x) = int p(t) e^{-iGt} x e^{iGt} dt evaluated entrywise in the
  // eigenbasis by quadrature of the density, not by the closed-form filter.
  RandomStream rng(4);
  const auto inst = testing::random_instance(2, 1, 3, 1.5, rng);
  const ThermalState s = thermal_state(inst.ansatz, inst.theta);
  const ComplexMatrix x = testing::random_hermitian(4, rng);
  const ComplexMatrix xe = s.to_eigenbasis(x);
  ComplexMatrix filtered(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      filtered(a, b) = xe(a, b) * fourier_oracle(s.eigenvalues()(a) - s.eigenvalues()(b));
    }
  }
  EXPECT_LT((apply_phi(s, x) - s.from_eigenbasis(filtered)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ApplyPhi, ChannelContract) {
  RandomStream rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_instance(2 + trial % 2, 1, 3, 2.0, rng);
    const ThermalState s = thermal_state(inst.ansatz, inst.theta);
    const ComplexMatrix x = testing::random_hermitian(static_cast<int>(s.dimension()), rng);
    const ComplexMatrix y = apply_phi(s, x);
    EXPECT_NEAR(std::abs(y.trace() - x.trace()), 0.0, 1e-9);
    EXPECT_LT((y - y.adjoint()).norm(), 1e-12);
    EXPECT_LE(testing::operator_norm(y), testing::operator_norm(x) + 1e-12);
    for (int j = 0; j < inst.ansatz.size(); ++j) {
      const ComplexMatrix& gj = inst.ansatz.dense_generator(j);
      EXPECT_NEAR(expectation(apply_phi(s, gj), s.rho()), expectation(gj, s.rho()), 1e-9);
    }
  }
}

TEST(ApplyPhiDerivative, MatchesFiniteDifference) {
  RandomStream rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const auto inst = testing::random_instance(2, 1, 3, 1.5, rng);
    const ThermalState s = thermal_state(inst.ansatz, inst.theta);
    const int k = trial % 3;
    const ComplexMatrix x = testing::random_hermitian(4, rng);
    const double h = 1e-5;
    RealVector plus = inst.theta, minus = inst.theta;
    plus(k) += h;
    minus(k) -= h;
    const ComplexMatrix fd = (apply_phi(thermal_state(inst.ansatz, plus), x) -
                              apply_phi(thermal_state(inst.ansatz, minus), x)) /
                             (2 * h);
    const ComplexMatrix exact = apply_phi_derivative(s, inst.ansatz.dense_generator(k), x);
    EXPECT_LT((exact - fd).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(ApplyPhiDerivative, DegenerateSpectrum) {
  // G = theta (ZI + IZ) has a doubly degenerate middle level.
  const Ansatz a = ansatz_of({"ZI", "IZ", "XX"});
  const RealVector theta = vec({0.7, 0.7, 0.0});
  const ThermalState s = thermal_state(a, theta);
  RandomStream rng(2);
  const ComplexMatrix x = testing::random_hermitian(4, rng);
  const double h = 1e-5;
  RealVector plus = theta, minus = theta;
  plus(2) += h;
  minus(2) -= h;
  const ComplexMatrix fd =
      (apply_phi(thermal_state(a, plus), x) - apply_phi(thermal_state(a, minus), x)) / (2 * h);
  EXPECT_LT((apply_phi_derivative(s, a.dense_generator(2), x) - fd).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(AnalyticGradient, CommutingClosedForm) {
  const ThermalState s = thermal_state(ansatz_of({"Z"}), vec({0.5}));
  const RealVector g = analytic_gradient(single(1.0, "Z"), ansatz_of({"Z"}), s);
  EXPECT_NEAR(g(0), -sech2(0.5), 1e-12);
  EXPECT_NEAR(g(0), -0.786448, 1e-6);
}

TEST(AnalyticGradient, MaximallyMixedReduction) {
  const Ansatz a = ansatz_of({"X", "Y"});
  const RealVector g = analytic_gradient(single(1.0, "Y"), a, thermal_state(a, RealVector::Zero(2)));
  EXPECT_NEAR(g(0), 0.0, 1e-15);
  EXPECT_NEAR(g(1), -1.0, 1e-15);
}

TEST(AnalyticGradient, DisjointSupportsVanish) {
  const Ansatz a = ansatz_of({"IX", "IZ"});
  const WeightedPauliSum h({{1.0, parse_pauli("ZI")}, {0.4, parse_pauli("XI")}});
  for (const RealVector& theta : {vec({0.0, 0.0}), vec({0.8, -1.1})}) {
    const RealVector g = analytic_gradient(h, a, thermal_state(a, theta));
    EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(AnalyticGradient, AgreesWithFiniteDifferences) {
  RandomStream rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const auto inst = testing::random_instance(n, 1 + trial % 4, 2 + trial % 3, 2.0, rng);
    const ComplexMatrix h = dense_matrix(inst.h);
    const ThermalState s = thermal_state(inst.ansatz, inst.theta);
    const RealVector g = analytic_gradient(inst.h, inst.ansatz, s);
    EXPECT_LE((g - testing::fd_gradient(h, inst.ansatz, inst.theta, 1e-5)).cwiseAbs().maxCoeff(),
              1e-6);
    EXPECT_LE(g.cwiseAbs().maxCoeff(), 2.0 * one_norm(inst.h));
    EXPECT_LT((g - analytic_gradient(h, inst.ansatz, s)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(AnalyticHessian, CommutingClosedForm) {
  const Ansatz a = ansatz_of({"Z"});
  const ThermalState s = thermal_state(a, vec({0.5}));
  const RealMatrix hess = analytic_hessian(single(1.0, "Z"), a, s);
  EXPECT_NEAR(hess(0, 0), 2.0 * sech2(0.5) * std::tanh(0.5), 1e-12);
  EXPECT_NEAR(hess(0, 0), 0.726862, 1e-6);
}

TEST(AnalyticHessian, SymmetricAndMatchesGradientDifferences) {
  RandomStream rng(55);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    const auto inst = testing::random_instance(n, 2 + trial % 3, 2 + trial % 3, 2.0, rng);
    const ThermalState s = thermal_state(inst.ansatz, inst.theta);
    const RealMatrix hess = analytic_hessian(inst.h, inst.ansatz, s);
    EXPECT_LE((hess - hess.transpose()).cwiseAbs().maxCoeff(), 1e-6);
    const RealMatrix fd = testing::fd_hessian(inst.h, inst.ansatz, inst.theta, 1e-4);
    EXPECT_LE((hess - fd).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LE(hess.cwiseAbs().maxCoeff(), 8.0 * one_norm(inst.h));
    const RealMatrix alt =
        analytic_hessian(inst.h, inst.ansatz, s, HessianMethod::kGradientDifferences);
    EXPECT_LE((hess - alt).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_EQ(alt, alt.transpose());
  }
}

TEST(SmoothnessConstant, Examples) {
  EXPECT_NEAR(smoothness_constant(1, 1.0), 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(smoothness_constant(2, 1.0), 4.756828, 1e-6);
  EXPECT_DOUBLE_EQ(smoothness_constant(16, 1.0) / smoothness_constant(1, 1.0), 8.0);
  EXPECT_NEAR(smoothness_constant(3, 4.0), 2.0 * smoothness_constant(3, 1.0), 1e-14);
  EXPECT_DOUBLE_EQ(smoothness_constant(ansatz_of({"ZZ", "XI"}), 1.0), smoothness_constant(2, 1.0));
  EXPECT_THROW(smoothness_constant(0, 1.0), ConfigError);
}

TEST(NonConvexity, MidpointViolationOnLandscapeInstance) {
  const Ansatz a = ansatz_of({"X", "Y"});
  const WeightedPauliSum h = single(1.0, "Y");
  const int n = 41;
  auto coord = [](int i) { return -2.0 + 4.0 * i / 40.0; };
  std::vector<double> f(n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) f[i * n + k] = objective(h, thermal_state(a, vec({coord(i), coord(k)})));
  }
  double worst = -1.0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int i2 = i1 % 2; i2 < n; i2 += 2)
        for (int k2 = k1 % 2; k2 < n; k2 += 2) {
          const double mid = f[((i1 + i2) / 2) * n + (k1 + k2) / 2];
          worst = std::max(worst, mid - 0.5 * (f[i1 * n + k1] + f[i2 * n + k2]));
        }
  EXPECT_GE(worst, 1e-3);
}

}  // namespace
}  // namespace qbm
