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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbm/pauli.hpp"
#include "qbm/types.hpp"

namespace qbm {

/// Ordered list of Pauli generators G_j; parameter j multiplies G_j.
class Ansatz {
 public:
  explicit Ansatz(std::vector<PauliString> generators, int max_qubits = kDefaultMaxQubits);

  int num_qubits() const { return num_qubits_; }
  int size() const { return static_cast<int>(generators_.size()); }
  const std::vector<PauliString>& generators() const { return generators_; }
  const PauliString& generator(int j) const { return generators_.at(static_cast<std::size_t>(j)); }
  const ComplexMatrix& dense_generator(int j) const { return dense_.at(static_cast<std::size_t>(j)); }

  /// max_j ||G_j||; exactly 1 for Pauli generators.
  double max_generator_norm() const { return 1.0; }

 private:
  int num_qubits_ = 0;
  std::vector<PauliString> generators_;
  std::vector<ComplexMatrix> dense_;
};

/// One Pauli word per line, `#` comments; line order is parameter order.
Ansatz parse_ansatz(std::istream& in);
Ansatz load_ansatz(const std::filesystem::path& path);
std::string format_ansatz(const Ansatz& ansatz);

/// G(theta) = sum_j theta_j G_j.
ComplexMatrix build_generator(const Ansatz& ansatz, const RealVector& theta);

/// rho(theta) = exp(-G(theta)) / Z(theta), held together with the spectral
/// decomposition G = V diag(lambda) V^dagger it was built from.
class ThermalState {
 public:
  ThermalState(RealVector theta, ComplexMatrix generator, RealVector eigenvalues,
               ComplexMatrix eigenvectors);

  const RealVector& theta() const { return theta_; }
  const ComplexMatrix& generator() const { return generator_; }
  /// Ascending eigenvalues of G(theta).
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  /// Diagonal of rho in the eigenbasis, exp(-lambda_a) / Z.
  const RealVector& populations() const { return populations_; }
  double log_partition() const { return log_partition_; }
  const ComplexMatrix& rho() const { return rho_; }
  Eigen::Index dimension() const { return eigenvalues_.size(); }

  ComplexMatrix to_eigenbasis(const ComplexMatrix& x) const;
  ComplexMatrix from_eigenbasis(const ComplexMatrix& x) const;
  /// exp(-i G t).
  ComplexMatrix evolution(double t) const;

 private:
  RealVector theta_;
  ComplexMatrix generator_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
  RealVector populations_;
  double log_partition_ = 0.0;
  ComplexMatrix rho_;
};

/// Diagonalizes G(theta). The spectrum is shifted by its minimum before
/// exponentiation, so large ||theta|| neither overflows nor underflows Z.
/// Throws NumericalError if ||G V - V Lambda|| exceeds 1e-9 ||G||.
ThermalState thermal_state(const Ansatz& ansatz, const RealVector& theta);

/// f(theta) = Tr[H rho(theta)].
double objective(const WeightedPauliSum& h, const ThermalState& state);
double objective(const ComplexMatrix& h, const ThermalState& state);

/// tanh(w/2) / (w/2), the Fourier transform of the high-peak-tent density.
double filter_kernel(double omega);
double filter_kernel_derivative(double omega);

/// Phi_theta(x) = int dt p(t) exp(-iGt) x exp(iGt), evaluated exactly as the
/// spectral filter x_ab -> x_ab * kappa(lambda_a - lambda_b).
ComplexMatrix apply_phi(const ThermalState& state, const ComplexMatrix& x);

/// Directional derivative of Phi_theta(x) along G -> G + s * direction.
ComplexMatrix apply_phi_derivative(const ThermalState& state, const ComplexMatrix& direction,
                                   const ComplexMatrix& x);

/// d f / d theta_j = -1/2 Tr[{H, Phi(G_j)} rho] + <H><G_j>.
RealVector analytic_gradient(const WeightedPauliSum& h, const Ansatz& ansatz,
                             const ThermalState& state);
RealVector analytic_gradient(const ComplexMatrix& h, const Ansatz& ansatz,
                             const ThermalState& state);

enum class HessianMethod {
  kClosedForm,           ///< six-term expression, d_k Phi in the eigenbasis
  kGradientDifferences,  ///< central differences of analytic_gradient
};

RealMatrix analytic_hessian(const WeightedPauliSum& h, const Ansatz& ansatz,
                            const ThermalState& state,
                            HessianMethod method = HessianMethod::kClosedForm,
                            double step = 1e-4);

/// Lipschitz constant of grad f: 2 sqrt(2) J^(3/4) ||alpha||_1^(1/2) max_j ||G_j||.
double smoothness_constant(int num_parameters, double alpha_one_norm,
                           double max_generator_norm = 1.0);
double smoothness_constant(const Ansatz& ansatz, double alpha_one_norm);

}  // namespace qbm
