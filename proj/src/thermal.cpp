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
#include <fstream>
#include <sstream>

namespace qbm {

namespace {

void check_theta(const Ansatz& ansatz, const RealVector& theta) {
  if (theta.size() != ansatz.size()) {
    throw DimensionError("theta has " + std::to_string(theta.size()) + " entries, ansatz has " +
                         std::to_string(ansatz.size()) + " generators");
  }
  if (!theta.allFinite()) throw NumericalError("non-finite parameter vector");
}

void check_square(const ComplexMatrix& x, Eigen::Index dim, const char* what) {
  if (x.rows() != dim || x.cols() != dim) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                         std::to_string(dim) + ", got " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()));
  }
}

// Tr[a * b * diag(weights)].
Complex trace_with_diagonal(const ComplexMatrix& a, const ComplexMatrix& b,
                            const RealVector& weights) {
  Complex s{0.0, 0.0};
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    s += weights(r) * a.row(r).transpose().cwiseProduct(b.col(r)).sum();
  }
  return s;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

// First divided difference of the filter kernel, kappa[x1, x2].
double kernel_divided_difference(double x1, double x2) {
  if (std::abs(x1 - x2) <= 1e-5) return filter_kernel_derivative(0.5 * (x1 + x2));
  return (filter_kernel(x1) - filter_kernel(x2)) / (x1 - x2);
}

ComplexMatrix filter_in_eigenbasis(const RealVector& lambda, const ComplexMatrix& x_eigen) {
  ComplexMatrix out(x_eigen.rows(), x_eigen.cols());
  for (Eigen::Index b = 0; b < x_eigen.cols(); ++b) {
    for (Eigen::Index a = 0; a < x_eigen.rows(); ++a) {
      out(a, b) = x_eigen(a, b) * filter_kernel(lambda(a) - lambda(b));
    }
  }
  return out;
}

// Eigenbasis form of d Phi(x) along `direction`. The Duhamel u-integral and
// the t-average collapse to divided differences of kappa:
//   out_ab = sum_c D_ac x_cb kappa[l_a - l_b, l_c - l_b]
//          - x_ac D_cb kappa[l_a - l_c, l_a - l_b].
ComplexMatrix phi_derivative_in_eigenbasis(const RealVector& lambda,
                                           const ComplexMatrix& direction_eigen,
                                           const ComplexMatrix& x_eigen) {
  const Eigen::Index d = lambda.size();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    for (Eigen::Index a = 0; a < d; ++a) {
      Complex s{0.0, 0.0};
      for (Eigen::Index c = 0; c < d; ++c) {
        s += direction_eigen(a, c) * x_eigen(c, b) *
             kernel_divided_difference(lambda(a) - lambda(b), lambda(c) - lambda(b));
        s -= x_eigen(a, c) * direction_eigen(c, b) *
             kernel_divided_difference(lambda(a) - lambda(c), lambda(a) - lambda(b));
      }
      out(a, b) = s;
    }
  }
  return out;
}

double real_trace(const Complex& z) { return z.real(); }

}  // namespace

Ansatz::Ansatz(std::vector<PauliString> generators, int max_qubits)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw ConfigError("ansatz needs at least one generator");
  num_qubits_ = generators_.front().num_qubits();
  dense_.reserve(generators_.size());
  for (const auto& g : generators_) {
    if (g.num_qubits() != num_qubits_) {
      throw ConfigError("ansatz generator " + g.to_string() + " acts on " +
                        std::to_string(g.num_qubits()) + " qubits, expected " +
                        std::to_string(num_qubits_));
    }
    dense_.push_back(dense_matrix(g, max_qubits));
  }
}

Ansatz parse_ansatz(std::istream& in) {
  std::vector<PauliString> generators;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::strip_line(raw);
    if (line.empty()) continue;
    if (line.find_first_of(" \t") != std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected a single Pauli word");
    }
    try {
      generators.push_back(parse_pauli(line));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return Ansatz(std::move(generators));
}

Ansatz load_ansatz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open ansatz file " + path.string());
  try {
    return parse_ansatz(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string format_ansatz(const Ansatz& ansatz) {
  std::string out;
  for (const auto& g : ansatz.generators()) out += g.to_string() + '\n';
  return out;
}

ComplexMatrix build_generator(const Ansatz& ansatz, const RealVector& theta) {
  check_theta(ansatz, theta);
  const Eigen::Index dim = Eigen::Index{1} << ansatz.num_qubits();
  ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < ansatz.size(); ++j) g += theta(j) * ansatz.dense_generator(j);
  return g;
}

ThermalState::ThermalState(RealVector theta, ComplexMatrix generator, RealVector eigenvalues,
                           ComplexMatrix eigenvectors)
    : theta_(std::move(theta)),
      generator_(std::move(generator)),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {
  const double shift = eigenvalues_.minCoeff();
  RealVector weights = (-(eigenvalues_.array() - shift)).exp();
  const double total = weights.sum();
  populations_ = weights / total;
  log_partition_ = -shift + std::log(total);
  rho_ = eigenvectors_ * populations_.cast<Complex>().asDiagonal() * eigenvectors_.adjoint();
}

ComplexMatrix ThermalState::to_eigenbasis(const ComplexMatrix& x) const {
  check_square(x, dimension(), "to_eigenbasis");
  return eigenvectors_.adjoint() * x * eigenvectors_;
}

ComplexMatrix ThermalState::from_eigenbasis(const ComplexMatrix& x) const {
  check_square(x, dimension(), "from_eigenbasis");
  return eigenvectors_ * x * eigenvectors_.adjoint();
}

ComplexMatrix ThermalState::evolution(double t) const {
  ComplexVector phases(dimension());
  for (Eigen::Index a = 0; a < dimension(); ++a) {
    phases(a) = std::polar(1.0, -eigenvalues_(a) * t);
  }
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ThermalState thermal_state(const Ansatz& ansatz, const RealVector& theta) {
  ComplexMatrix g = build_generator(ansatz, theta);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(g);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of G(theta) failed");
  }
  const RealVector& lambda = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();
  const double g_norm = lambda.cwiseAbs().maxCoeff();
  const double residual = (g * v - v * lambda.cast<Complex>().asDiagonal()).norm();
  if (!std::isfinite(residual) || (residual > 0.0 && residual > 1e-9 * g_norm)) {
    throw NumericalError("eigendecomposition residual " + std::to_string(residual) +
                         " exceeds 1e-9 * ||G||");
  }
  return ThermalState(theta, std::move(g), lambda, v);
}

double objective(const ComplexMatrix& h, const ThermalState& state) {
  check_square(h, state.dimension(), "objective");
  return expectation(h, state.rho());
}

double objective(const WeightedPauliSum& h, const ThermalState& state) {
  return objective(dense_matrix(h), state);
}

double filter_kernel(double omega) {
  if (std::abs(omega) < 1e-4) {
    const double w2 = omega * omega;
    return 1.0 - w2 / 12.0 + w2 * w2 / 120.0;
  }
  const double half = 0.5 * omega;
  return std::tanh(half) / half;
}

double filter_kernel_derivative(double omega) {
  if (std::abs(omega) < 1e-2) {
    const double w2 = omega * omega;
    return omega * (-1.0 / 6.0 + w2 / 30.0 - 17.0 * w2 * w2 / 3360.0);
  }
  const double half = 0.5 * omega;
  const double sech = 1.0 / std::cosh(half);
  return sech * sech / omega - 2.0 * std::tanh(half) / (omega * omega);
}

ComplexMatrix apply_phi(const ThermalState& state, const ComplexMatrix& x) {
  check_square(x, state.dimension(), "apply_phi");
  return state.from_eigenbasis(filter_in_eigenbasis(state.eigenvalues(), state.to_eigenbasis(x)));
}

ComplexMatrix apply_phi_derivative(const ThermalState& state, const ComplexMatrix& direction,
                                   const ComplexMatrix& x) {
  check_square(direction, state.dimension(), "apply_phi_derivative");
  check_square(x, state.dimension(), "apply_phi_derivative");
  return state.from_eigenbasis(phi_derivative_in_eigenbasis(
      state.eigenvalues(), state.to_eigenbasis(direction), state.to_eigenbasis(x)));
}

RealVector analytic_gradient(const ComplexMatrix& h, const Ansatz& ansatz,
                             const ThermalState& state) {
  check_square(h, state.dimension(), "analytic_gradient");
  if (state.theta().size() != ansatz.size()) {
    throw DimensionError("analytic_gradient: state and ansatz disagree on parameter count");
  }
  const RealVector& pops = state.populations();
  const ComplexMatrix h_eigen = state.to_eigenbasis(h);
  const double h_mean = h_eigen.diagonal().real().dot(pops);

  RealVector grad(ansatz.size());
  for (int j = 0; j < ansatz.size(); ++j) {
    const ComplexMatrix g_eigen = state.to_eigenbasis(ansatz.dense_generator(j));
    const ComplexMatrix phi_g = filter_in_eigenbasis(state.eigenvalues(), g_eigen);
    // Tr[{H, Phi(G_j)} rho] = 2 Re Tr[H Phi(G_j) rho] for Hermitian operands.
    const double first = -real_trace(trace_with_diagonal(h_eigen, phi_g, pops));
    const double g_mean = g_eigen.diagonal().real().dot(pops);
    grad(j) = first + h_mean * g_mean;
  }
  return grad;
}

RealVector analytic_gradient(const WeightedPauliSum& h, const Ansatz& ansatz,
                             const ThermalState& state) {
  return analytic_gradient(dense_matrix(h), ansatz, state);
}

namespace {

RealMatrix closed_form_hessian(const ComplexMatrix& h, const Ansatz& ansatz,
                               const ThermalState& state) {
  const int num = ansatz.size();
  const RealVector& lambda = state.eigenvalues();
  const ComplexMatrix rho = state.populations().cast<Complex>().asDiagonal();
  const ComplexMatrix h_eigen = state.to_eigenbasis(h);
  const double h_mean = h_eigen.diagonal().real().dot(state.populations());

  std::vector<ComplexMatrix> g_eigen, phi_g;
  std::vector<double> g_mean;
  for (int j = 0; j < num; ++j) {
    g_eigen.push_back(state.to_eigenbasis(ansatz.dense_generator(j)));
    phi_g.push_back(filter_in_eigenbasis(lambda, g_eigen.back()));
    g_mean.push_back(g_eigen.back().diagonal().real().dot(state.populations()));
  }

  RealMatrix hess(num, num);
  for (int k = 0; k < num; ++k) {
    for (int j = 0; j < num; ++j) {
      const ComplexMatrix d_phi = phi_derivative_in_eigenbasis(lambda, g_eigen[k], g_eigen[j]);
      const ComplexMatrix h_phi_j = anticommutator(h_eigen, phi_g[j]);
      const double t1 = -0.5 * (anticommutator(h_eigen, d_phi) * rho).trace().real();
      const double t2 = 0.25 * (h_phi_j * anticommutator(rho, phi_g[k])).trace().real();
      const double t3 = -0.5 * (h_phi_j * rho).trace().real() * g_mean[k];
      const double t4 =
          -0.5 * (anticommutator(h_eigen, phi_g[k]) * rho).trace().real() * g_mean[j];
      const double t5 =
          -0.5 * (anticommutator(g_eigen[j], phi_g[k]) * rho).trace().real() * h_mean;
      const double t6 = 2.0 * h_mean * g_mean[k] * g_mean[j];
      hess(k, j) = t1 + t2 + t3 + t4 + t5 + t6;
    }
  }
  return hess;
}

RealMatrix gradient_difference_hessian(const ComplexMatrix& h, const Ansatz& ansatz,
                                       const RealVector& theta, double step) {
  const int num = ansatz.size();
  RealMatrix hess(num, num);
  for (int k = 0; k < num; ++k) {
    RealVector plus = theta, minus = theta;
    plus(k) += step;
    minus(k) -= step;
    const RealVector gp = analytic_gradient(h, ansatz, thermal_state(ansatz, plus));
    const RealVector gm = analytic_gradient(h, ansatz, thermal_state(ansatz, minus));
    hess.row(k) = ((gp - gm) / (2.0 * step)).transpose();
  }
  return 0.5 * (hess + hess.transpose());
}

}  // namespace

RealMatrix analytic_hessian(const WeightedPauliSum& h, const Ansatz& ansatz,
                            const ThermalState& state, HessianMethod method, double step) {
  const ComplexMatrix h_dense = dense_matrix(h);
  check_square(h_dense, state.dimension(), "analytic_hessian");
  if (state.theta().size() != ansatz.size()) {
    throw DimensionError("analytic_hessian: state and ansatz disagree on parameter count");
  }
  switch (method) {
    case HessianMethod::kClosedForm:
      return closed_form_hessian(h_dense, ansatz, state);
    case HessianMethod::kGradientDifferences:
      return gradient_difference_hessian(h_dense, ansatz, state.theta(), step);
  }
  throw ConfigError("unknown Hessian method");
}

double smoothness_constant(int num_parameters, double alpha_one_norm, double max_generator_norm) {
  if (num_parameters < 1) throw ConfigError("smoothness_constant: need at least one parameter");
  if (!(alpha_one_norm > 0.0)) throw ConfigError("smoothness_constant: ||alpha||_1 must be > 0");
  return 2.0 * std::sqrt(2.0) * std::pow(static_cast<double>(num_parameters), 0.75) *
         std::sqrt(alpha_one_norm) * max_generator_norm;
}

double smoothness_constant(const Ansatz& ansatz, double alpha_one_norm) {
  return smoothness_constant(ansatz.size(), alpha_one_norm, ansatz.max_generator_norm());
}

}  // namespace qbm
