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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbm/types.hpp"

namespace qbm {

enum class PauliAxis : std::uint8_t { I, X, Y, Z };

/// Tensor product of single-qubit Paulis. The leftmost axis acts on the most
/// significant bit of the computational-basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliAxis> axes);

  int num_qubits() const { return static_cast<int>(axes_.size()); }
  const std::vector<PauliAxis>& axes() const { return axes_; }
  PauliAxis axis(int qubit) const { return axes_.at(static_cast<std::size_t>(qubit)); }
  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<PauliAxis> axes_;
};

/// Parses an axis-letter word such as "XZIY". Throws ConfigError on empty
/// input or on letters outside {I, X, Y, Z}.
PauliString parse_pauli(std::string_view text);

/// Kronecker product of the single-qubit matrices, in qubit order.
ComplexMatrix dense_matrix(const PauliString& p, int max_qubits = kDefaultMaxQubits);

/// One term alpha * sign * P of a Hamiltonian. The coefficient is always
/// strictly positive; a negative input coefficient is stored as sign = -1.
struct PauliTerm {
  double coefficient = 0.0;
  int sign = 1;
  PauliString string;

  double signed_coefficient() const { return sign * coefficient; }
};

/// H = sum_k sign_k * alpha_k * P_k with alpha_k > 0.
class WeightedPauliSum {
 public:
  /// Builds from (signed coefficient, string) pairs. Zero coefficients and
  /// strings of unequal length are rejected with ConfigError.
  explicit WeightedPauliSum(const std::vector<std::pair<double, PauliString>>& terms);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const PauliTerm& term(std::size_t k) const { return terms_.at(k); }

  /// The positive coefficient vector alpha.
  RealVector coefficients() const;

 private:
  int num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// ||alpha||_1 = sum_k alpha_k. Upper-bounds the operator norm of H.
double one_norm(const WeightedPauliSum& h);

ComplexMatrix dense_matrix(const WeightedPauliSum& h, int max_qubits = kDefaultMaxQubits);

/// Tr[observable * state], real part. Throws DimensionError on shape mismatch
/// and NumericalError if the imaginary residual exceeds 1e-10.
double expectation(const ComplexMatrix& observable, const ComplexMatrix& state);

/// Hamiltonian text format: one `<coefficient> <pauli-word>` per line, `#`
/// starts a comment, blank lines are ignored.
WeightedPauliSum parse_hamiltonian(std::istream& in);
WeightedPauliSum load_hamiltonian(const std::filesystem::path& path);
std::string format_hamiltonian(const WeightedPauliSum& h);

namespace detail {
// Strips a trailing `#` comment and surrounding whitespace.
std::string_view strip_line(std::string_view line);
}  // namespace detail

}  // namespace qbm
