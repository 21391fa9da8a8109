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

#include "qbm/pauli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qbm {

PauliString::PauliString(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {}

bool PauliString::is_identity() const {
  for (auto a : axes_) {
    if (a != PauliAxis::I) return false;
  }
  return true;
}

std::string PauliString::to_string() const {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  out.reserve(axes_.size());
  for (auto a : axes_) out.push_back(kLetters[static_cast<int>(a)]);
  return out;
}

PauliString parse_pauli(std::string_view text) {
  if (text.empty()) throw ConfigError("empty Pauli word");
  std::vector<PauliAxis> axes;
  axes.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': axes.push_back(PauliAxis::I); break;
      case 'X': axes.push_back(PauliAxis::X); break;
      case 'Y': axes.push_back(PauliAxis::Y); break;
      case 'Z': axes.push_back(PauliAxis::Z); break;
      default:
        throw ConfigError("invalid axis letter '" + std::string(1, c) + "' in Pauli word \"" +
                          std::string(text) + "\"");
    }
  }
  return PauliString(std::move(axes));
}

ComplexMatrix dense_matrix(const PauliString& p, int max_qubits) {
  const int n = p.num_qubits();
  if (n > max_qubits) {
    throw DimensionError("Pauli string on " + std::to_string(n) +
                         " qubits exceeds the dense limit of " + std::to_string(max_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;

  // A Pauli string is a phased permutation: column c maps to row c ^ flip.
  Eigen::Index flip = 0;
  for (int q = 0; q < n; ++q) {
    const auto a = p.axis(q);
    if (a == PauliAxis::X || a == PauliAxis::Y) flip |= Eigen::Index{1} << (n - 1 - q);
  }

  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Complex phase{1.0, 0.0};
    for (int q = 0; q < n; ++q) {
      const bool bit = (col >> (n - 1 - q)) & 1;
      switch (p.axis(q)) {
        case PauliAxis::I:
        case PauliAxis::X:
          break;
        case PauliAxis::Y:
          phase *= bit ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
          break;
        case PauliAxis::Z:
          if (bit) phase = -phase;
          break;
      }
    }
    m(col ^ flip, col) = phase;
  }
  return m;
}

WeightedPauliSum::WeightedPauliSum(const std::vector<std::pair<double, PauliString>>& terms) {
  if (terms.empty()) throw ConfigError("Hamiltonian has no terms");
  num_qubits_ = terms.front().second.num_qubits();
  terms_.reserve(terms.size());
  for (const auto& [c, s] : terms) {
    if (s.num_qubits() != num_qubits_) {
      throw ConfigError("Hamiltonian term " + s.to_string() + " acts on " +
                        std::to_string(s.num_qubits()) + " qubits, expected " +
                        std::to_string(num_qubits_));
    }
    if (!std::isfinite(c) || c == 0.0) {
      throw ConfigError("Hamiltonian coefficient for " + s.to_string() +
                        " must be finite and nonzero");
    }
    terms_.push_back(PauliTerm{std::abs(c), c < 0.0 ? -1 : 1, s});
  }
}

RealVector WeightedPauliSum::coefficients() const {
  RealVector alpha(static_cast<Eigen::Index>(terms_.size()));
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    alpha(static_cast<Eigen::Index>(k)) = terms_[k].coefficient;
  }
  return alpha;
}

double one_norm(const WeightedPauliSum& h) {
  double s = 0.0;
  for (const auto& t : h.terms()) s += t.coefficient;
  return s;
}

ComplexMatrix dense_matrix(const WeightedPauliSum& h, int max_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
  if (h.num_qubits() > max_qubits) {
    throw DimensionError("Hamiltonian exceeds the dense qubit limit");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.signed_coefficient() * dense_matrix(t.string, max_qubits);
  return m;
}

double expectation(const ComplexMatrix& observable, const ComplexMatrix& state) {
  if (observable.rows() != observable.cols() || state.rows() != state.cols() ||
      observable.rows() != state.rows()) {
    throw DimensionError("expectation: observable is " + std::to_string(observable.rows()) + "x" +
                         std::to_string(observable.cols()) + ", state is " +
                         std::to_string(state.rows()) + "x" + std::to_string(state.cols()));
  }
  const Complex tr = observable.transpose().cwiseProduct(state).sum();
  if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real()))) {
    throw NumericalError("expectation: imaginary residual " + std::to_string(tr.imag()) +
                         " (non-Hermitian operand?)");
  }
  return tr.real();
}

namespace detail {

std::string_view strip_line(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = line.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = line.find_last_not_of(kSpace);
  return line.substr(first, last - first + 1);
}

}  // namespace detail

WeightedPauliSum parse_hamiltonian(std::istream& in) {
  std::vector<std::pair<double, PauliString>> terms;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::strip_line(raw);
    if (line.empty()) continue;
    std::istringstream fields{std::string(line)};
    std::string coeff_text, word, extra;
    if (!(fields >> coeff_text >> word) || (fields >> extra)) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected `<coefficient> <pauli-word>`");
    }
    double coeff = 0.0;
    const auto* end = coeff_text.data() + coeff_text.size();
    auto [ptr, ec] = std::from_chars(coeff_text.data(), end, coeff);
    if (ec != std::errc{} || ptr != end) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad coefficient \"" + coeff_text +
                        "\"");
    }
    try {
      terms.emplace_back(coeff, parse_pauli(word));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return WeightedPauliSum(terms);
}

WeightedPauliSum load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open Hamiltonian file " + path.string());
  try {
    return parse_hamiltonian(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string format_hamiltonian(const WeightedPauliSum& h) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& t : h.terms()) out << t.signed_coefficient() << ' ' << t.string.to_string() << '\n';
  return out.str();
}

}  // namespace qbm
