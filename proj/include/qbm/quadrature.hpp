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

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "qbm/types.hpp"

namespace qbm {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

struct GaussKronrod15 {
  static constexpr std::array<double, 8> nodes = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0};
  static constexpr std::array<double, 8> kronrod_weights = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for nodes[1], nodes[3], nodes[5], nodes[7].
  static constexpr std::array<double, 4> gauss_weights = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod_panel(F& f, double a, double b) {
  using R = GaussKronrod15;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * R::kronrod_weights[7];
  double gauss = fc * R::gauss_weights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * R::nodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += R::kronrod_weights[i] * pair;
    if (i % 2 == 1) gauss += R::gauss_weights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Fixed 15-point Kronrod rule on [a, b]; no error control.
template <class F>
double kronrod15(F f, double a, double b) {
  return detail::kronrod_panel(f, a, b).value;
}

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Endpoints are never
/// evaluated, so integrable endpoint singularities are handled by bisection.
/// Throws NumericalError when the panel budget runs out above tolerance.
template <class F>
QuadratureResult integrate(F f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12, int max_panels = 100000) {
  std::priority_queue<detail::Panel> queue;
  auto first = detail::kronrod_panel(f, a, b);
  double value = first.value;
  double error = first.error;
  queue.push(first);
  int panels = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (panels >= max_panels) {
      throw NumericalError("adaptive quadrature did not converge: error estimate " +
                           std::to_string(error));
    }
    const auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::kronrod_panel(f, worst.a, mid);
    const auto right = detail::kronrod_panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0, err = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return {sum, err, panels};
}

}  // namespace qbm
