// Copyright 2026 The qufem authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qufem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qufem {

std::pair<double, double> legendre_with_derivative(int g, double x) {
  double p0 = 1.0, p1 = x;
  if (g == 0) return {1.0, 0.0};
  for (int k = 2; k <= g; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  // P_G'(x) from the standard derivative identity.
  const double dp = g * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

QuadratureRule gauss_legendre(int g) {
  if (g < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  QuadratureRule rule;
  rule.order_g = g;
  rule.points.resize(g);
  rule.weights.resize(g);
  for (int k = 0; k < g; ++k) {
    // Chebyshev-based initial guess, refined by Newton iteration.
    double x = std::cos(std::numbers::pi * (k + 0.75) / (g + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre_with_derivative(g, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        dp = legendre_with_derivative(g, x).second;
        break;
      }
    }
    // Standard weights 2 / ((1 - x^2) P_G'(x)^2).
    rule.points[g - 1 - k] = x;
    rule.weights[g - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (g == 1) {
    rule.points[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

}  // namespace qufem
