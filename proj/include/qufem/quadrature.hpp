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

#pragma once

#include <vector>

#include "qufem/types.hpp"

namespace qufem {

/// Gauss-Legendre rule on (-1, 1): G points integrate polynomials of degree
/// up to 2G-1 exactly. Elemental maps rescale to [h*e, h*(e+1)].
struct QuadratureRule {
  int order_g = 0;
  std::vector<double> points;
  std::vector<double> weights;

  double elemental_point(double h, int element, int k) const {
    return h * ((points[k] + 1.0) / 2.0 + element);
  }
  double elemental_weight(double h, int k) const { return 0.5 * h * weights[k]; }
};

QuadratureRule gauss_legendre(int g);

/// Legendre polynomial value and derivative at x (normalized P_G(1) = 1).
std::pair<double, double> legendre_with_derivative(int g, double x);

}  // namespace qufem
