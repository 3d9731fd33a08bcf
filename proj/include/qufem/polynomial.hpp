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

#include <span>
#include <string>
#include <vector>

#include "qufem/types.hpp"

namespace qufem {

enum class PolyBasis { kMonomial, kChebyshev };

/// Multivariate polynomial with a dense coefficient tensor (axis 0 fastest),
/// the box it approximates a function on, and a sup-norm bound used as the
/// subnormalization of the induced diagonal operator.
struct PolySpec {
  int dims = 1;
  int degree = 0;
  PolyBasis basis = PolyBasis::kMonomial;
  std::vector<double> coeffs;   // size (degree+1)^dims
  double domain_lo = 0.0;       // per-axis box
  double domain_hi = 1.0;
  double sup_norm_bound = 1.0;

  double eval(std::span<const double> x) const;
  double eval1(double x) const;

  static PolySpec constant(double c, int dims = 1);
  static PolySpec monomial_1d(std::vector<double> coeffs, double lo, double hi, double sup);
  static PolySpec chebyshev_t(int k);  // T_k on [-1, 1]
  /// Parses {"basis": "...", "dims": d, "degree": D, "coeffs": [...],
  ///         "domain": [lo, hi], "sup_norm": s} from JSON text.
  static PolySpec from_json_text(const std::string& text);

  /// Estimates max |p| over the domain box by dense sampling.
  double scan_sup_norm(int samples_per_axis = 257) const;
};

double chebyshev_value(int k, double t);

}  // namespace qufem
