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

#include "qufem/polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qufem {

double chebyshev_value(int k, double t) {
  if (k == 0) return 1.0;
  if (k == 1) return t;
  double a = 1.0, b = t;
  for (int i = 2; i <= k; ++i) {
    const double c = 2.0 * t * b - a;
    a = b;
    b = c;
  }
  return b;
}

double PolySpec::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dims) throw std::invalid_argument("PolySpec: arity mismatch");
  const int stride = degree + 1;
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(stride);
  if (coeffs.size() != total) throw std::invalid_argument("PolySpec: coefficient tensor size");
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    double term = coeffs[flat];
    if (term == 0.0) continue;
    std::size_t rem = flat;
    for (int d = 0; d < dims; ++d) {
      const int k = static_cast<int>(rem % stride);
      rem /= stride;
      if (basis == PolyBasis::kMonomial) {
        term *= std::pow(x[d], k);
      } else {
        // Chebyshev coefficients are over the box mapped to [-1, 1].
        const double t = domain_hi == domain_lo
                             ? 0.0
                             : 2.0 * (x[d] - domain_lo) / (domain_hi - domain_lo) - 1.0;
        term *= chebyshev_value(k, t);
      }
    }
    sum += term;
  }
  return sum;
}

double PolySpec::eval1(double x) const {
  const double xs[1] = {x};
  return eval(xs);
}

PolySpec PolySpec::constant(double c, int dims) {
  PolySpec p;
  p.dims = dims;
  p.degree = 0;
  p.coeffs = {c};
  p.sup_norm_bound = std::abs(c) > 0 ? std::abs(c) : 1.0;
  return p;
}

PolySpec PolySpec::monomial_1d(std::vector<double> coeffs, double lo, double hi, double sup) {
  PolySpec p;
  p.dims = 1;
  p.degree = static_cast<int>(coeffs.size()) - 1;
  p.coeffs = std::move(coeffs);
  p.domain_lo = lo;
  p.domain_hi = hi;
  p.sup_norm_bound = sup;
  return p;
}

PolySpec PolySpec::chebyshev_t(int k) {
  PolySpec p;
  p.dims = 1;
  p.degree = k;
  p.basis = PolyBasis::kChebyshev;
  p.coeffs.assign(static_cast<std::size_t>(k) + 1, 0.0);
  p.coeffs.back() = 1.0;
  p.domain_lo = -1.0;
  p.domain_hi = 1.0;
  p.sup_norm_bound = 1.0;
  return p;
}

PolySpec PolySpec::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PolySpec p;
  p.dims = j.value("dims", 1);
  p.degree = j.at("degree").get<int>();
  const std::string basis = j.value("basis", std::string("monomial"));
  if (basis == "monomial")
    p.basis = PolyBasis::kMonomial;
  else if (basis == "chebyshev")
    p.basis = PolyBasis::kChebyshev;
  else
    throw std::invalid_argument("PolySpec: unknown basis " + basis);
  p.coeffs = j.at("coeffs").get<std::vector<double>>();
  if (j.contains("domain")) {
    p.domain_lo = j["domain"][0].get<double>();
    p.domain_hi = j["domain"][1].get<double>();
  }
  p.sup_norm_bound = j.value("sup_norm", 1.0);
  return p;
}

double PolySpec::scan_sup_norm(int samples_per_axis) const {
  if (dims > 2) throw std::invalid_argument("scan_sup_norm: supports up to 2 variables");
  double best = 0.0;
  if (dims == 1) {
    for (int i = 0; i < samples_per_axis; ++i) {
      const double x = domain_lo + (domain_hi - domain_lo) * i / (samples_per_axis - 1.0);
      best = std::max(best, std::abs(eval1(x)));
    }
  } else {
    for (int i = 0; i < samples_per_axis; ++i)
      for (int k = 0; k < samples_per_axis; ++k) {
        const double xs[2] = {domain_lo + (domain_hi - domain_lo) * i / (samples_per_axis - 1.0),
                              domain_lo + (domain_hi - domain_lo) * k / (samples_per_axis - 1.0)};
        best = std::max(best, std::abs(eval(xs)));
      }
  }
  return best;
}

}  // namespace qufem
