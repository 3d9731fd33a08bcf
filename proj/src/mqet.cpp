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

#include "qufem/mqet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qufem/qsp.hpp"

namespace qufem {

std::vector<double> chebyshev_tensor(const PolySpec& poly) {
  const int d = poly.dims;
  const int stride = poly.degree + 1;
  const int q = 2 * poly.degree + 1;  // Chebyshev-Gauss nodes per axis
  std::vector<double> nodes(q);
  for (int i = 0; i < q; ++i)
    nodes[i] = std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * q));

  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(stride);
  std::vector<double> coeff(total, 0.0);

  std::size_t points = 1;
  for (int a = 0; a < d; ++a) points *= static_cast<std::size_t>(q);
  std::vector<double> x(d), t(d);
  for (std::size_t pt = 0; pt < points; ++pt) {
    std::size_t rem = pt;
    for (int a = 0; a < d; ++a) {
      t[a] = nodes[rem % q];
      rem /= q;
      x[a] = poly.domain_lo + (poly.domain_hi - poly.domain_lo) * (t[a] + 1.0) / 2.0;
    }
    const double f = poly.eval(x);
    for (std::size_t flat = 0; flat < total; ++flat) {
      double w = f;
      std::size_t r = flat;
      for (int a = 0; a < d; ++a) {
        const int k = static_cast<int>(r % stride);
        r /= stride;
        w *= (k == 0 ? 1.0 : 2.0) * chebyshev_value(k, t[a]) / q;
      }
      coeff[flat] += w;
    }
  }
  return coeff;
}

namespace {

// Sup norm of a univariate Chebyshev expansion on [-1, 1] by dense sampling.
double cheb_sup(const std::vector<double>& c) {
  double best = 0.0;
  for (int i = 0; i <= 512; ++i) {
    const double t = -1.0 + 2.0 * i / 512.0;
    double v = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) v += c[k] * chebyshev_value(static_cast<int>(k), t);
    best = std::max(best, std::abs(v));
  }
  return best;
}

}  // namespace

MqetResult mqet_transform(const std::vector<BlockEncoding>& bes, const PolySpec& poly) {
  const int d = static_cast<int>(bes.size());
  if (d < 1) throw std::invalid_argument("mqet_transform: need at least one operator");
  if (poly.dims != d) throw std::invalid_argument("mqet_transform: arity mismatch");
  if (d == 1) {
    MqetResult r;
    r.be = poly_transform_diagonal(bes[0], poly);
    r.beta_one_norm = 1.0;
    return r;
  }
  for (const auto& be : bes)
    if (be.system_qubits != bes.front().system_qubits)
      throw std::invalid_argument("mqet_transform: operators must share the index space");

  const int stride = poly.degree + 1;
  // Decompose the sup-normalized polynomial so the projected pieces carry
  // O(1) coefficients; the sup norm is restored on the final encoding.
  std::vector<double> cheb = chebyshev_tensor(poly);
  for (double& c : cheb) c /= poly.sup_norm_bound;

  // Terms are indexed by the Chebyshev orders of the first d-1 axes; the last
  // axis carries the projected remainder polynomial Q_s.
  std::size_t num_terms = 1;
  for (int a = 0; a < d - 1; ++a) num_terms *= static_cast<std::size_t>(stride);

  const auto axis_cheb_spec = [&](int k) {
    PolySpec t = PolySpec::chebyshev_t(k);
    t.domain_lo = poly.domain_lo;  // mapped to [-1,1] inside eval
    t.domain_hi = poly.domain_hi;
    return t;
  };

  std::vector<BlockEncoding> terms;
  std::vector<double> beta;
  terms.reserve(num_terms);
  for (std::size_t s = 0; s < num_terms; ++s) {
    // Q_s as a Chebyshev expansion along the last axis.
    std::vector<double> qs(static_cast<std::size_t>(stride));
    for (int k = 0; k < stride; ++k)
      qs[static_cast<std::size_t>(k)] =
          cheb[s + static_cast<std::size_t>(k) * num_terms];
    const double qs_sup = cheb_sup(qs);
    if (qs_sup < 1e-15) continue;  // vanishing projection contributes nothing

    PolySpec q_spec;
    q_spec.dims = 1;
    q_spec.degree = poly.degree;
    q_spec.basis = PolyBasis::kChebyshev;
    q_spec.coeffs = qs;
    q_spec.domain_lo = poly.domain_lo;
    q_spec.domain_hi = poly.domain_hi;
    q_spec.sup_norm_bound = qs_sup;

    BlockEncoding term = poly_transform_diagonal(bes[static_cast<std::size_t>(d - 1)], q_spec);
    std::size_t rem = s;
    for (int a = 0; a < d - 1; ++a) {
      const int k = static_cast<int>(rem % stride);
      rem /= stride;
      term = be_product(term, poly_transform_diagonal(bes[static_cast<std::size_t>(a)],
                                                      axis_cheb_spec(k)));
    }
    beta.push_back(qs_sup);
    terms.push_back(std::move(term));
  }
  if (terms.empty()) {
    // Zero polynomial: encode the zero diagonal directly.
    MqetResult r;
    r.be = poly_transform_diagonal(bes[0], PolySpec::constant(0.0));
    r.beta_one_norm = 0.0;
    return r;
  }

  VecXc ones = VecXc::Ones(static_cast<Eigen::Index>(terms.size()));
  MqetResult r;
  r.be = be_lcu(terms, make_prep_pair(ones));
  r.be.alpha *= poly.sup_norm_bound;
  r.beta_one_norm = 0.0;
  for (double b : beta) r.beta_one_norm += b;
  return r;
}

}  // namespace qufem
