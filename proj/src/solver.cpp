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

#include "qufem/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SparseLU>
#include <json.hpp>

#include "qufem/elements.hpp"

namespace qufem {

PDECoefficients PDECoefficients::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PDECoefficients c;
  const auto read = [&](const char* key, PolySpec& out) {
    if (!j.contains(key)) return;
    if (j[key].is_number()) {
      out = PolySpec::constant(j[key].get<double>());
    } else {
      out = PolySpec::from_json_text(j[key].dump());
    }
  };
  read("diffusivity", c.diffusivity);
  read("reaction", c.reaction);
  read("body_force", c.body_force);
  read("neumann", c.neumann_flux);
  read("dirichlet", c.dirichlet);
  if (j.contains("dirichlet_values"))
    for (const auto& entry : j["dirichlet_values"])
      c.dirichlet_values.emplace_back(entry[0].get<BasisIndex>(), entry[1].get<double>());
  c.validate();
  return c;
}

void PDECoefficients::validate() const {
  const int samples = 65;
  double dmin = std::numeric_limits<double>::infinity();
  std::vector<double> x(diffusivity.dims);
  std::size_t points = 1;
  for (int a = 0; a < diffusivity.dims; ++a) points *= samples;
  for (std::size_t pt = 0; pt < points; ++pt) {
    std::size_t rem = pt;
    for (int a = 0; a < diffusivity.dims; ++a) {
      x[a] = diffusivity.domain_lo +
             (diffusivity.domain_hi - diffusivity.domain_lo) * (rem % samples) / (samples - 1.0);
      rem /= samples;
    }
    dmin = std::min(dmin, diffusivity.eval(x));
  }
  if (dmin <= 0.0)
    throw std::invalid_argument("PDECoefficients: diffusivity must stay positive on the domain");
}

namespace {

SpMatd realify(const Eigen::SparseMatrix<cplx>& m) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(m, k); it; ++it) {
      if (std::abs(it.value().imag()) > 1e-10)
        throw std::runtime_error("extract_system: unexpected imaginary part");
      if (it.value().real() != 0.0) trip.emplace_back(it.row(), it.col(), it.value().real());
    }
  SpMatd out(m.rows(), m.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

SpMatd extract_system(const AssembledArray& array) {
  return realify(extract_block_sparse(array.be));
}

SpMatd extract_system(const BlockSystem& system) {
  return realify(extract_block_sparse(system.be));
}

double smallest_singular_value(const SpMatd& m) {
  if (m.rows() <= 600) {
    MatXd dense(m);
    Eigen::BDCSVD<MatXd> svd(dense);
    return svd.singularValues().tail(1)[0];
  }
  Eigen::SparseLU<SpMatd> lu(m);
  if (lu.info() != Eigen::Success) return 0.0;
  // Inverse power iteration for sigma_min (on m^T m through two solves).
  VecXd v = VecXd::Ones(m.rows()).normalized();
  double sigma = 0.0;
  for (int it = 0; it < 200; ++it) {
    VecXd w = lu.solve(v);
    w = lu.transpose().solve(w);
    const double nw = w.norm();
    if (nw == 0.0) break;
    v = w / nw;
    const double sigma_new = 1.0 / std::sqrt(nw);
    if (std::abs(sigma_new - sigma) < 1e-12 * sigma_new && it > 10) break;
    sigma = sigma_new;
  }
  return sigma;
}

double condition_number(const SpMatd& m) {
  if (m.rows() <= 600) {
    MatXd dense(m);
    Eigen::BDCSVD<MatXd> svd(dense);
    const auto& s = svd.singularValues();
    return s[0] / s.tail(1)[0];
  }
  // Power iteration for sigma_max from a fixed, reproducible start vector.
  VecXd v(m.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::sin(static_cast<double>(i) + 1.0);
  v.normalize();
  double smax = 0.0;
  for (int it = 0; it < 200; ++it) {
    VecXd w = m.transpose() * (m * v);
    const double nw = w.norm();
    if (nw == 0.0) break;
    v = w / nw;
    smax = std::sqrt(nw);
  }
  const double smin = smallest_singular_value(m);
  return smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
}

SolveReport solve_qlsp(const SpMatd& system, const VecXd& rhs, double alpha, double beta_lower) {
  if (system.rows() != rhs.size()) throw std::invalid_argument("solve_qlsp: dimension mismatch");
  Eigen::SparseLU<SpMatd> lu(system);
  if (lu.info() != Eigen::Success) throw std::runtime_error("solve_qlsp: singular system");
  SolveReport r;
  r.u = lu.solve(rhs);
  r.residual = (system * r.u - rhs).norm();
  r.alpha = alpha;
  r.beta = beta_lower;
  const double f_norm = rhs.norm();
  if (f_norm > 0) {
    const VecXd x = lu.solve(rhs / f_norm);
    r.p_qlsp = std::pow(beta_lower / alpha, 2) * x.squaredNorm();
    r.u_norm = (alpha / beta_lower) * f_norm * std::sqrt(r.p_qlsp);
  }
  r.u_norm_direct = r.u.norm();
  r.kappa = condition_number(system);
  return r;
}

double observable(const PolySpec& r, const VecXd& u, int p, int n, int d) {
  const ElementalArrays arrays = elemental_arrays(p);
  const BasisIndex numel = (dim_of(n) - 1) / static_cast<BasisIndex>(p);
  const double h = 1.0 / static_cast<double>(numel);
  Connectivity conn{p + 1, numel, dim_of(n), p};
  // Physical 1D mass carries one factor of h; d dimensions carry h^d.
  SpMatd m1 = classical_assemble(conn, MatXd(h * arrays.me));
  SpMatd mass = m1;
  for (int a = 1; a < d; ++a) {
    SpMatd bigger(mass.rows() * m1.rows(), mass.cols() * m1.cols());
    std::vector<Eigen::Triplet<double>> trip;
    for (int k1 = 0; k1 < m1.outerSize(); ++k1)
      for (SpMatd::InnerIterator it1(m1, k1); it1; ++it1)
        for (int k0 = 0; k0 < mass.outerSize(); ++k0)
          for (SpMatd::InnerIterator it0(mass, k0); it0; ++it0)
            trip.emplace_back(it1.row() * mass.rows() + it0.row(),
                              it1.col() * mass.cols() + it0.col(), it1.value() * it0.value());
    bigger.setFromTriplets(trip.begin(), trip.end());
    mass = std::move(bigger);
  }
  const double nm1 = static_cast<double>(dim_of(n) - 1);
  VecXd rv(u.size());
  std::vector<double> x(d);
  for (BasisIndex v = 0; v < static_cast<BasisIndex>(u.size()); ++v) {
    BasisIndex rem = v;
    for (int a = 0; a < d; ++a) {
      x[a] = static_cast<double>(rem & (dim_of(n) - 1)) / nm1;
      rem >>= n;
    }
    rv[static_cast<Eigen::Index>(v)] = r.eval(x);
  }
  return rv.dot(mass * u);
}

}  // namespace qufem
