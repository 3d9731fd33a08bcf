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

#include "qufem/variable_assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "qufem/mqet.hpp"
#include "qufem/qsp.hpp"

namespace qufem {

namespace {

int auto_gauss_order(const PolySpec& f, int p) {
  const int integrand_degree = f.degree + 2 * p;
  int g = 1;
  while (2 * g - 1 < integrand_degree) ++g;
  return g;
}

double elemental_b_factor(ArrayKind kind, int p, double h, int d,
                          const std::vector<int>& j_nodes, const std::vector<int>& k_nodes,
                          const std::vector<double>& xi) {
  if (kind == ArrayKind::kMass) {
    double v = 1.0;
    for (int a = 0; a < d; ++a)
      v *= basis_eval(p, j_nodes[a], xi[a]) * basis_eval(p, k_nodes[a], xi[a]);
    return v;
  }
  // Gradient dot product; each 1D factor carries 1/h from the pull-back.
  double sum = 0.0;
  for (int ax = 0; ax < d; ++ax) {
    double v = 1.0;
    for (int a = 0; a < d; ++a) {
      if (a == ax)
        v *= basis_grad(p, j_nodes[a], xi[a]) * basis_grad(p, k_nodes[a], xi[a]) / (h * h);
      else
        v *= basis_eval(p, j_nodes[a], xi[a]) * basis_eval(p, k_nodes[a], xi[a]);
    }
    sum += v;
  }
  return sum;
}

std::vector<int> unflatten(std::size_t flat, int base, int d) {
  std::vector<int> out(d);
  for (int a = 0; a < d; ++a) {
    out[a] = static_cast<int>(flat % static_cast<std::size_t>(base));
    flat /= static_cast<std::size_t>(base);
  }
  return out;
}

}  // namespace

BlockEncoding gauss_point_position_be(int ell, const QuadratureRule& rule, int p, int n) {
  if (ell < 0 || ell >= rule.order_g)
    throw std::invalid_argument("gauss_point_position_be: point index out of range");
  const BasisIndex numel = (dim_of(n) - 1) / static_cast<BasisIndex>(p);
  const double h = 1.0 / static_cast<double>(numel);
  const double offset = (rule.points[ell] + 1.0) / 2.0;
  std::vector<BlockEncoding> terms;
  terms.push_back(be_identity(n));
  terms.push_back(position_be(n));
  VecXc y(2);
  y[0] = h * offset;
  y[1] = h;
  BlockEncoding affine = be_lcu(terms, make_prep_pair(y));
  return be_product(element_projector_be(n, p), affine);
}

BlockEncoding gauss_point_position_be_dim(int ell, const QuadratureRule& rule, int p, int n,
                                          int axis, int d) {
  if (axis < 0 || axis >= d) throw std::invalid_argument("gauss position: axis out of range");
  BlockEncoding be = (axis == d - 1) ? gauss_point_position_be(ell, rule, p, n)
                                     : element_projector_be(n, p);
  for (int a = d - 2; a >= 0; --a) {
    BlockEncoding factor =
        (a == axis) ? gauss_point_position_be(ell, rule, p, n) : element_projector_be(n, p);
    be = be_tensor(be, factor);
  }
  return be;
}

AssembledArray assemble_variable_coeff(const PolySpec& f, ArrayKind bilinear_kind, int p, int n,
                                       int g, int d) {
  if (f.dims != d) throw std::invalid_argument("assemble_variable_coeff: arity mismatch");
  if (g <= 0) g = auto_gauss_order(f, p);
  const QuadratureRule rule = gauss_legendre(g);
  const BasisIndex numel = (dim_of(n) - 1) / static_cast<BasisIndex>(p);
  const double h = 1.0 / static_cast<double>(numel);
  const int nen = p + 1;

  std::size_t num_gauss = 1, num_nodes = 1;
  for (int a = 0; a < d; ++a) {
    num_gauss *= static_cast<std::size_t>(g);
    num_nodes *= static_cast<std::size_t>(nen);
  }

  // f evaluated on the ell-th Gauss point of every element, per multi-index.
  std::vector<BlockEncoding> f_at_gauss;
  f_at_gauss.reserve(num_gauss);
  for (std::size_t lf = 0; lf < num_gauss; ++lf) {
    const std::vector<int> ell = unflatten(lf, g, d);
    if (d == 1) {
      f_at_gauss.push_back(poly_transform_diagonal(gauss_point_position_be(ell[0], rule, p, n), f));
    } else {
      std::vector<BlockEncoding> family;
      for (int a = 0; a < d; ++a)
        family.push_back(gauss_point_position_be_dim(ell[a], rule, p, n, a, d));
      f_at_gauss.push_back(mqet_transform(family, f).be);
    }
  }

  std::vector<BlockEncoding> indicators, indicators_adj;
  for (int j = 0; j < nen; ++j) {
    BlockEncoding one_d = indicator_be(n, p, j);
    indicators.push_back(one_d);
    indicators_adj.push_back(be_adjoint(one_d));
  }
  const auto indicator_dd = [&](const std::vector<int>& nodes, bool adj) {
    BlockEncoding be = adj ? indicators_adj[nodes[d - 1]] : indicators[nodes[d - 1]];
    for (int a = d - 2; a >= 0; --a)
      be = be_tensor(be, adj ? indicators_adj[nodes[a]] : indicators[nodes[a]]);
    return be;
  };

  std::vector<BlockEncoding> sandwiches;
  for (std::size_t jf = 0; jf < num_nodes; ++jf) {
    const std::vector<int> jn = unflatten(jf, nen, d);
    for (std::size_t kf = 0; kf < num_nodes; ++kf) {
      const std::vector<int> kn = unflatten(kf, nen, d);
      VecXc c(num_gauss);
      double c_abs = 0.0;
      for (std::size_t lf = 0; lf < num_gauss; ++lf) {
        const std::vector<int> ell = unflatten(lf, g, d);
        double w = 1.0;
        std::vector<double> xi(d);
        for (int a = 0; a < d; ++a) {
          w *= rule.elemental_weight(h, ell[a]);
          xi[a] = (rule.points[ell[a]] + 1.0) / 2.0;
        }
        c[static_cast<Eigen::Index>(lf)] = w * elemental_b_factor(bilinear_kind, p, h, d, jn, kn, xi);
        c_abs += std::abs(c[static_cast<Eigen::Index>(lf)]);
      }
      if (c_abs < 1e-300) continue;
      BlockEncoding middle = be_lcu(f_at_gauss, make_prep_pair(c));
      sandwiches.push_back(
          be_product(indicator_dd(jn, false), be_product(middle, indicator_dd(kn, true))));
    }
  }
  if (sandwiches.empty()) throw std::invalid_argument("assemble_variable_coeff: empty form");

  AssembledArray out;
  out.be = be_lcu(sandwiches, make_prep_pair(VecXc::Ones(static_cast<Eigen::Index>(sandwiches.size()))));
  out.alpha_analytic = out.be.alpha;
  out.kind = bilinear_kind;
  return out;
}

SpMatd classical_variable_assemble(const PolySpec& f, ArrayKind bilinear_kind, int p, int n,
                                   int g, int d) {
  if (f.dims != d) throw std::invalid_argument("classical_variable_assemble: arity mismatch");
  if (g <= 0) g = auto_gauss_order(f, p);
  const QuadratureRule rule = gauss_legendre(g);
  const BasisIndex numnp = dim_of(n);
  const BasisIndex numel = (numnp - 1) / static_cast<BasisIndex>(p);
  const double h = 1.0 / static_cast<double>(numel);
  const int nen = p + 1;

  std::size_t num_elems = 1, num_gauss = 1, num_nodes = 1;
  for (int a = 0; a < d; ++a) {
    num_elems *= static_cast<std::size_t>(numel);
    num_gauss *= static_cast<std::size_t>(g);
    num_nodes *= static_cast<std::size_t>(nen);
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n * d));
  std::vector<Eigen::Triplet<double>> trip;

  std::vector<int> ev(d);
  for (std::size_t ef = 0; ef < num_elems; ++ef) {
    std::size_t rem = ef;
    for (int a = 0; a < d; ++a) {
      ev[a] = static_cast<int>(rem % static_cast<std::size_t>(numel));
      rem /= static_cast<std::size_t>(numel);
    }
    for (std::size_t lf = 0; lf < num_gauss; ++lf) {
      const std::vector<int> ell = unflatten(lf, g, d);
      double w = 1.0;
      std::vector<double> xi(d), x(d);
      for (int a = 0; a < d; ++a) {
        w *= rule.elemental_weight(h, ell[a]);
        xi[a] = (rule.points[ell[a]] + 1.0) / 2.0;
        x[a] = rule.elemental_point(h, ev[a], ell[a]);
      }
      const double fv = f.eval(x);
      if (fv == 0.0) continue;
      for (std::size_t jf = 0; jf < num_nodes; ++jf) {
        const std::vector<int> jn = unflatten(jf, nen, d);
        for (std::size_t kf = 0; kf < num_nodes; ++kf) {
          const std::vector<int> kn = unflatten(kf, nen, d);
          const double b = elemental_b_factor(bilinear_kind, p, h, d, jn, kn, xi);
          if (b == 0.0) continue;
          BasisIndex row = 0, col = 0;
          for (int a = d - 1; a >= 0; --a) {
            row = row * numnp + (static_cast<BasisIndex>(ev[a]) * p + jn[a]);
            col = col * numnp + (static_cast<BasisIndex>(ev[a]) * p + kn[a]);
          }
          trip.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col),
                            w * b * fv);
        }
      }
    }
  }
  SpMatd out(dim, dim);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

ForceAssembly assemble_force_vector(const PolySpec& f, const DomainMask& mask, int p, int n,
                                    int d, int g) {
  if (f.dims != d) throw std::invalid_argument("assemble_force_vector: arity mismatch");
  if (mask.n() != n || mask.d() != d)
    throw std::invalid_argument("assemble_force_vector: mask does not match the grid");
  if (g <= 0) {
    const int integrand_degree = f.degree + p;
    g = 1;
    while (2 * g - 1 < integrand_degree) ++g;
  }
  const QuadratureRule rule = gauss_legendre(g);
  const BasisIndex numel = (dim_of(n) - 1) / static_cast<BasisIndex>(p);
  const double h = 1.0 / static_cast<double>(numel);
  const int nen = p + 1;

  std::size_t num_gauss = 1, num_nodes = 1;
  double grid_points = 1.0;
  for (int a = 0; a < d; ++a) {
    num_gauss *= static_cast<std::size_t>(g);
    num_nodes *= static_cast<std::size_t>(nen);
    grid_points *= static_cast<double>(dim_of(n));
  }

  std::vector<BlockEncoding> f_at_gauss;
  for (std::size_t lf = 0; lf < num_gauss; ++lf) {
    const std::vector<int> ell = unflatten(lf, g, d);
    if (d == 1) {
      f_at_gauss.push_back(poly_transform_diagonal(gauss_point_position_be(ell[0], rule, p, n), f));
    } else {
      std::vector<BlockEncoding> family;
      for (int a = 0; a < d; ++a)
        family.push_back(gauss_point_position_be_dim(ell[a], rule, p, n, a, d));
      f_at_gauss.push_back(mqet_transform(family, f).be);
    }
  }

  std::vector<BlockEncoding> indicators;
  for (int j = 0; j < nen; ++j) indicators.push_back(indicator_be(n, p, j));
  const auto indicator_dd = [&](const std::vector<int>& nodes) {
    BlockEncoding be = indicators[nodes[d - 1]];
    for (int a = d - 2; a >= 0; --a) be = be_tensor(be, indicators[nodes[a]]);
    return be;
  };

  ForceAssembly out;
  std::vector<BlockEncoding> sandwiches;
  for (std::size_t jf = 0; jf < num_nodes; ++jf) {
    const std::vector<int> jn = unflatten(jf, nen, d);
    VecXc c(num_gauss);
    double c_abs = 0.0;
    for (std::size_t lf = 0; lf < num_gauss; ++lf) {
      const std::vector<int> ell = unflatten(lf, g, d);
      double w = 1.0;
      for (int a = 0; a < d; ++a)
        w *= rule.elemental_weight(h, ell[a]) *
             basis_eval(p, jn[a], (rule.points[ell[a]] + 1.0) / 2.0);
      c[static_cast<Eigen::Index>(lf)] = w;
      c_abs += std::abs(w);
    }
    if (c_abs < 1e-300) continue;
    BlockEncoding middle = be_lcu(f_at_gauss, make_prep_pair(c));
    BlockEncoding ind = indicator_dd(jn);
    sandwiches.push_back(be_product(ind, be_product(middle, be_adjoint(ind))));
  }

  BlockEncoding force_op = be_lcu(
      sandwiches, make_prep_pair(VecXc::Ones(static_cast<Eigen::Index>(sandwiches.size()))));

  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n * d));
  VecXc uniform = VecXc::Constant(dim, cplx(1.0 / std::sqrt(grid_points), 0.0));
  PostselectResult ps = apply_postselected(force_op, uniform);

  out.zero_flagged = ps.zero_flagged;
  out.norm = force_op.alpha * ps.raw_norm * std::sqrt(grid_points);
  out.state = VecXd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) out.state[i] = ps.state[i].real();

  // Filling fraction of f on the nodal lattice.
  double mean_sq = 0.0;
  const double nm1 = static_cast<double>(dim_of(n) - 1);
  std::vector<double> x(d);
  for (BasisIndex v = 0; v < static_cast<BasisIndex>(dim); ++v) {
    BasisIndex rem = v;
    for (int a = 0; a < d; ++a) {
      x[a] = static_cast<double>(rem & (dim_of(n) - 1)) / nm1;
      rem >>= n;
    }
    const double fv = f.eval(x);
    mean_sq += fv * fv;
  }
  mean_sq /= grid_points;
  out.filling_fraction = std::sqrt(mean_sq) / f.sup_norm_bound;
  out.amplification_rounds =
      out.filling_fraction > 0.0
          ? static_cast<long long>(std::ceil(1.0 / out.filling_fraction))
          : 0;
  return out;
}

VecXd classical_force_vector(const PolySpec& f, int p, int n, int d, int g) {
  if (g <= 0) {
    const int integrand_degree = f.degree + p;
    g = 1;
    while (2 * g - 1 < integrand_degree) ++g;
  }
  const QuadratureRule rule = gauss_legendre(g);
  const BasisIndex numnp = dim_of(n);
  const BasisIndex numel = (numnp - 1) / static_cast<BasisIndex>(p);
  const double h = 1.0 / static_cast<double>(numel);
  const int nen = p + 1;

  std::size_t num_elems = 1, num_gauss = 1, num_nodes = 1;
  for (int a = 0; a < d; ++a) {
    num_elems *= static_cast<std::size_t>(numel);
    num_gauss *= static_cast<std::size_t>(g);
    num_nodes *= static_cast<std::size_t>(nen);
  }
  VecXd out = VecXd::Zero(static_cast<Eigen::Index>(dim_of(n * d)));
  std::vector<int> ev(d);
  for (std::size_t ef = 0; ef < num_elems; ++ef) {
    std::size_t rem = ef;
    for (int a = 0; a < d; ++a) {
      ev[a] = static_cast<int>(rem % static_cast<std::size_t>(numel));
      rem /= static_cast<std::size_t>(numel);
    }
    for (std::size_t lf = 0; lf < num_gauss; ++lf) {
      const std::vector<int> ell = unflatten(lf, g, d);
      double w = 1.0;
      std::vector<double> xi(d), x(d);
      for (int a = 0; a < d; ++a) {
        w *= rule.elemental_weight(h, ell[a]);
        xi[a] = (rule.points[ell[a]] + 1.0) / 2.0;
        x[a] = rule.elemental_point(h, ev[a], ell[a]);
      }
      const double fv = f.eval(x);
      if (fv == 0.0) continue;
      for (std::size_t jf = 0; jf < num_nodes; ++jf) {
        const std::vector<int> jn = unflatten(jf, nen, d);
        double basis = 1.0;
        BasisIndex node = 0;
        for (int a = d - 1; a >= 0; --a) {
          basis *= basis_eval(p, jn[a], xi[a]);
          node = node * numnp + (static_cast<BasisIndex>(ev[a]) * p + jn[a]);
        }
        out[static_cast<Eigen::Index>(node)] += w * fv * basis;
      }
    }
  }
  return out;
}

VecXd neumann_force_vector(const PolySpec& h_flux, const DomainMask& mask, int p, int g) {
  const int n = mask.n();
  const int d = mask.d();
  const BasisIndex numnp = dim_of(n);
  const BasisIndex numel = (numnp - 1) / static_cast<BasisIndex>(p);
  const double h = 1.0 / static_cast<double>(numel);
  const double nm1 = static_cast<double>(numnp - 1);
  VecXd out = VecXd::Zero(static_cast<Eigen::Index>(mask.grid_dim()));
  if (d == 1) {
    // Point flux h(x_b) N_j(x_b) collapses to the nodal value at each end.
    if (mask.neumann(0)) out[0] += h_flux.eval1(0.0);
    if (mask.neumann(numnp - 1)) out[static_cast<Eigen::Index>(numnp - 1)] += h_flux.eval1(1.0);
    return out;
  }
  if (d != 2) throw std::invalid_argument("neumann_force_vector: supports d <= 2");
  if (g <= 0) {
    const int integrand_degree = h_flux.degree + p;
    g = 1;
    while (2 * g - 1 < integrand_degree) ++g;
  }
  const QuadratureRule rule = gauss_legendre(g);
  // 1D assembly along each boundary face whose endpoints are all flagged.
  const auto edge_node = [&](int axis, BasisIndex fixed_coord, BasisIndex t) {
    return axis == 0 ? fixed_coord * numnp + t : t * numnp + fixed_coord;
  };
  for (int axis = 0; axis < 2; ++axis) {  // axis: coordinate that varies
    for (BasisIndex fixed_coord : {BasisIndex{0}, numnp - 1}) {
      for (BasisIndex e = 0; e < numel; ++e) {
        bool flagged = true;
        for (int j = 0; j <= p && flagged; ++j)
          flagged = mask.neumann(edge_node(axis, fixed_coord, e * p + j));
        if (!flagged) continue;
        for (int q = 0; q < rule.order_g; ++q) {
          const double w = rule.elemental_weight(h, q);
          const double xi = (rule.points[q] + 1.0) / 2.0;
          const double tcoord = rule.elemental_point(h, static_cast<int>(e), q);
          double x[2];
          x[axis] = tcoord;
          x[1 - axis] = static_cast<double>(fixed_coord) / nm1;
          const double fv = h_flux.eval(std::span<const double>(x, 2));
          for (int j = 0; j <= p; ++j)
            out[static_cast<Eigen::Index>(edge_node(axis, fixed_coord, e * p + j))] +=
                w * fv * basis_eval(p, j, xi);
        }
      }
    }
  }
  return out;
}

}  // namespace qufem
