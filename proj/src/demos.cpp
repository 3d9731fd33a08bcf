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

#include "qufem/demos.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "qufem/elements.hpp"
#include "qufem/quadrature.hpp"
#include "qufem/variable_assembly.hpp"

namespace qufem {

namespace {

bool cell_active(const DomainMask& mask, BasisIndex cx, BasisIndex cy) {
  const BasisIndex side = mask.side();
  for (BasisIndex dy = 0; dy <= 1; ++dy)
    for (BasisIndex dx = 0; dx <= 1; ++dx)
      if (!mask.active((cy + dy) * side + (cx + dx))) return false;
  return true;
}

VecXd classical_fem_force(const DomainMask& mask, const PolySpec& f) {
  const BasisIndex side = mask.side();
  const BasisIndex numel = side - 1;
  const double h = 1.0 / static_cast<double>(numel);
  const int g = std::max(2, (f.degree + 1 + 1) / 2 + 1);
  const QuadratureRule rule = gauss_legendre(g);
  VecXd out = VecXd::Zero(static_cast<Eigen::Index>(mask.grid_dim()));
  for (BasisIndex cy = 0; cy < numel; ++cy)
    for (BasisIndex cx = 0; cx < numel; ++cx) {
      if (!cell_active(mask, cx, cy)) continue;
      for (int qy = 0; qy < g; ++qy)
        for (int qx = 0; qx < g; ++qx) {
          const double w =
              rule.elemental_weight(h, qx) * rule.elemental_weight(h, qy);
          const double xix = (rule.points[qx] + 1.0) / 2.0;
          const double xiy = (rule.points[qy] + 1.0) / 2.0;
          const double xs[2] = {rule.elemental_point(h, static_cast<int>(cx), qx),
                                rule.elemental_point(h, static_cast<int>(cy), qy)};
          const double fv = f.eval(xs);
          for (int jy = 0; jy <= 1; ++jy)
            for (int jx = 0; jx <= 1; ++jx) {
              const BasisIndex v = (cy + jy) * side + (cx + jx);
              out[static_cast<Eigen::Index>(v)] +=
                  w * fv * basis_eval(1, jx, xix) * basis_eval(1, jy, xiy);
            }
        }
    }
  return out;
}

double bilinear_at(const VecXd& u, int n, double x, double y) {
  const BasisIndex side = dim_of(n);
  const double h = 1.0 / static_cast<double>(side - 1);
  const double gx = x / h;
  const double gy = y / h;
  BasisIndex cx = static_cast<BasisIndex>(gx);
  BasisIndex cy = static_cast<BasisIndex>(gy);
  if (cx > side - 2) cx = side - 2;  // x = 1 falls into the last cell
  if (cy > side - 2) cy = side - 2;
  const double tx = gx - static_cast<double>(cx);
  const double ty = gy - static_cast<double>(cy);
  const auto at = [&](BasisIndex ix, BasisIndex iy) {
    return u[static_cast<Eigen::Index>(iy * side + ix)];
  };
  return (1 - tx) * (1 - ty) * at(cx, cy) + tx * (1 - ty) * at(cx + 1, cy) +
         (1 - tx) * ty * at(cx, cy + 1) + tx * ty * at(cx + 1, cy + 1);
}

// Function-space L2 error of the bilinear interpolant against a reference
// field, integrated cell by cell.
double l2_error_vs(const VecXd& u, int n, const std::function<double(double, double)>& exact) {
  const BasisIndex side = dim_of(n);
  const BasisIndex numel = side - 1;
  const double h = 1.0 / static_cast<double>(numel);
  const QuadratureRule rule = gauss_legendre(2);
  double err2 = 0.0;
  for (BasisIndex cy = 0; cy < numel; ++cy)
    for (BasisIndex cx = 0; cx < numel; ++cx)
      for (int qy = 0; qy < rule.order_g; ++qy)
        for (int qx = 0; qx < rule.order_g; ++qx) {
          const double w = rule.elemental_weight(h, qx) * rule.elemental_weight(h, qy);
          const double x = rule.elemental_point(h, static_cast<int>(cx), qx);
          const double y = rule.elemental_point(h, static_cast<int>(cy), qy);
          const double diff = bilinear_at(u, n, x, y) - exact(x, y);
          err2 += w * diff * diff;
        }
  return std::sqrt(err2);
}

DemoResult run_pipeline(int n, const PolySpec& f, const DomainMask& mask) {
  DemoResult result;
  result.mask = mask;
  result.n = n;

  // Quantum path: assembled stiffness, quadrature force, block constraints.
  GlobalArraysDd arrays = assemble_global_dd(2, 1, n);
  ForceAssembly force = assemble_force_vector(f, mask, 1, n, 2);
  VecXd f_vec = force.norm * force.state;
  VecXd ubar = VecXd::Zero(f_vec.size());
  BlockSystem sys = lagrange_system(arrays.stiffness.be, mask, ubar, f_vec);
  result.toffoli = sys.be.cost.toffoli;
  SpMatd block = extract_system(sys);
  const double beta = smallest_singular_value(block);
  result.report = solve_qlsp(block, sys.rhs, sys.be.alpha, beta);
  BlockSolution split = split_block_solution(result.report.u);
  result.report.u = split.u;
  result.report.lambda = split.lambda;

  // All-classical reference on the same mesh.
  VecXd f_classical = classical_fem_force(mask, f);
  result.u_classical = classical_fem_solve(mask, f_classical, ubar);

  const double scale = result.u_classical.cwiseAbs().maxCoeff();
  result.rel_max_err =
      (split.u - result.u_classical).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);

  for (BasisIndex v = 0; v < mask.grid_dim(); ++v) {
    const Eigen::Index i = static_cast<Eigen::Index>(v);
    if (mask.interior(v))
      result.lambda_interior_max = std::max(result.lambda_interior_max, std::abs(split.lambda[i]));
    else
      result.fixed_value_max_err =
          std::max(result.fixed_value_max_err, std::abs(split.u[i] - ubar[i]));
  }
  return result;
}

}  // namespace

SpMatd classical_fem_matrix(const DomainMask& mask) {
  const BasisIndex side = mask.side();
  const BasisIndex numel = side - 1;
  const ElementalArrays arrays = elemental_arrays(1);
  // In 2D the h factors cancel: each term carries h * (1/h).
  MatXd kcell = MatXd::Zero(4, 4);
  for (int j1 = 0; j1 < 2; ++j1)
    for (int j0 = 0; j0 < 2; ++j0)
      for (int k1 = 0; k1 < 2; ++k1)
        for (int k0 = 0; k0 < 2; ++k0)
          kcell(j1 * 2 + j0, k1 * 2 + k0) = arrays.ke(j1, k1) * arrays.me(j0, k0) +
                                            arrays.me(j1, k1) * arrays.ke(j0, k0);
  std::vector<Eigen::Triplet<double>> trip;
  for (BasisIndex cy = 0; cy < numel; ++cy)
    for (BasisIndex cx = 0; cx < numel; ++cx) {
      if (!cell_active(mask, cx, cy)) continue;
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const BasisIndex row = (cy + j / 2) * side + (cx + j % 2);
          const BasisIndex col = (cy + k / 2) * side + (cx + k % 2);
          if (mask.constrained(row)) continue;  // replaced by the pin below
          trip.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col),
                            kcell(j, k));
        }
    }
  for (BasisIndex v = 0; v < mask.grid_dim(); ++v)
    if (mask.constrained(v))
      trip.emplace_back(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v), 1.0);
  SpMatd out(static_cast<Eigen::Index>(mask.grid_dim()),
             static_cast<Eigen::Index>(mask.grid_dim()));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

VecXd classical_fem_solve(const DomainMask& mask, const VecXd& force, const VecXd& ubar) {
  SpMatd k = classical_fem_matrix(mask);
  VecXd rhs = force;
  for (BasisIndex v = 0; v < mask.grid_dim(); ++v)
    if (mask.constrained(v))
      rhs[static_cast<Eigen::Index>(v)] =
          ubar.size() > 0 ? ubar[static_cast<Eigen::Index>(v)] : 0.0;
  Eigen::SparseLU<SpMatd> lu(k);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("classical_fem_solve: singular system");
  return lu.solve(rhs);
}

DemoResult demo_poisson_cal(int n, const PolySpec& f, const DomainMask* mask) {
  DomainMask m = mask ? *mask : cal_mask();
  if (m.n() != n || m.d() != 2)
    throw std::invalid_argument("demo_poisson_cal: mask does not match the requested grid");
  return run_pipeline(n, f, m);
}

double duct_series_value(double x, double y, int terms) {
  double sum = 0.0;
  const double pi = std::numbers::pi;
  for (int a = 0; a < terms; ++a)
    for (int b = 0; b < terms; ++b) {
      const double mm = 2.0 * a + 1.0;
      const double nn = 2.0 * b + 1.0;
      sum += 16.0 / (std::pow(pi, 4) * mm * nn * (mm * mm + nn * nn)) * std::sin(mm * pi * x) *
             std::sin(nn * pi * y);
    }
  return sum;
}

DemoResult demo_square_duct(int n, double dpdx_over_mu) {
  const double c = -dpdx_over_mu;  // -lap u = -(1/mu) dp/dx
  PolySpec f2 = PolySpec::constant(c, 2);
  DomainMask mask = DomainMask::full_square(2, n);
  DemoResult result = run_pipeline(n, f2, mask);

  result.center_velocity = bilinear_at(result.report.u, n, 0.5, 0.5);
  result.flow_rate = observable(PolySpec::constant(1.0, 2), result.report.u, 1, n, 2);

  const auto exact = [&](double x, double y) { return c * duct_series_value(x, y); };
  result.l2_error_coarse = l2_error_vs(result.u_classical, n, exact);
  // Companion classical solve on the next refinement for the convergence rate.
  DomainMask fine_mask = DomainMask::full_square(2, n + 1);
  PolySpec one2 = PolySpec::constant(c, 2);
  VecXd fine_force = classical_fem_force(fine_mask, one2);
  VecXd fine_u = classical_fem_solve(fine_mask, fine_force, VecXd());
  result.l2_error_fine = l2_error_vs(fine_u, n + 1, exact);
  result.convergence_ratio =
      result.l2_error_fine > 0 ? result.l2_error_coarse / result.l2_error_fine : 0.0;
  return result;
}

void write_field_csv(const std::string& path, const VecXd& field, int n) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "x_index,y_index,value\n";
  out.precision(17);
  const BasisIndex side = dim_of(n);
  for (BasisIndex y = 0; y < side; ++y)
    for (BasisIndex x = 0; x < side; ++x)
      out << x << "," << y << "," << field[static_cast<Eigen::Index>(y * side + x)] << "\n";
}

void write_field_pgm(const std::string& path, const VecXd& field, int n) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const BasisIndex side = dim_of(n);
  const double lo = field.minCoeff(), hi = field.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  out << "P2\n" << side << " " << side << "\n255\n";
  for (BasisIndex r = 0; r < side; ++r) {
    const BasisIndex y = side - 1 - r;
    for (BasisIndex x = 0; x < side; ++x) {
      const int v = static_cast<int>(
          std::lround(255.0 * (field[static_cast<Eigen::Index>(y * side + x)] - lo) / span));
      out << v << (x + 1 < side ? ' ' : '\n');
    }
  }
}

void write_summary_json(const std::string& path, const DemoResult& result,
                        const std::string& name) {
  nlohmann::json j;
  j["demo"] = name;
  j["n"] = result.n;
  j["u_norm"] = result.report.u_norm;
  j["u_norm_direct"] = result.report.u_norm_direct;
  j["p_qlsp"] = result.report.p_qlsp;
  j["kappa"] = result.report.kappa;
  j["residual"] = result.report.residual;
  j["alpha"] = result.report.alpha;
  j["beta"] = result.report.beta;
  j["rel_max_err_vs_classical"] = result.rel_max_err;
  j["lambda_interior_max"] = result.lambda_interior_max;
  j["fixed_value_max_err"] = result.fixed_value_max_err;
  j["toffoli"] = result.toffoli;
  if (result.center_velocity != 0.0) {
    j["center_velocity"] = result.center_velocity;
    j["flow_rate"] = result.flow_rate;
    j["l2_error"] = result.l2_error_coarse;
    j["l2_error_next"] = result.l2_error_fine;
    j["convergence_ratio"] = result.convergence_ratio;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qufem
