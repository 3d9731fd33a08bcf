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

#include "qufem/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qufem/gates.hpp"

namespace qufem {

VecXd extract_diagonal(const BlockEncoding& be) {
  const int n = be.system_qubits;
  const BasisIndex dim = dim_of(n);
  VecXd diag(static_cast<Eigen::Index>(dim));
  for (BasisIndex j = 0; j < dim; ++j) {
    SparseState s = SparseState::basis(n + be.ancillas, j);
    be.unitary.apply(s);
    cplx value(0.0, 0.0);
    for (const auto& [idx, v] : s.terms()) {
      if (idx >= dim) continue;
      if (idx != j && std::abs(v) * be.alpha > 1e-12)
        throw std::invalid_argument("extract_diagonal: encoded block is not diagonal");
      if (idx == j) value = v;
    }
    if (std::abs(value.imag()) * be.alpha > 1e-10)
      throw std::invalid_argument("extract_diagonal: encoded diagonal is not real");
    diag[static_cast<Eigen::Index>(j)] = be.alpha * value.real();
  }
  return diag;
}

BlockEncoding poly_transform_diagonal(const BlockEncoding& be, const PolySpec& poly) {
  const VecXd lambda = extract_diagonal(be);
  VecXc amps(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    double v = poly.eval1(lambda[i]) / poly.sup_norm_bound;
    if (std::abs(v) > 1.0 + 1e-9)
      throw std::invalid_argument("poly_transform_diagonal: polynomial exceeds its sup bound");
    amps[i] = std::clamp(v, -1.0, 1.0);
  }
  return BlockEncoding{Operator::amplitude_flag(std::move(amps)), poly.sup_norm_bound, 1, 0.0,
                       be.system_qubits, be.cost};
}

cplx qsp_unitary_entry(const VecXd& phases, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Eigen::Matrix2cd o;
  o << x, -s, s, x;
  const auto ez = [](double phi) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, phi);
    m(1, 1) = std::polar(1.0, -phi);
    return m;
  };
  Eigen::Matrix2cd u = ez(phases[0]);
  for (Eigen::Index j = 1; j < phases.size(); ++j) u = u * o * ez(phases[j]);
  return u(0, 0);
}

namespace {

void check_parity(const PolySpec& poly) {
  if (poly.dims != 1) throw std::invalid_argument("qsp_phases: univariate targets only");
  const int d = poly.degree;
  for (int k = 0; k <= d; ++k)
    if (poly.coeffs[static_cast<std::size_t>(k)] != 0.0 && (k % 2) != (d % 2))
      throw std::invalid_argument("qsp_phases: target must have definite parity");
}

// Phase-finding targets are polynomials in the signal variable on [-1, 1].
double target_on_signal_domain(const PolySpec& poly, double x) {
  double sum = 0.0;
  if (poly.basis == PolyBasis::kChebyshev) {
    for (int k = 0; k <= poly.degree; ++k)
      sum += poly.coeffs[static_cast<std::size_t>(k)] * chebyshev_value(k, x);
  } else {
    double xp = 1.0;
    for (int k = 0; k <= poly.degree; ++k) {
      sum += poly.coeffs[static_cast<std::size_t>(k)] * xp;
      xp *= x;
    }
  }
  return sum;
}

// Probabilistic Hermiticity probe: compares a handful of columns of U with
// the matching columns of its adjoint.
void require_hermitian_unitary(const BlockEncoding& be) {
  const int q = be.system_qubits + be.ancillas;
  const BasisIndex dim = dim_of(q);
  BasisIndex stride = dim / 8;
  if (stride == 0) stride = 1;
  for (BasisIndex j = 0; j < dim; j += stride) {
    SparseState a = SparseState::basis(q, j);
    SparseState b = SparseState::basis(q, j);
    be.unitary.apply(a, false);
    be.unitary.apply(b, true);
    VecXc av = a.to_dense(), bv = b.to_dense();
    if ((av - bv).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("qsp_apply: block-encoding unitary is not Hermitian");
  }
}

}  // namespace

QSPPhases qsp_phases(const PolySpec& poly) {
  check_parity(poly);
  const int d = poly.degree;
  if (d > 16) throw std::invalid_argument("qsp_phases: degree above 16 unsupported");
  const int num_nodes = 2 * (d + 1);
  VecXd nodes(num_nodes), target(num_nodes);
  for (int k = 0; k < num_nodes; ++k) {
    nodes[k] = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * num_nodes));
    target[k] = target_on_signal_domain(poly, nodes[k]);
    if (std::abs(target[k]) > 1.0 + 1e-12)
      throw std::invalid_argument("qsp_phases: |P| must stay within 1 on [-1,1]");
  }

  const auto residual = [&](const VecXd& phi) {
    VecXd r(2 * num_nodes);
    for (int k = 0; k < num_nodes; ++k) {
      const cplx u = qsp_unitary_entry(phi, nodes[k]);
      r[2 * k] = u.real() - target[k];
      r[2 * k + 1] = u.imag();
    }
    return r;
  };

  // Levenberg-Marquardt from the zero seed (exact for Chebyshev targets).
  VecXd phi = VecXd::Zero(d + 1);
  double damping = 1e-3;
  VecXd r = residual(phi);
  for (int iter = 0; iter < 400 && r.norm() > 1e-12; ++iter) {
    MatXd jac(r.size(), d + 1);
    const double h = 1e-7;
    for (int p = 0; p <= d; ++p) {
      VecXd phi_plus = phi, phi_minus = phi;
      phi_plus[p] += h;
      phi_minus[p] -= h;
      jac.col(p) = (residual(phi_plus) - residual(phi_minus)) / (2.0 * h);
    }
    const MatXd jtj = jac.transpose() * jac;
    const VecXd step =
        (jtj + damping * MatXd::Identity(d + 1, d + 1)).ldlt().solve(-jac.transpose() * r);
    const VecXd phi_new = phi + step;
    const VecXd r_new = residual(phi_new);
    if (r_new.norm() < r.norm()) {
      phi = phi_new;
      r = r_new;
      damping = std::max(damping * 0.3, 1e-12);
    } else {
      damping *= 10.0;
      if (damping > 1e12) break;
    }
  }

  QSPPhases out;
  out.phases = phi;
  out.parity = d % 2;
  out.target = poly;
  out.residual = r.norm();
  if (out.residual > 1e-8) throw std::runtime_error("qsp_phases: optimization residual above 1e-8");
  return out;
}

BlockEncoding qsp_apply(const BlockEncoding& be, const QSPPhases& phases) {
  require_hermitian_unitary(be);
  const int n = be.system_qubits;
  const int m = be.ancillas;
  const int total = n + m + 1;
  const int d = static_cast<int>(phases.phases.size()) - 1;
  const BasisIndex anc_mask = m == 0 ? 0 : ((dim_of(m) - 1) << n);
  const BasisIndex flag_bit = BasisIndex{1} << (n + m);

  // Projector-controlled rotation: e^{+i phi Z} on the flag over the
  // ancilla-zero subspace, e^{-i phi Z} elsewhere.
  const auto phase_unit = [&](double phi) {
    const cplx ep = std::polar(1.0, phi), em = std::polar(1.0, -phi);
    return Operator::functional_diagonal(total, [=](BasisIndex idx) {
      const bool anc_zero = (idx & anc_mask) == 0;
      const bool flag = (idx & flag_bit) != 0;
      if (anc_zero) return flag ? em : ep;
      return flag ? ep : em;
    });
  };

  // Reflected walk operator: sign flip when the flag disagrees with the
  // ancilla-zero indicator, then the Hermitian block-encoding unitary.
  Operator reflect = Operator::functional_diagonal(total, [=](BasisIndex idx) {
    const bool anc_nonzero = (idx & anc_mask) != 0;
    const bool flag = (idx & flag_bit) != 0;
    return (flag != anc_nonzero) ? cplx(-1.0, 0.0) : cplx(1.0, 0.0);
  });
  std::vector<int> low(n + m);
  for (int i = 0; i < n + m; ++i) low[i] = i;
  Operator walk = Operator::composed(reflect, Operator::embedded(be.unitary, total, low));

  std::vector<Operator> circuit;
  circuit.push_back(phase_unit(phases.phases[d]));
  for (int j = d - 1; j >= 0; --j) {
    circuit.push_back(walk);
    circuit.push_back(phase_unit(phases.phases[j]));
  }

  GateCost cost;
  cost.toffoli = d * be.cost.toffoli + (2 * d + 1) * multi_cnot(std::max(m, 1)).cost.toffoli;
  cost.extra_workspace_qubits = be.cost.extra_workspace_qubits;
  return BlockEncoding{Operator::composed(std::move(circuit)), 1.0, m + 1, 0.0, n, cost};
}

BlockEncoding hermitian_diagonal_be(const VecXd& values, double alpha) {
  VecXd amps = values / alpha;
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    if (std::abs(amps[i]) > 1.0 + 1e-12)
      throw std::invalid_argument("hermitian_diagonal_be: |values| must stay within alpha");
  int n = 0;
  while ((Eigen::Index{1} << n) < amps.size()) ++n;
  return BlockEncoding{Operator::hermitian_amplitude_flag(std::move(amps)), alpha, 1, 0.0, n, {}};
}

}  // namespace qufem
