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

#include "qufem/elements.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "qufem/quadrature.hpp"

namespace qufem {

double basis_eval(int p, int j, double x) {
  if (j < 0 || j > p) throw std::invalid_argument("basis_eval: node index out of range");
  double v = 1.0;
  const double xj = static_cast<double>(j) / p;
  for (int m = 0; m <= p; ++m) {
    if (m == j) continue;
    const double xm = static_cast<double>(m) / p;
    v *= (x - xm) / (xj - xm);
  }
  return v;
}

double basis_grad(int p, int j, double x) {
  if (j < 0 || j > p) throw std::invalid_argument("basis_grad: node index out of range");
  const double xj = static_cast<double>(j) / p;
  double sum = 0.0;
  for (int m = 0; m <= p; ++m) {
    if (m == j) continue;
    const double xm = static_cast<double>(m) / p;
    double prod = 1.0 / (xj - xm);
    for (int k = 0; k <= p; ++k) {
      if (k == j || k == m) continue;
      const double xk = static_cast<double>(k) / p;
      prod *= (x - xk) / (xj - xk);
    }
    sum += prod;
  }
  return sum;
}

ElementalArrays elemental_arrays(int p) {
  if (p < 1) throw std::invalid_argument("elemental_arrays: order must be >= 1");
  if ((p + 1) & p) throw std::invalid_argument("elemental_arrays: p+1 must be a power of two");
  const int nen = p + 1;
  // G = p+1 integrates both products exactly (degrees 2p-2 and 2p <= 2G-1).
  const QuadratureRule rule = gauss_legendre(p + 1);
  ElementalArrays a;
  a.ke = MatXd::Zero(nen, nen);
  a.me = MatXd::Zero(nen, nen);
  for (int q = 0; q < rule.order_g; ++q) {
    const double x = (rule.points[q] + 1.0) / 2.0;
    const double w = rule.weights[q] / 2.0;
    for (int j = 0; j < nen; ++j) {
      const double nj = basis_eval(p, j, x);
      const double gj = basis_grad(p, j, x);
      for (int k = 0; k < nen; ++k) {
        a.ke(j, k) += w * gj * basis_grad(p, k, x);
        a.me(j, k) += w * nj * basis_eval(p, k, x);
      }
    }
  }
  a.ke_abs_sum = a.ke.cwiseAbs().sum();
  a.me_abs_sum = a.me.cwiseAbs().sum();
  return a;
}

std::pair<MatXd, MatXd> tensor_elemental(int p, int d) {
  if (d < 1) throw std::invalid_argument("tensor_elemental: dimension must be >= 1");
  const ElementalArrays a = elemental_arrays(p);
  MatXd mass = a.me;
  for (int i = 1; i < d; ++i) mass = Eigen::kroneckerProduct(a.me, mass).eval();
  MatXd stiff = MatXd::Zero(mass.rows(), mass.cols());
  for (int slot = 0; slot < d; ++slot) {
    MatXd term = (slot == d - 1) ? a.ke : a.me;
    for (int i = d - 2; i >= 0; --i) {
      const MatXd& factor = (i == slot) ? a.ke : a.me;
      term = Eigen::kroneckerProduct(term, factor).eval();
    }
    stiff += term;
  }
  return {stiff, mass};
}

ElementalPrepOracles elemental_prep_oracles(const ElementalArrays& arrays) {
  const auto vectorize = [](const MatXd& m) {
    VecXc v(m.rows() * m.cols());
    Eigen::Index idx = 0;
    for (Eigen::Index j = 0; j < m.rows(); ++j)
      for (Eigen::Index k = 0; k < m.cols(); ++k) v[idx++] = m(j, k);
    return v;
  };
  return ElementalPrepOracles{make_prep_pair(vectorize(arrays.ke)),
                              make_prep_pair(vectorize(arrays.me))};
}

namespace {

MatXc phase_gate() {
  MatXc s(2, 2);
  s << 1, 0, 0, cplx(0, 1);
  return s;
}

MatXc hadamard() {
  MatXc h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

MatXc pauli_z() {
  MatXc z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

MatXc shift4(int k) {
  MatXc s = MatXc::Zero(4, 4);
  for (int j = 0; j < 4; ++j) s(((j + k) % 4 + 4) % 4, j) = 1.0;
  return s;
}

MatXc ry(double theta) {
  MatXc r(2, 2);
  r << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return r;
}

}  // namespace

MatXc explicit_prep_stiffness_p1() {
  const MatXc shz = phase_gate() * hadamard() * pauli_z();
  return shift4(-1) * Eigen::kroneckerProduct(shz, hadamard()).eval();
}

MatXc explicit_prep_tilde_stiffness_p1() {
  const MatXc zhs = pauli_z() * hadamard() * phase_gate();
  return Eigen::kroneckerProduct(zhs, hadamard()).eval() * shift4(1);
}

MatXc explicit_prep_mass_p1() {
  const double theta_m = 2.0 * std::acos(std::sqrt(2.0 / 3.0));
  return shift4(-1) * Eigen::kroneckerProduct(ry(theta_m), hadamard()).eval();
}

}  // namespace qufem
