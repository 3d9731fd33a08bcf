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

#include "qufem/assembly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qufem {

SpMatd classical_assemble(const Connectivity& conn, const MatXd& elem_matrix) {
  if (elem_matrix.rows() != conn.nen || elem_matrix.cols() != conn.nen)
    throw std::invalid_argument("classical_assemble: elemental matrix size mismatch");
  int n = 0;
  while (dim_of(n) < conn.numnp) ++n;
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(conn.numel) * conn.nen * conn.nen);
  for (BasisIndex e = 0; e < conn.numel; ++e)
    for (int j = 0; j < conn.nen; ++j)
      for (int k = 0; k < conn.nen; ++k)
        trip.emplace_back(static_cast<Eigen::Index>(conn.ix(j, e)),
                          static_cast<Eigen::Index>(conn.ix(k, e)), elem_matrix(j, k));
  SpMatd a(dim, dim);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

AssembledArray assemble_global_1d(const MatXd& elem_matrix, int p, int n, ArrayKind kind,
                                  bool periodic) {
  const int nen = p + 1;
  if (elem_matrix.rows() != nen || elem_matrix.cols() != nen)
    throw std::invalid_argument("assemble_global_1d: elemental matrix size mismatch");
  std::vector<BlockEncoding> terms;
  VecXc y(nen * nen);
  terms.reserve(static_cast<std::size_t>(nen) * nen);
  for (int j = 0; j < nen; ++j)
    for (int k = 0; k < nen; ++k) {
      terms.push_back(p == 1 ? uoi_be_p1(n, j, k, periodic) : uoi_be_p(n, p, j, k, periodic));
      y[j * nen + k] = elem_matrix(j, k);
    }
  AssembledArray out;
  out.be = be_lcu(terms, make_prep_pair(y));
  out.alpha_analytic = elem_matrix.cwiseAbs().sum();
  out.kind = kind;
  return out;
}

GlobalArraysDd assemble_global_dd(int d, int p, int n) {
  if (d < 1) throw std::invalid_argument("assemble_global_dd: dimension must be >= 1");
  const ElementalArrays arrays = elemental_arrays(p);
  AssembledArray k1 = assemble_global_1d(arrays.ke, p, n, ArrayKind::kStiffness);
  AssembledArray m1 = assemble_global_1d(arrays.me, p, n, ArrayKind::kMass);
  GlobalArraysDd out;
  if (d == 1) {
    out.stiffness = k1;
    out.mass = m1;
    return out;
  }
  BlockEncoding mass = m1.be;
  for (int i = 1; i < d; ++i) mass = be_tensor(m1.be, mass);
  std::vector<BlockEncoding> terms;
  for (int slot = 0; slot < d; ++slot) {
    BlockEncoding term = (slot == d - 1) ? k1.be : m1.be;
    for (int i = d - 2; i >= 0; --i) term = be_tensor(term, (i == slot) ? k1.be : m1.be);
    terms.push_back(std::move(term));
  }
  VecXc ones = VecXc::Ones(d);
  const double mass_alpha_pow = std::pow(m1.alpha_analytic, d - 1);
  out.stiffness = AssembledArray{be_lcu(terms, make_prep_pair(ones)),
                                 d * k1.alpha_analytic * mass_alpha_pow, ArrayKind::kStiffness};
  out.mass =
      AssembledArray{std::move(mass), m1.alpha_analytic * mass_alpha_pow, ArrayKind::kMass};
  return out;
}

std::string to_coordinate_text(const SpMatd& m) {
  std::ostringstream out;
  out.precision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMatd::InnerIterator it(m, k); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value() << "\n";
  return out.str();
}

}  // namespace qufem
