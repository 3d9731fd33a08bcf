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

#include "qufem/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qufem {

namespace {

// Prepare oracles need only a fixed column (or row); the rest of the unitary
// is completed by Gram-Schmidt against the standard basis in index order.
MatXc complete_to_unitary(const VecXc& first_column) {
  const Eigen::Index n = first_column.size();
  MatXc u(n, n);
  u.col(0) = first_column;
  Eigen::Index filled = 1;
  for (Eigen::Index k = 0; k < n && filled < n; ++k) {
    VecXc v = VecXc::Zero(n);
    v[k] = 1.0;
    for (Eigen::Index c = 0; c < filled; ++c) v -= u.col(c).dot(v) * u.col(c);
    const double nv = v.norm();
    if (nv > 1e-8) u.col(filled++) = v / nv;
  }
  if (filled != n) throw std::runtime_error("unitary completion failed");
  return u;
}

cplx principal_sqrt(cplx y) {
  const double r = std::abs(y);
  if (r == 0.0) return cplx(0.0, 0.0);
  double theta = std::arg(y);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  return std::sqrt(r) * std::polar(1.0, theta / 2.0);
}

int ceil_log2(std::size_t k) {
  int b = 0;
  while ((std::size_t{1} << b) < k) ++b;
  return b;
}

GateCost prep_cost(int levels) {
  // Coefficient loading for L distinct amplitudes at constant precision.
  return GateCost{4 * std::int64_t{1} * (std::int64_t{1} << levels), 0};
}

}  // namespace

BlockEncoding be_identity(int system_qubits) {
  return BlockEncoding{Operator::identity(system_qubits), 1.0, 0, 0.0, system_qubits, {}};
}

BlockEncoding be_of_unitary(Operator u, GateCost cost) {
  const int n = u.qubits();
  return BlockEncoding{std::move(u), 1.0, 0, 0.0, n, cost};
}

MatXc extract_block(const BlockEncoding& be) {
  const int n = be.system_qubits;
  if (n > 12) throw std::length_error("dense extraction above 2^12 system dims");
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
  MatXc a = MatXc::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    SparseState s = SparseState::basis(n + be.ancillas, static_cast<BasisIndex>(j));
    be.unitary.apply(s);
    for (const auto& [idx, v] : s.terms())
      if (idx < static_cast<BasisIndex>(dim)) a(static_cast<Eigen::Index>(idx), j) = be.alpha * v;
  }
  return a;
}

Eigen::SparseMatrix<cplx> extract_block_sparse(const BlockEncoding& be) {
  const int n = be.system_qubits;
  if (n > 13) throw std::length_error("extraction above 2^13 system dims");
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Eigen::Index j = 0; j < dim; ++j) {
    SparseState s = SparseState::basis(n + be.ancillas, static_cast<BasisIndex>(j));
    be.unitary.apply(s);
    for (const auto& [idx, v] : s.terms())
      if (idx < static_cast<BasisIndex>(dim))
        trip.emplace_back(static_cast<Eigen::Index>(idx), j, be.alpha * v);
  }
  Eigen::SparseMatrix<cplx> a(dim, dim);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

bool validate_be(const BlockEncoding& be, const MatXc& target, bool spectral) {
  if (target.rows() != target.cols() ||
      static_cast<BasisIndex>(target.rows()) != dim_of(be.system_qubits))
    throw std::invalid_argument("validate_be: target dimension mismatch");
  const MatXc block = extract_block(be);
  const double tol = be.epsilon + 1e-9;
  const double maxdiff = (block - target).cwiseAbs().maxCoeff();
  if (maxdiff > tol) return false;
  if (spectral) {
    if (be.system_qubits > 10) throw std::length_error("spectral validation above 2^10");
    Eigen::JacobiSVD<MatXc> svd(block - target);
    if (svd.singularValues().size() > 0 && svd.singularValues()[0] > tol) return false;
  }
  return true;
}

BlockEncoding be_product(const BlockEncoding& u, const BlockEncoding& v) {
  if (u.system_qubits != v.system_qubits)
    throw std::invalid_argument("be_product: system dimension mismatch");
  const int n = u.system_qubits;
  const int a = u.ancillas, b = v.ancillas;
  const int total = n + a + b;
  // Layout: [system | v ancillas | u ancillas]; ancillas are never shared.
  std::vector<int> vt(n + b), ut(n + a);
  for (int i = 0; i < n + b; ++i) vt[i] = i;
  for (int i = 0; i < n; ++i) ut[i] = i;
  for (int i = 0; i < a; ++i) ut[n + i] = n + b + i;
  Operator w = Operator::composed(Operator::embedded(v.unitary, total, vt),
                                  Operator::embedded(u.unitary, total, ut));
  return BlockEncoding{std::move(w),
                       u.alpha * v.alpha,
                       a + b,
                       u.alpha * v.epsilon + v.alpha * u.epsilon,
                       n,
                       u.cost + v.cost};
}

BlockEncoding be_adjoint(const BlockEncoding& u) {
  BlockEncoding r = u;
  r.unitary = Operator::adjoint(u.unitary);
  return r;
}

BlockEncoding be_lcu(const std::vector<BlockEncoding>& terms, const StatePrepPair& pair) {
  if (terms.empty()) throw std::invalid_argument("be_lcu: no terms");
  if (static_cast<Eigen::Index>(terms.size()) != pair.coeffs.size())
    throw std::invalid_argument("be_lcu: coefficient count mismatch");
  const int n = terms.front().system_qubits;
  int a = 0;
  double eps_terms = 0.0;
  bool uniform_alpha = true;
  for (const auto& t : terms) {
    if (t.system_qubits != n) throw std::invalid_argument("be_lcu: system dimension mismatch");
    a = std::max(a, t.ancillas);
    if (std::abs(t.alpha - terms.front().alpha) > 1e-14) uniform_alpha = false;
  }

  // Effective coefficients c_j = y_j alpha_j so the block is sum y_j A_j.
  VecXc c = pair.coeffs;
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= terms[static_cast<std::size_t>(j)].alpha;
  const double c1 = c.cwiseAbs().sum();
  if (c1 <= 0.0) throw std::invalid_argument("be_lcu: zero coefficient one-norm");
  // prep(y) and prep(alpha*y) coincide for uniform alpha; otherwise the pair
  // for the scaled coefficients is synthesized here.
  const StatePrepPair eff = uniform_alpha ? pair : make_prep_pair(c);

  const int b = eff.pad_qubits;
  const int total = n + a + b;
  std::vector<Operator> branches;
  branches.reserve(terms.size());
  GateCost cost = eff.cost;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const auto& t = terms[j];
    std::vector<int> targets(n + t.ancillas);
    for (int i = 0; i < n + t.ancillas; ++i) targets[i] = i;
    branches.push_back(Operator::embedded(t.unitary, n + a, targets));
    eps_terms += std::abs(pair.coeffs[static_cast<Eigen::Index>(j)]) * t.epsilon;
    cost += t.cost;
  }
  std::vector<int> ctrl(b);
  for (int i = 0; i < b; ++i) ctrl[i] = n + a + i;
  Operator w = Operator::composed({Operator::embedded(eff.prep, total, ctrl),
                                   Operator::select(b, std::move(branches)),
                                   Operator::embedded(eff.prep_tilde, total, ctrl)});
  // Prepare oracles are exact here, so the error is sum_j |y_j| eps_j.
  return BlockEncoding{std::move(w), c1, a + b, eps_terms, n, cost};
}

BlockEncoding be_tensor(const BlockEncoding& u, const BlockEncoding& v) {
  const int nu = u.system_qubits, nv = v.system_qubits;
  const int au = u.ancillas, av = v.ancillas;
  const int total = nu + nv + au + av;
  // Layout: [v system | u system | v ancillas | u ancillas].
  std::vector<int> ut(nu + au), vt(nv + av);
  for (int i = 0; i < nv; ++i) vt[i] = i;
  for (int i = 0; i < av; ++i) vt[nv + i] = nv + nu + i;
  for (int i = 0; i < nu; ++i) ut[i] = nv + i;
  for (int i = 0; i < au; ++i) ut[nu + i] = nv + nu + av + i;
  Operator w = Operator::composed(Operator::embedded(v.unitary, total, vt),
                                  Operator::embedded(u.unitary, total, ut));
  return BlockEncoding{std::move(w),
                       u.alpha * v.alpha,
                       au + av,
                       u.alpha * v.epsilon + v.alpha * u.epsilon,
                       nu + nv,
                       u.cost + v.cost};
}

BlockEncoding be_sparse1(const std::vector<BasisIndex>& column_to_row, const VecXc& amps) {
  const std::size_t dim = column_to_row.size();
  if (static_cast<std::size_t>(amps.size()) != dim)
    throw std::invalid_argument("be_sparse1: amplitude count mismatch");
  int n = ceil_log2(dim);
  if (dim_of(n) != dim) throw std::invalid_argument("be_sparse1: dimension not a power of two");
  Operator o_amp = Operator::amplitude_flag(amps);
  std::vector<int> sys(n);
  for (int i = 0; i < n; ++i) sys[i] = i;
  Operator o_c = Operator::embedded(Operator::permutation(column_to_row), n + 1, sys);
  Operator u = Operator::composed(std::move(o_amp), std::move(o_c));
  return BlockEncoding{std::move(u), 1.0, 1, 0.0, n, {}};
}

PostselectResult apply_postselected(const BlockEncoding& be, const VecXc& psi) {
  if (static_cast<BasisIndex>(psi.size()) != dim_of(be.system_qubits))
    throw std::invalid_argument("apply_postselected: state dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("apply_postselected: input state must be normalized");
  SparseState s(be.system_qubits + be.ancillas);
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (psi[i] != cplx(0.0)) s.add(static_cast<BasisIndex>(i), psi[i]);
  s.compress();
  be.unitary.apply(s);
  const BasisIndex sys_dim = dim_of(be.system_qubits);
  VecXc raw = VecXc::Zero(static_cast<Eigen::Index>(sys_dim));
  for (const auto& [idx, v] : s.terms())
    if (idx < sys_dim) raw[static_cast<Eigen::Index>(idx)] = v;
  PostselectResult r;
  r.raw_norm = raw.norm();
  r.success_prob = r.raw_norm * r.raw_norm;
  if (be.alpha * r.raw_norm < 1e-14) {
    r.state = VecXc::Zero(raw.size());
    r.zero_flagged = true;
  } else {
    r.state = raw / r.raw_norm;
  }
  return r;
}

StatePrepPair make_prep_pair(const VecXc& y) {
  const double beta = y.cwiseAbs().sum();
  if (beta <= 0.0) throw std::invalid_argument("make_prep_pair: zero one-norm");
  const int b = ceil_log2(static_cast<std::size_t>(y.size()));
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(b));
  VecXc col = VecXc::Zero(dim);
  bool nonneg = true;
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    col[j] = principal_sqrt(y[j]) / std::sqrt(beta);
    if (y[j].real() < 0.0 || std::abs(y[j].imag()) > 0.0) nonneg = false;
  }
  MatXc prep = complete_to_unitary(col);
  MatXc prep_tilde;
  if (nonneg) {
    prep_tilde = prep.adjoint();
  } else {
    prep_tilde = complete_to_unitary(col.conjugate()).adjoint();
  }
  StatePrepPair p;
  p.coeffs = y;
  p.prep = Operator::dense(std::move(prep));
  p.prep_tilde = Operator::dense(std::move(prep_tilde));
  p.beta_norm = beta;
  p.pad_qubits = b;
  p.cost = prep_cost(b) + prep_cost(b);
  return p;
}

}  // namespace qufem
