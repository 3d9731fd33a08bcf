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

#include "qufem/constraints.hpp"

#include <cmath>
#include <stdexcept>

#include "qufem/mqet.hpp"
#include "qufem/qsp.hpp"

namespace qufem {

namespace {

MatXc x_gate() {
  MatXc x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

MatXc swap_gate() {
  MatXc s = MatXc::Identity(4, 4);
  s.setZero();
  s(0, 0) = s(3, 3) = 1.0;
  s(1, 2) = s(2, 1) = 1.0;
  return s;
}

// Controlled embedding of one block: |i><j| (x) A_ij from a block-flag
// sandwich (flip / swap / doubly-controlled apply / flip).
BlockEncoding embed_block(const BlockEncoding& be, int i, int j, int common_ancillas) {
  const int n = be.system_qubits;
  const int m = common_ancillas;
  const int total = n + m + 2;  // + block qubit + pair ancilla
  const int q_block = n;
  const int q_pair = n + m + 1;

  std::vector<Operator> seq;
  const auto c0_flip = [&] {
    return Operator::controlled(total, {{q_pair, 0}}, Operator::dense(x_gate()), {q_block});
  };
  if (j) seq.push_back(c0_flip());
  seq.push_back(Operator::embedded(Operator::dense(swap_gate()), total, {q_block, q_pair}));
  std::vector<int> targets(n + be.ancillas);
  for (int t = 0; t < n; ++t) targets[t] = t;
  for (int t = 0; t < be.ancillas; ++t) targets[n + t] = n + 1 + t;
  seq.push_back(
      Operator::controlled(total, {{q_pair, 0}, {q_block, 0}}, be.unitary, std::move(targets)));
  if (i) seq.push_back(c0_flip());

  return BlockEncoding{Operator::composed(std::move(seq)), be.alpha, m + 1, be.epsilon, n + 1,
                       be.cost};
}

}  // namespace

BlockEncoding block_embed_single(const BlockEncoding& be, int i, int j) {
  return embed_block(be, i, j, be.ancillas);
}

BlockEncoding block_encode_partitioned(
    const std::array<std::array<BlockEncoding, 2>, 2>& blocks) {
  const int n = blocks[0][0].system_qubits;
  int m = 0;
  for (const auto& row : blocks)
    for (const auto& b : row) {
      if (b.system_qubits != n)
        throw std::invalid_argument("block_encode_partitioned: block dimension mismatch");
      m = std::max(m, b.ancillas);
    }
  std::vector<BlockEncoding> terms;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) terms.push_back(embed_block(blocks[i][j], i, j, m));
  return be_lcu(terms, make_prep_pair(VecXc::Ones(4)));
}

BlockEncoding block_encode_saddle(const BlockEncoding& be_a, const BlockEncoding& be_b) {
  if (be_a.system_qubits != be_b.system_qubits)
    throw std::invalid_argument("block_encode_saddle: block dimension mismatch");
  const int n = be_a.system_qubits;
  const int m = std::max(be_a.ancillas, be_b.ancillas);
  const int total = n + 2 + m + 1;  // block qubits + inner ancillas + attenuator
  const int q_b0 = n, q_b1 = n + 1;
  const int q_att = n + 2 + m;
  const auto block_targets = [&](const BlockEncoding& be) {
    std::vector<int> t(n + be.ancillas);
    for (int i = 0; i < n; ++i) t[i] = i;
    for (int i = 0; i < be.ancillas; ++i) t[n + i] = n + 2 + i;
    return t;
  };
  // The identity blocks of each term must carry the same 1/alpha scale as the
  // encoded corner, so every block first passes through an attenuating
  // rotation on a spare ancilla, undone wherever the block unitary applies.
  const auto attenuator = [&](double alpha) {
    VecXc amp(1);
    amp[0] = 1.0 / alpha;
    return Operator::amplitude_flag(std::move(amp));  // one-qubit rotation
  };

  // Diagonal part: swap the block qubits, attenuate, then apply A (with the
  // attenuation undone) on the 00 block.
  Operator diag_term = Operator::composed(
      {Operator::embedded(Operator::dense(swap_gate()), total, {q_b0, q_b1}),
       Operator::embedded(attenuator(be_a.alpha), total, {q_att}),
       Operator::controlled(
           total, {{q_b0, 0}, {q_b1, 0}},
           Operator::composed(Operator::adjoint(Operator::embedded(
                                  attenuator(be_a.alpha), n + be_a.ancillas + 1,
                                  {n + be_a.ancillas})),
                              Operator::embedded(be_a.unitary, n + be_a.ancillas + 1, [&] {
                                std::vector<int> t(n + be_a.ancillas);
                                for (int i = 0; i < n + be_a.ancillas; ++i) t[i] = i;
                                return t;
                              }())),
           [&] {
             std::vector<int> t = block_targets(be_a);
             t.push_back(q_att);
             return t;
           }())});
  // Off-diagonal part: B^dag on block 00, B on block 01 (attenuation undone
  // on both), then X on the low block qubit.
  const auto b_branch = [&](Operator u) {
    return Operator::composed(
        Operator::adjoint(Operator::embedded(attenuator(be_b.alpha), n + be_b.ancillas + 1,
                                             {n + be_b.ancillas})),
        Operator::embedded(std::move(u), n + be_b.ancillas + 1, [&] {
          std::vector<int> t(n + be_b.ancillas);
          for (int i = 0; i < n + be_b.ancillas; ++i) t[i] = i;
          return t;
        }()));
  };
  const auto b_targets = [&] {
    std::vector<int> t = block_targets(be_b);
    t.push_back(q_att);
    return t;
  };
  Operator off_term = Operator::composed(
      {Operator::embedded(attenuator(be_b.alpha), total, {q_att}),
       Operator::controlled(total, {{q_b0, 0}, {q_b1, 0}}, b_branch(Operator::adjoint(be_b.unitary)),
                            b_targets()),
       Operator::controlled(total, {{q_b0, 1}, {q_b1, 0}}, b_branch(be_b.unitary), b_targets()),
       Operator::embedded(Operator::dense(x_gate()), total, {q_b0})});

  BlockEncoding d{std::move(diag_term), be_a.alpha, m + 1, be_a.epsilon, n + 2, be_a.cost};
  BlockEncoding o{std::move(off_term), be_b.alpha, m + 1, be_b.epsilon, n + 2, be_b.cost};
  VecXc y(2);
  y << 1.0, 1.0;
  return be_lcu({d, o}, make_prep_pair(y));
}

BlockSystem lagrange_system(const BlockEncoding& be_l, const DomainMask& mask, const VecXd& ubar,
                            const VecXd& f) {
  const int n = be_l.system_qubits;
  if (mask.n() * mask.d() != n)
    throw std::invalid_argument("lagrange_system: mask does not match the operator grid");
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
  BoundaryOracle oracle = boundary_oracle(mask);

  std::array<std::array<BlockEncoding, 2>, 2> blocks = {
      {{be_l, oracle.p_bd}, {oracle.p_bd, oracle.p_int}}};

  BlockSystem sys;
  sys.be = block_encode_partitioned(blocks);
  sys.pint_diag = VecXd::Zero(dim);
  for (BasisIndex v = 0; v < static_cast<BasisIndex>(dim); ++v)
    sys.pint_diag[static_cast<Eigen::Index>(v)] = mask.interior(v) ? 1.0 : 0.0;
  sys.ubar = VecXd::Zero(dim);
  for (BasisIndex v = 0; v < static_cast<BasisIndex>(dim); ++v)
    if (mask.constrained(v) && ubar.size() > 0)
      sys.ubar[static_cast<Eigen::Index>(v)] = ubar[static_cast<Eigen::Index>(v)];

  sys.rhs = VecXd::Zero(2 * dim);
  if (f.size() > 0) {
    if (f.size() != dim) throw std::invalid_argument("lagrange_system: rhs dimension mismatch");
    sys.rhs.head(dim) = f;
  }
  sys.rhs.tail(dim) = sys.ubar;

  const auto normalized_or_zero = [](const VecXd& v) {
    VecXc out = v.cast<cplx>();
    const double nv = out.norm();
    if (nv > 0) out /= nv;
    return out;
  };
  sys.rhs_state = partitioned_rhs(normalized_or_zero(sys.rhs.head(dim)),
                                  normalized_or_zero(sys.ubar));
  return sys;
}

VecXc partitioned_rhs(const VecXc& f0, const VecXc& f1) {
  if (f0.size() != f1.size()) throw std::invalid_argument("partitioned_rhs: size mismatch");
  const auto check = [](const VecXc& v) {
    const double nv = v.norm();
    if (nv != 0.0 && std::abs(nv - 1.0) > 1e-9)
      throw std::invalid_argument("partitioned_rhs: inputs must be normalized (or zero-flagged)");
  };
  check(f0);
  check(f1);
  VecXc out(2 * f0.size());
  out.head(f0.size()) = f0 / std::sqrt(2.0);
  out.tail(f1.size()) = f1 / std::sqrt(2.0);
  return out;
}

std::pair<BlockEncoding, VecXd> projector_dirichlet(const BlockEncoding& be_l,
                                                    const DomainMask& mask, const VecXd& b,
                                                    const VecXd& ubar) {
  const int n = be_l.system_qubits;
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
  BoundaryOracle oracle = boundary_oracle(mask);

  BlockEncoding plp = be_product(oracle.p_int, be_product(be_l, oracle.p_int));
  VecXc y(2);
  y << 1.0, 1.0;
  BlockEncoding l_dirich = be_lcu({plp, oracle.p_bd}, make_prep_pair(y));

  VecXd ubar_bd = VecXd::Zero(dim);
  for (BasisIndex v = 0; v < static_cast<BasisIndex>(dim); ++v)
    if (mask.constrained(v) && ubar.size() > 0)
      ubar_bd[static_cast<Eigen::Index>(v)] = ubar[static_cast<Eigen::Index>(v)];

  VecXd l_ubar = VecXd::Zero(dim);
  const double ubar_norm = ubar_bd.norm();
  if (ubar_norm > 0) {
    PostselectResult ps = apply_postselected(be_l, (ubar_bd / ubar_norm).cast<cplx>());
    for (Eigen::Index i = 0; i < dim; ++i)
      l_ubar[i] = ubar_norm * be_l.alpha * ps.raw_norm * ps.state[i].real();
  }

  // Interior rows carry the forcing minus the lifted boundary data; pinned
  // rows carry the prescription itself.
  VecXd b_dirich(dim);
  for (BasisIndex v = 0; v < static_cast<BasisIndex>(dim); ++v) {
    const Eigen::Index i = static_cast<Eigen::Index>(v);
    b_dirich[i] = mask.interior(v) ? b[i] - l_ubar[i] : ubar_bd[i];
  }
  return {std::move(l_dirich), std::move(b_dirich)};
}

VecXd dirichlet_state(const DomainMask& mask, const std::function<double(BasisIndex)>& g) {
  VecXd out = VecXd::Zero(static_cast<Eigen::Index>(mask.grid_dim()));
  for (BasisIndex v = 0; v < mask.grid_dim(); ++v)
    if (mask.constrained(v)) out[static_cast<Eigen::Index>(v)] = g(v);
  return out;
}

VecXd dirichlet_state_poly(const DomainMask& mask, const PolySpec& g) {
  const int d = mask.d(), n = mask.n();
  if (g.dims != d) throw std::invalid_argument("dirichlet_state_poly: arity mismatch");
  std::vector<BlockEncoding> family;
  for (int axis = 0; axis < d; ++axis) family.push_back(position_be_dim(axis, d, n));
  // Positions enter in grid units; rescale the polynomial domain accordingly.
  PolySpec scaled = g;
  const double nm1 = static_cast<double>(mask.side() - 1);
  scaled.domain_lo = g.domain_lo * nm1;
  scaled.domain_hi = g.domain_hi * nm1;
  if (scaled.basis == PolyBasis::kMonomial) {
    // x^k in physical units becomes (v / (N-1))^k in grid units.
    const int stride = scaled.degree + 1;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(stride);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      int degree_sum = 0;
      for (int a = 0; a < d; ++a) {
        degree_sum += static_cast<int>(rem % stride);
        rem /= stride;
      }
      scaled.coeffs[flat] /= std::pow(nm1, degree_sum);
    }
  }
  MqetResult mq = mqet_transform(family, scaled);
  const VecXd values = extract_diagonal(mq.be);
  VecXd out = VecXd::Zero(values.size());
  for (BasisIndex v = 0; v < mask.grid_dim(); ++v)
    if (mask.constrained(v)) out[static_cast<Eigen::Index>(v)] = values[static_cast<Eigen::Index>(v)];
  return out;
}

BlockSolution split_block_solution(const VecXd& full) {
  const Eigen::Index half = full.size() / 2;
  BlockSolution s;
  s.u = full.head(half);
  s.lambda = full.tail(half);
  s.u_norm = s.u.norm();
  s.lambda_norm = s.lambda.norm();
  return s;
}

}  // namespace qufem
