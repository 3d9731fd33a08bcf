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

#include "qufem/interaction.hpp"

#include <stdexcept>

#include "qufem/gates.hpp"

namespace qufem {

MatXd uoi_reference(const Connectivity& conn, int j, int k) {
  if (j < 0 || j >= conn.nen || k < 0 || k >= conn.nen)
    throw std::invalid_argument("uoi_reference: local node out of range");
  if (!conn.injective_per_row()) throw std::invalid_argument("uoi_reference: non-injective row");
  int n = 0;
  while (dim_of(n) < conn.numnp) ++n;
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
  MatXd a = MatXd::Zero(dim, dim);
  for (BasisIndex e = 0; e < conn.numel; ++e)
    a(static_cast<Eigen::Index>(conn.ix(j, e)), static_cast<Eigen::Index>(conn.ix(k, e))) += 1.0;
  return a;
}

MatXd indicator_reference(const Connectivity& conn, int j) {
  int n = 0;
  while (dim_of(n) < conn.numnp) ++n;
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
  MatXd a = MatXd::Zero(dim, dim);
  for (BasisIndex e = 0; e < conn.numel; ++e)
    a(static_cast<Eigen::Index>(conn.ix(j, e)), static_cast<Eigen::Index>(e)) += 1.0;
  return a;
}

namespace {

// Sandwiches a flag-style core U between system shifts: S^j U S^-k.
BlockEncoding shifted_core(Operator core, GateCost core_cost, int n, int ancillas, int j, int k) {
  std::vector<int> sys(n);
  for (int i = 0; i < n; ++i) sys[i] = i;
  GateCost cost = core_cost;
  std::vector<Operator> seq;
  if (k != 0) {
    CostedOperator s = shift_op(n, -k);
    cost += s.cost;
    seq.push_back(Operator::embedded(s.op, n + ancillas, sys));
  }
  seq.push_back(std::move(core));
  if (j != 0) {
    CostedOperator s = shift_op(n, j);
    cost += s.cost;
    seq.push_back(Operator::embedded(s.op, n + ancillas, sys));
  }
  return BlockEncoding{Operator::composed(std::move(seq)), 1.0, ancillas, 0.0, n, cost};
}

}  // namespace

BlockEncoding uoi_be_p1(int n, int j, int k, bool periodic) {
  if (j < 0 || j > 1 || k < 0 || k > 1)
    throw std::invalid_argument("uoi_be_p1: local nodes must be 0 or 1");
  if (periodic) {
    // The self-interaction becomes the identity; only the net shift remains.
    CostedOperator s = shift_op(n, j - k);
    return BlockEncoding{s.op, 1.0, 0, 0.0, n, s.cost};
  }
  CostedOperator core = multi_cnot(n);
  return shifted_core(core.op, core.cost, n, 1, j, k);
}

BlockEncoding uoi_be_p1_or11(int n) {
  CostedOperator core = or_gate(n);
  // Flag toggles on index 0, so the block is diag(0, 1, ..., 1) directly.
  return BlockEncoding{core.op, 1.0, 1, 0.0, n, core.cost};
}

BlockEncoding uoi_be_p(int n, int p, int j, int k, bool periodic) {
  if (p < 1 || ((p + 1) & p) != 0) throw std::invalid_argument("uoi_be_p: p+1 not a power of two");
  int m = 0;
  while ((1 << m) < p + 1) ++m;
  if (n % m != 0) throw std::invalid_argument("uoi_be_p: n must be a multiple of log2(p+1)");
  if (j < 0 || j > p || k < 0 || k > p)
    throw std::invalid_argument("uoi_be_p: local node out of range");
  const BasisIndex top = dim_of(n) - 1;
  // Net action of mod-p flagging plus the top-index fence: flag1 records a
  // nonzero remainder, flag2 records the last grid index.
  Operator f1 = Operator::flag_oracle(
      n, [p](BasisIndex i) { return (i % static_cast<BasisIndex>(p)) != 0; });
  GateCost cost = mod_p_unitary(n, p).cost;      // compute + uncompute charged inside
  cost += multi_cnot(m).cost;                    // remainder-zero test (X-conjugated)
  Operator core;
  int ancillas;
  if (periodic) {
    std::vector<int> t(n + 1);
    for (int i = 0; i <= n; ++i) t[i] = i;
    core = Operator::embedded(std::move(f1), n + 2, t);
    ancillas = 2;
  } else {
    Operator f2 = Operator::flag_oracle(n, [top](BasisIndex i) { return i == top; });
    cost += multi_cnot(n).cost;
    std::vector<int> t1(n + 1), t2(n + 1);
    for (int i = 0; i < n; ++i) t1[i] = t2[i] = i;
    t1[n] = n;      // remainder flag
    t2[n] = n + 1;  // top-index flag
    core = Operator::composed(Operator::embedded(std::move(f1), n + 2, t1),
                              Operator::embedded(std::move(f2), n + 2, t2));
    ancillas = 2;
  }
  return shifted_core(std::move(core), cost, n, ancillas, j, k);
}

BlockEncoding indicator_be(int n, int p, int j) {
  if (p < 1 || ((p + 1) & p) != 0)
    throw std::invalid_argument("indicator_be: p+1 not a power of two");
  if (j < 0 || j > p) throw std::invalid_argument("indicator_be: local node out of range");
  if ((dim_of(n) - 1) % static_cast<BasisIndex>(p) != 0)
    throw std::invalid_argument("indicator_be: grid does not hold whole elements");
  const BasisIndex numel = (dim_of(n) - 1) / static_cast<BasisIndex>(p);
  Operator fence = Operator::flag_oracle(n, [numel](BasisIndex e) { return e >= numel; });
  CostedOperator mul = mul_mod_unitary(n, p);
  CostedOperator shift = shift_op(n, j);
  std::vector<int> sys(n);
  for (int i = 0; i < n; ++i) sys[i] = i;
  std::vector<Operator> seq;
  seq.push_back(std::move(fence));
  seq.push_back(Operator::embedded(mul.op, n + 1, sys));
  GateCost cost = mul.cost + multi_cnot(n).cost;
  if (j != 0) {
    seq.push_back(Operator::embedded(shift.op, n + 1, sys));
    cost += shift.cost;
  }
  return BlockEncoding{Operator::composed(std::move(seq)), 1.0, 1, 0.0, n, cost};
}

}  // namespace qufem
