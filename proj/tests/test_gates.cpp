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

#include <doctest.h>

#include "qufem/gates.hpp"
#include "test_helpers.hpp"

using namespace qufem;
using namespace qufem::testing;

namespace {

bool is_permutation_matrix(const MatXc& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    int ones = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const cplx v = m(i, j);
      if (std::abs(v) < 1e-14) continue;
      if (std::abs(v - cplx(1.0, 0.0)) > 1e-14) return false;
      ++ones;
    }
    if (ones != 1) return false;
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > 1e-14) ++ones;
    if (ones != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("shift_op matrices and inverses") {
  const MatXc s = shift_op(2, 1).op.to_matrix();
  MatXc expect = MatXc::Zero(4, 4);
  expect(0, 3) = expect(1, 0) = expect(2, 1) = expect(3, 2) = 1.0;
  CHECK(max_abs_diff(s, expect) < 1e-15);

  CHECK(shift_op(3, 0).cost.toffoli == 0);
  CHECK(max_abs_diff(shift_op(3, 0).op.to_matrix(), MatXc::Identity(8, 8)) < 1e-15);

  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= 3; ++k) {
      const MatXc fwd = shift_op(n, k).op.to_matrix();
      const MatXc bwd = shift_op(n, -k).op.to_matrix();
      CHECK(max_abs_diff(MatXc(fwd * bwd),
                         MatXc::Identity(fwd.rows(), fwd.cols())) < 1e-15);
    }
}

TEST_CASE("multi_cnot flips on the all-ones control pattern") {
  CHECK(multi_cnot(2).cost.toffoli == 1);
  CHECK(multi_cnot(3).cost.toffoli == 3);
  CHECK(multi_cnot(3).cost.extra_workspace_qubits == 1);
  CHECK(multi_cnot(1).cost.toffoli == 0);

  const MatXc u = multi_cnot(2).op.to_matrix();
  for (BasisIndex i = 0; i < 4; ++i) {
    SparseState s = SparseState::basis(3, i);
    multi_cnot(2).op.apply(s);
    const BasisIndex expect = i == 3 ? (i | 4u) : i;
    CHECK(s.terms().size() == 1);
    CHECK(s.terms()[0].first == expect);
  }
  CHECK(is_permutation_matrix(u));
}

TEST_CASE("or_gate flags the zero input and is an involution") {
  Operator gate = or_gate(2).op;
  SparseState s = SparseState::basis(3, 0);  // |00>|0>
  gate.apply(s);
  CHECK(s.terms()[0].first == 4u);  // flag toggled
  gate.apply(s);
  CHECK(s.terms()[0].first == 0u);

  SparseState t = SparseState::basis(3, 1);  // |01>|0> stays put
  gate.apply(t);
  CHECK(t.terms()[0].first == 1u);
  CHECK(is_permutation_matrix(gate.to_matrix()));
}

TEST_CASE("mod_p_unitary computes remainders in the output register") {
  CostedOperator u = mod_p_unitary(4, 3);
  // |i=6>|0> -> remainder 0; |i=7>|0> -> remainder 1.
  SparseState s6 = SparseState::basis(6, 6);
  u.op.apply(s6);
  CHECK(s6.terms()[0].first == 6u);
  SparseState s7 = SparseState::basis(6, 7);
  u.op.apply(s7);
  CHECK(s7.terms()[0].first == (7u | (1u << 4)));

  for (int p : {1, 2, 3, 5, 7}) {
    int m = 0;
    while ((1 << m) < p + 1) ++m;
    for (int n : {4, 6, 8}) {
      CostedOperator op = mod_p_unitary(n, p);
      bool all_match = true;
      for (BasisIndex i = 0; i < dim_of(n); ++i) {
        SparseState s = SparseState::basis(n + m, i);
        op.op.apply(s);
        all_match =
            all_match && s.terms()[0].first == (i | ((i % static_cast<BasisIndex>(p)) << n));
      }
      CHECK(all_match);
    }
  }
}

TEST_CASE("mod_p cost comes from the division formula charged twice") {
  CHECK(division_toffoli(4, 2) == 270);
  CHECK(mod_p_unitary(4, 3).cost.toffoli == 2 * 270);
  CHECK_THROWS(mod_p_unitary(4, 0));
}

TEST_CASE("mul_mod_unitary multiplies modulo the register size") {
  CostedOperator u = mul_mod_unitary(4, 3);
  SparseState s = SparseState::basis(4, 2);
  u.op.apply(s);
  CHECK(s.terms()[0].first == 6u);

  CHECK(max_abs_diff(mul_mod_unitary(4, 1).op.to_matrix(), MatXc::Identity(16, 16)) < 1e-15);
  CHECK(mul_mod_unitary(4, 1).cost.toffoli == 0);
  CHECK(is_permutation_matrix(mul_mod_unitary(4, 7).op.to_matrix()));
}

TEST_CASE("cost additivity under concatenation") {
  const GateCost a = multi_cnot(5).cost;
  const GateCost b = shift_op(5, 2).cost;
  const GateCost sum = a + b;
  CHECK(sum.toffoli == a.toffoli + b.toffoli);
  CHECK(sum.extra_workspace_qubits == a.extra_workspace_qubits + b.extra_workspace_qubits);
}

TEST_CASE("compression ledger ancilla accounting") {
  CHECK(compression_ledger(4, 1).postselected_ancillas == 6);
  // (p+1)^2 terms sharing two flag ancillas: 4m + 3 post-selected qubits.
  for (int m : {1, 2, 3}) {
    const int terms = (1 << m) * (1 << m);
    CHECK(compression_ledger(terms, 2).postselected_ancillas == 4 * m + 3);
  }
  CHECK(compression_ledger(1, 2).postselected_ancillas == 2);
  CHECK_THROWS(compression_ledger(0, 1));
}

TEST_CASE("gate operators are exact permutation matrices") {
  CHECK(is_permutation_matrix(shift_op(3, 2).op.to_matrix()));
  CHECK(is_permutation_matrix(multi_cnot(3).op.to_matrix()));
  CHECK(is_permutation_matrix(or_gate(3).op.to_matrix()));
  CHECK(is_permutation_matrix(mod_p_unitary(3, 3).op.to_matrix()));
}

TEST_CASE("multi-control cost is affine in the control count") {
  // 2n - 3 exactly for n >= 3; a linear fit over n = 3..10 is perfect.
  for (int n = 3; n <= 10; ++n) CHECK(multi_cnot(n).cost.toffoli == 2 * n - 3);
}
