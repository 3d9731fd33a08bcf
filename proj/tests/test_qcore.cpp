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

#include <unsupported/Eigen/KroneckerProduct>

#include "qufem/elements.hpp"
#include "qufem/gates.hpp"
#include "test_helpers.hpp"

using namespace qufem;
using namespace qufem::testing;

TEST_CASE("extract_block on trivial encodings") {
  CHECK(max_abs_diff(extract_block(be_identity(1)), MatXc::Identity(2, 2)) < 1e-15);

  // A bare unitary treated as a (1,0)-encoding extracts to itself.
  const MatXc prep = explicit_prep_stiffness_p1();
  const MatXc block = extract_block(be_of_unitary(Operator::dense(prep)));
  CHECK(max_abs_diff(block, prep) < 1e-14);
  CHECK(std::abs(block(0, 0) - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(block(1, 0) - cplx(0.0, 0.5)) < 1e-14);
  CHECK(std::abs(block(2, 0) - cplx(0.0, 0.5)) < 1e-14);
  CHECK(std::abs(block(3, 0) - cplx(0.5, 0.0)) < 1e-14);
}

TEST_CASE("validate_be agrees and disagrees") {
  const int n = 3;
  CostedOperator mc = multi_cnot(n);
  BlockEncoding be{mc.op, 1.0, 1, 0.0, n, mc.cost};
  MatXc target = MatXc::Identity(8, 8);
  target(7, 7) = 0.0;
  CHECK(validate_be(be, target));
  CHECK(validate_be(be, target, /*spectral=*/true));
  CHECK_FALSE(validate_be(be, MatXc::Identity(8, 8)));
  CHECK(validate_be(be_identity(2), MatXc::Identity(4, 4)));
}

TEST_CASE("be_product composes blocks and bookkeeping") {
  std::mt19937_64 rng(7);
  BlockEncoding a = random_diagonal_be(3, rng);
  a.alpha = 2.0;
  BlockEncoding b = random_diagonal_be(3, rng);
  b.alpha = 3.0;
  BlockEncoding ab = be_product(a, b);
  CHECK(ab.alpha == doctest::Approx(6.0));
  CHECK(ab.ancillas == 2);
  CHECK(max_abs_diff(extract_block(ab), MatXc(extract_block(a) * extract_block(b))) < 1e-9);

  BlockEncoding idb = be_product(be_identity(3), b);
  CHECK(max_abs_diff(extract_block(idb), extract_block(b)) < 1e-12);
}

TEST_CASE("composition law on random diagonal and permutation encodings") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 6; n += 2) {
    BlockEncoding d = random_diagonal_be(n, rng);
    BlockEncoding p = random_permutation_be(n, rng);
    BlockEncoding dp = be_product(d, p);
    CHECK(max_abs_diff(extract_block(dp), MatXc(extract_block(d) * extract_block(p))) < 1e-9);
    BlockEncoding pd = be_product(p, d);
    CHECK(max_abs_diff(extract_block(pd), MatXc(extract_block(p) * extract_block(d))) < 1e-9);
  }
}

TEST_CASE("be_lcu reproduces weighted sums") {
  std::mt19937_64 rng(23);
  const int n = 3;
  std::vector<BlockEncoding> terms{random_diagonal_be(n, rng), random_permutation_be(n, rng),
                                   random_diagonal_be(n, rng)};
  VecXc y(3);
  y << cplx(0.7, 0.0), cplx(-1.3, 0.0), cplx(0.2, 0.4);
  BlockEncoding lcu = be_lcu(terms, make_prep_pair(y));
  MatXc expect = MatXc::Zero(8, 8);
  for (int j = 0; j < 3; ++j) expect += y[j] * extract_block(terms[j]);
  CHECK(max_abs_diff(extract_block(lcu), expect) < 1e-9);
  CHECK(lcu.alpha == doctest::Approx(y.cwiseAbs().sum()));
  CHECK(lcu.ancillas == 1 + 2);  // common term budget + two coefficient qubits

  SUBCASE("single term with unit coefficient is a no-op") {
    VecXc one = VecXc::Ones(1);
    BlockEncoding single = be_lcu({terms[0]}, make_prep_pair(one));
    CHECK(max_abs_diff(extract_block(single), extract_block(terms[0])) < 1e-12);
  }

  SUBCASE("coefficient count mismatch throws") {
    VecXc bad = VecXc::Ones(2);
    CHECK_THROWS(be_lcu(terms, make_prep_pair(bad)));
  }
}

TEST_CASE("weighted-sum law holds at larger widths") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n : {4, 5, 6}) {
    std::vector<BlockEncoding> terms{random_diagonal_be(n, rng), random_permutation_be(n, rng),
                                     random_permutation_be(n, rng), random_diagonal_be(n, rng)};
    VecXc y(4);
    for (int j = 0; j < 4; ++j) y[j] = cplx(dist(rng), dist(rng));
    BlockEncoding lcu = be_lcu(terms, make_prep_pair(y));
    MatXc expect = MatXc::Zero(static_cast<Eigen::Index>(dim_of(n)),
                               static_cast<Eigen::Index>(dim_of(n)));
    for (int j = 0; j < 4; ++j) expect += y[j] * extract_block(terms[j]);
    CHECK(max_abs_diff(extract_block(lcu), expect) < 1e-9);
  }
}

TEST_CASE("be_lcu folds unequal subnormalizations into the coefficients") {
  std::mt19937_64 rng(31);
  BlockEncoding a = random_diagonal_be(2, rng);
  a.alpha = 2.0;
  BlockEncoding b = random_diagonal_be(2, rng);
  VecXc y(2);
  y << 1.0, -0.5;
  BlockEncoding lcu = be_lcu({a, b}, make_prep_pair(y));
  MatXc expect = extract_block(a) + cplx(-0.5, 0.0) * extract_block(b);
  CHECK(max_abs_diff(extract_block(lcu), expect) < 1e-9);
  CHECK(lcu.alpha == doctest::Approx(1.0 * 2.0 + 0.5 * 1.0));
}

TEST_CASE("be_tensor matches the Kronecker product") {
  std::mt19937_64 rng(37);
  BlockEncoding a = random_diagonal_be(2, rng);
  BlockEncoding b = random_permutation_be(3, rng);
  BlockEncoding ab = be_tensor(a, b);
  CHECK(ab.system_qubits == 5);
  CHECK(ab.alpha == doctest::Approx(1.0));
  const MatXc expect = Eigen::kroneckerProduct(extract_block(a), extract_block(b)).eval();
  CHECK(max_abs_diff(extract_block(ab), expect) < 1e-12);

  BlockEncoding ib = be_tensor(be_identity(2), b);
  const MatXc expect2 = Eigen::kroneckerProduct(MatXc::Identity(4, 4), extract_block(b)).eval();
  CHECK(max_abs_diff(extract_block(ib), expect2) < 1e-12);
}

TEST_CASE("be_sparse1 builds one-sparse encodings") {
  SUBCASE("identity map, unit amplitudes") {
    std::vector<BasisIndex> c{0, 1, 2, 3};
    BlockEncoding be = be_sparse1(c, VecXc::Ones(4));
    CHECK(max_abs_diff(extract_block(be), MatXc::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("cyclic shift reproduces the shift matrix") {
    const int n = 3;
    std::vector<BasisIndex> c(8);
    for (BasisIndex j = 0; j < 8; ++j) c[j] = (j + 1) % 8;
    BlockEncoding be = be_sparse1(c, VecXc::Ones(8));
    CHECK(max_abs_diff(extract_block(be), shift_op(n, 1).op.to_matrix()) < 1e-12);
  }
  SUBCASE("diagonal position amplitudes") {
    const int n = 3;
    std::vector<BasisIndex> c(8);
    VecXc amps(8);
    for (BasisIndex j = 0; j < 8; ++j) {
      c[j] = j;
      amps[static_cast<Eigen::Index>(j)] = static_cast<double>(j) / 7.0;
    }
    BlockEncoding be = be_sparse1(c, amps);
    const MatXc block = extract_block(be);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(block(j, j) - cplx(j / 7.0, 0)) < 1e-12);
    (void)n;
  }
  SUBCASE("non-bijective map throws") {
    std::vector<BasisIndex> c{0, 0, 2, 3};
    CHECK_THROWS(be_sparse1(c, VecXc::Ones(4)));
  }
}

TEST_CASE("apply_postselected") {
  std::mt19937_64 rng(41);
  SUBCASE("identity keeps the state with unit probability") {
    VecXc psi = random_state(3, rng);
    PostselectResult r = apply_postselected(be_identity(3), psi);
    CHECK(r.success_prob == doctest::Approx(1.0));
    CHECK((r.state - psi).norm() < 1e-12);
  }
  SUBCASE("projector annihilates the dropped basis state") {
    const int n = 3;
    CostedOperator mc = multi_cnot(n);
    BlockEncoding be{mc.op, 1.0, 1, 0.0, n, mc.cost};
    VecXc psi = VecXc::Zero(8);
    psi[7] = 1.0;
    PostselectResult r = apply_postselected(be, psi);
    CHECK(r.zero_flagged);
    CHECK(r.success_prob == doctest::Approx(0.0));
  }
  SUBCASE("success probability is consistent with the extracted block") {
    for (int rep = 0; rep < 4; ++rep) {
      BlockEncoding be = random_diagonal_be(3, rng);
      be.alpha = 1.7;
      VecXc psi = random_state(3, rng);
      PostselectResult r = apply_postselected(be, psi);
      const double expect = (extract_block(be) * psi).squaredNorm();
      CHECK(std::abs(r.success_prob * be.alpha * be.alpha - expect) < 1e-10);
    }
  }
  SUBCASE("unnormalized input throws") {
    VecXc bad = VecXc::Ones(8);
    CHECK_THROWS(apply_postselected(be_identity(3), bad));
  }
}

TEST_CASE("make_prep_pair column and row invariants") {
  SUBCASE("order-1 stiffness coefficients") {
    const ElementalArrays arrays = elemental_arrays(1);
    VecXc y(4);
    y << arrays.ke(0, 0), arrays.ke(0, 1), arrays.ke(1, 0), arrays.ke(1, 1);
    StatePrepPair pair = make_prep_pair(y);
    CHECK(pair.beta_norm == doctest::Approx(4.0));
    const MatXc prep = pair.prep.to_matrix();
    CHECK(std::abs(prep(0, 0) - cplx(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(prep(1, 0) - cplx(0.0, 0.5)) < 1e-12);
    CHECK(std::abs(prep(2, 0) - cplx(0.0, 0.5)) < 1e-12);
    CHECK(std::abs(prep(3, 0) - cplx(0.5, 0.0)) < 1e-12);
    const MatXc prep_tilde = pair.prep_tilde.to_matrix();
    for (int j = 0; j < 4; ++j) {
      const cplx want = prep(j, 0);
      CHECK(std::abs(prep_tilde(0, j) - want) < 1e-12);
    }
  }
  SUBCASE("scalar coefficient") {
    VecXc y = VecXc::Ones(1);
    StatePrepPair pair = make_prep_pair(y);
    CHECK(max_abs_diff(pair.prep.to_matrix(), MatXc::Identity(1, 1)) < 1e-15);
  }
  SUBCASE("order-1 mass coefficients give a real pair with prep_tilde = prep^dag") {
    const ElementalArrays arrays = elemental_arrays(1);
    VecXc y(4);
    y << arrays.me(0, 0), arrays.me(0, 1), arrays.me(1, 0), arrays.me(1, 1);
    StatePrepPair pair = make_prep_pair(y);
    const MatXc prep = pair.prep.to_matrix();
    CHECK(std::abs(prep(0, 0) - std::sqrt(1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(prep(1, 0) - std::sqrt(1.0 / 6.0)) < 1e-12);
    CHECK(std::abs(prep(2, 0) - std::sqrt(1.0 / 6.0)) < 1e-12);
    CHECK(std::abs(prep(3, 0) - std::sqrt(1.0 / 3.0)) < 1e-12);
    CHECK(max_abs_diff(pair.prep_tilde.to_matrix(), MatXc(prep.adjoint())) < 1e-12);
  }
  SUBCASE("padding keeps dead coefficients dead") {
    VecXc y(3);
    y << 0.5, cplx(0.0, -0.25), 1.0;
    StatePrepPair pair = make_prep_pair(y);
    CHECK(pair.pad_qubits == 2);
    const MatXc prep = pair.prep.to_matrix();
    const MatXc prep_tilde = pair.prep_tilde.to_matrix();
    // c_j^* d_j = 0 past the coefficient list.
    CHECK(std::abs(std::conj(prep_tilde(0, 3)) * prep(3, 0)) < 1e-14);
    // beta * (row entry)(column entry) recovers each coefficient.
    for (int j = 0; j < 3; ++j) {
      const cplx recovered = pair.beta_norm * prep_tilde(0, j) * prep(j, 0);
      CHECK(std::abs(recovered - y[j]) < 1e-12);
    }
  }
  SUBCASE("zero one-norm throws") { CHECK_THROWS(make_prep_pair(VecXc::Zero(4))); }
}

TEST_CASE("prep pair roundtrip through an LCU of identities") {
  // With identity branches the corner entry of the LCU recovers sum y_j.
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  VecXc y(5);
  for (int j = 0; j < 5; ++j) y[j] = cplx(dist(rng), dist(rng));
  std::vector<BlockEncoding> terms(5, be_identity(2));
  BlockEncoding lcu = be_lcu(terms, make_prep_pair(y));
  const MatXc block = extract_block(lcu);
  CHECK(std::abs(block(0, 0) - y.sum()) < 1e-10);
}

TEST_CASE("materialized composite unitaries stay unitary") {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 3; ++rep) {
    BlockEncoding d = random_diagonal_be(2, rng);
    BlockEncoding p = random_permutation_be(2, rng);
    VecXc y(2);
    y << 0.3, -0.7;
    BlockEncoding lcu = be_lcu({d, p}, make_prep_pair(y));
    const MatXc u = lcu.unitary.to_matrix();
    CHECK((u.adjoint() * u - MatXc::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("adjoint encoding extracts the conjugate transpose") {
  std::mt19937_64 rng(61);
  BlockEncoding d = random_diagonal_be(3, rng);
  BlockEncoding da = be_adjoint(d);
  CHECK(max_abs_diff(extract_block(da), MatXc(extract_block(d).adjoint())) < 1e-12);
}
