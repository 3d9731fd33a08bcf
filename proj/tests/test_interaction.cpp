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
#include "qufem/interaction.hpp"
#include "test_helpers.hpp"

using namespace qufem;
using namespace qufem::testing;

TEST_CASE("reference units of interaction") {
  const Mesh m = build_mesh(1, 1, 2);
  const MatXd a00 = uoi_reference(m.conn, 0, 0);
  MatXd expect = MatXd::Zero(4, 4);
  expect(0, 0) = expect(1, 1) = expect(2, 2) = 1.0;
  CHECK((a00 - expect).cwiseAbs().maxCoeff() == 0.0);

  const MatXd a10 = uoi_reference(m.conn, 1, 0);
  for (int e = 0; e < 3; ++e) CHECK(a10(e + 1, e) == 1.0);
  CHECK(a10.sum() == 3.0);

  const Mesh m3 = build_mesh(1, 3, 2);
  const MatXd b00 = uoi_reference(m3.conn, 0, 0);
  for (int i = 0; i < 16; ++i) {
    const double want = (i % 3 == 0 && i != 15) ? 1.0 : 0.0;
    CHECK(b00(i, i) == want);
  }
}

TEST_CASE("order-1 circuits match the brute-force oracle") {
  const int n = 3;
  const Mesh m = build_mesh(1, 1, n);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      BlockEncoding be = uoi_be_p1(n, j, k);
      CHECK(max_abs_diff(extract_block(be), uoi_reference(m.conn, j, k)) < 1e-12);
    }
  // Shift covariance: the (j,k) block is the shifted (0,0) block.
  const MatXc base = extract_block(uoi_be_p1(n, 0, 0));
  const MatXc s1 = shift_op(n, 1).op.to_matrix();
  CHECK(max_abs_diff(extract_block(uoi_be_p1(n, 1, 0)), MatXc(s1 * base)) < 1e-13);
  CHECK(max_abs_diff(extract_block(uoi_be_p1(n, 0, 1)), MatXc(base * s1.adjoint())) < 1e-13);

  // Reduced-count variant for the (1,1) self-interaction.
  const MatXc or11 = extract_block(uoi_be_p1_or11(n));
  CHECK(max_abs_diff(or11, uoi_reference(m.conn, 1, 1)) < 1e-13);

  // Periodic meshes: the (0,0) unit is the identity, the rest are shifts.
  CHECK(max_abs_diff(extract_block(uoi_be_p1(n, 0, 0, true)), MatXc::Identity(8, 8)) < 1e-14);
  CHECK(max_abs_diff(extract_block(uoi_be_p1(n, 1, 0, true)), s1) < 1e-14);
}

TEST_CASE("order-p circuits match the brute-force oracle") {
  for (int pn : {4, 6}) {
    const Mesh m = build_mesh(1, 3, pn / 2);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        BlockEncoding be = uoi_be_p(pn, 3, j, k);
        CHECK(be.ancillas == 2);
        CHECK(max_abs_diff(extract_block(be), uoi_reference(m.conn, j, k)) < 1e-12);
      }
  }
  // Shift covariance at order 3.
  {
    const int n = 4;
    const MatXc base = extract_block(uoi_be_p(n, 3, 0, 0));
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const MatXc sj = shift_op(n, j).op.to_matrix();
        const MatXc sk = shift_op(n, -k).op.to_matrix();
        CHECK(max_abs_diff(extract_block(uoi_be_p(n, 3, j, k)), MatXc(sj * base * sk)) < 1e-13);
      }
  }

  // The periodic variant keeps the top self-interaction entry.
  BlockEncoding periodic = uoi_be_p(4, 3, 0, 0, true);
  const MatXc block = extract_block(periodic);
  CHECK(std::abs(block(15, 15) - cplx(1, 0)) < 1e-13);
  CHECK(std::abs(block(0, 0) - cplx(1, 0)) < 1e-13);
  CHECK(std::abs(block(1, 1)) < 1e-13);

  CHECK_THROWS(uoi_be_p(5, 3, 0, 0));  // n not a multiple of log2(p+1)
}

TEST_CASE("indicator matrices and their factorization") {
  const int n = 4, p = 3;
  const Mesh m = build_mesh(1, p, 2);
  SUBCASE("columns hold the stride pattern") {
    const MatXc a0 = extract_block(indicator_be(n, p, 0));
    for (BasisIndex e = 0; e < m.params.numel; ++e) {
      CHECK(std::abs(a0(static_cast<Eigen::Index>(3 * e), static_cast<Eigen::Index>(e)) -
                     cplx(1, 0)) < 1e-13);
    }
    CHECK(a0.cwiseAbs().sum() == doctest::Approx(5.0));
    CHECK(max_abs_diff(a0, indicator_reference(m.conn, 0)) < 1e-12);
  }
  SUBCASE("product of indicators reproduces the unit of interaction") {
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        BlockEncoding prod = be_product(indicator_be(n, p, j), be_adjoint(indicator_be(n, p, k)));
        CHECK(max_abs_diff(extract_block(prod), uoi_reference(m.conn, j, k)) < 1e-12);
      }
  }
  SUBCASE("order one: the first indicator equals the first unit of interaction") {
    const Mesh m1 = build_mesh(1, 1, 3);
    const MatXc a0 = extract_block(indicator_be(3, 1, 0));
    CHECK(max_abs_diff(a0, uoi_reference(m1.conn, 0, 0)) < 1e-13);
  }
}

TEST_CASE("units of interaction are partial permutations") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{1, 3}, {3, 1}}) {
    const Mesh m = build_mesh(1, p, p == 1 ? k + 1 : 2);
    const int n = m.params.n;
    for (int j = 0; j <= p; ++j)
      for (int kk = 0; kk <= p; ++kk) {
        const MatXc block = p == 1 ? extract_block(uoi_be_p1(n, j, kk))
                                   : extract_block(uoi_be_p(n, p, j, kk));
        for (Eigen::Index r = 0; r < block.rows(); ++r) {
          int row_ones = 0;
          for (Eigen::Index c = 0; c < block.cols(); ++c) {
            const double v = std::abs(block(r, c));
            CHECK((v < 1e-12 || std::abs(v - 1.0) < 1e-12));
            if (v > 0.5) ++row_ones;
          }
          CHECK(row_ones <= 1);
        }
      }
  }
}
