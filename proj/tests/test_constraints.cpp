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

#include "qufem/assembly.hpp"
#include "qufem/constraints.hpp"
#include "qufem/solver.hpp"
#include "test_helpers.hpp"

using namespace qufem;
using namespace qufem::testing;

namespace {

MatXc kron2x2_block(const MatXc& a00, const MatXc& a01, const MatXc& a10, const MatXc& a11) {
  const Eigen::Index n = a00.rows();
  MatXc m = MatXc::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a00;
  m.topRightCorner(n, n) = a01;
  m.bottomLeftCorner(n, n) = a10;
  m.bottomRightCorner(n, n) = a11;
  return m;
}

BlockEncoding zero_be(int n) {
  return BlockEncoding{
      Operator::amplitude_flag(VecXc::Zero(static_cast<Eigen::Index>(dim_of(n)))),
      1.0, 1, 0.0, n, {}};
}

}  // namespace

TEST_CASE("single-block embedding lands in its quadrant only") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      BlockEncoding a = random_diagonal_be(2, rng);
      BlockEncoding embedded = block_embed_single(a, i, j);
      CHECK(embedded.system_qubits == 3);
      CHECK(embedded.ancillas == a.ancillas + 1);
      const MatXc got = extract_block(embedded);
      const MatXc ab = extract_block(a);
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const MatXc quadrant = got.block(4 * k, 4 * l, 4, 4);
          if (k == i && l == j)
            CHECK(max_abs_diff(quadrant, ab) < 1e-12);
          else
            CHECK(quadrant.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("controlled block embedding identity") {
  std::mt19937_64 rng(5);
  std::array<std::array<BlockEncoding, 2>, 2> blocks = {
      {{random_diagonal_be(2, rng), random_permutation_be(2, rng)},
       {random_diagonal_be(2, rng), random_diagonal_be(2, rng)}}};
  // Through the full partitioned encoding, each block lands in its quadrant.
  BlockEncoding full = block_encode_partitioned(blocks);
  const MatXc got = extract_block(full);
  const MatXc want =
      kron2x2_block(extract_block(blocks[0][0]), extract_block(blocks[0][1]),
                    extract_block(blocks[1][0]), extract_block(blocks[1][1]));
  CHECK(max_abs_diff(got, want) < 1e-10);
  CHECK(full.alpha == doctest::Approx(4.0));
  CHECK(full.ancillas == 1 + 1 + 2);  // inner + pair ancilla + coefficients
}

TEST_CASE("partitioned encodings of structured systems") {
  std::mt19937_64 rng(9);
  SUBCASE("block diagonal repetition") {
    BlockEncoding a = random_diagonal_be(3, rng);
    std::array<std::array<BlockEncoding, 2>, 2> blocks = {{{a, zero_be(3)}, {zero_be(3), a}}};
    BlockEncoding full = block_encode_partitioned(blocks);
    const MatXc ab = extract_block(a);
    const MatXc want = Eigen::kroneckerProduct(MatXc::Identity(2, 2), ab).eval();
    CHECK(max_abs_diff(extract_block(full), want) < 1e-10);
  }
  SUBCASE("Hermitian off-diagonal embedding") {
    BlockEncoding b = random_permutation_be(3, rng);
    std::array<std::array<BlockEncoding, 2>, 2> blocks = {
        {{zero_be(3), b}, {be_adjoint(b), zero_be(3)}}};
    BlockEncoding full = block_encode_partitioned(blocks);
    const MatXc bb = extract_block(b);
    const MatXc want = kron2x2_block(MatXc::Zero(8, 8), bb, bb.adjoint(), MatXc::Zero(8, 8));
    CHECK(max_abs_diff(extract_block(full), want) < 1e-10);
    const MatXc got = extract_block(full);
    CHECK(max_abs_diff(got, MatXc(got.adjoint())) < 1e-10);
  }
}

TEST_CASE("saddle-form encoding carries alpha + beta") {
  std::mt19937_64 rng(13);
  BlockEncoding a = random_diagonal_be(2, rng);
  a.alpha = 1.5;
  BlockEncoding b = random_diagonal_be(2, rng);
  BlockEncoding saddle = block_encode_saddle(a, b);
  CHECK(saddle.alpha == doctest::Approx(2.5));
  const MatXc ab = extract_block(a);
  const MatXc bb = extract_block(b);
  const Eigen::Index n = ab.rows();
  MatXc want = MatXc::Zero(4 * n, 4 * n);
  want.block(0, 0, n, n) = ab;
  want.block(0, n, n, n) = bb;
  want.block(n, 0, n, n) = bb.adjoint();
  want.block(n, 2 * n, n, n) = MatXc::Identity(n, n);
  want.block(2 * n, n, n, n) = MatXc::Identity(n, n);
  want.block(2 * n, 3 * n, n, n) = MatXc::Identity(n, n);
  want.block(3 * n, 2 * n, n, n) = MatXc::Identity(n, n);
  want.block(3 * n, 3 * n, n, n) = MatXc::Identity(n, n);
  CHECK(max_abs_diff(extract_block(saddle), want) < 1e-10);
}

TEST_CASE("lagrange block system structure") {
  const int n = 4;
  DomainMask mask = DomainMask::full_square(1, n);
  std::mt19937_64 rng(17);
  BlockEncoding l = random_diagonal_be(n, rng);
  const Eigen::Index dim = 16;

  VecXd ubar = VecXd::Zero(dim);
  ubar[0] = 0.3;
  ubar[dim - 1] = -0.8;
  ubar[3] = 9.9;  // interior entry must be ignored
  VecXd f = VecXd::Zero(dim);
  for (int i = 0; i < dim; ++i) f[i] = std::sin(i + 1.0);

  BlockSystem sys = lagrange_system(l, mask, ubar, f);
  CHECK(sys.ubar[3] == 0.0);
  CHECK(sys.ubar[0] == doctest::Approx(0.3));

  const MatXc got = extract_block(sys.be);
  MatXc pint = MatXc::Zero(dim, dim), pbd = MatXc::Zero(dim, dim);
  for (int v = 0; v < dim; ++v) {
    pint(v, v) = mask.interior(v) ? 1.0 : 0.0;
    pbd(v, v) = 1.0 - pint(v, v).real();
  }
  const MatXc want = kron2x2_block(extract_block(l), pbd, pbd, pint);
  CHECK(max_abs_diff(got, want) < 1e-10);

  // Hermitian L gives a Hermitian block matrix.
  CHECK(max_abs_diff(got, MatXc(got.adjoint())) < 1e-10);

  // Stacked right-hand side.
  CHECK((sys.rhs.head(dim) - f).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sys.rhs.tail(dim) - sys.ubar).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("block extraction against direct Kronecker assembly on random diagonals") {
  std::mt19937_64 rng(19);
  for (int n = 2; n <= 5; ++n) {
    DomainMask mask = DomainMask::full_square(1, n);
    BlockEncoding l = random_diagonal_be(n, rng);
    BlockSystem sys = lagrange_system(l, mask, VecXd());
    const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
    MatXc pint = MatXc::Zero(dim, dim), pbd = MatXc::Zero(dim, dim);
    for (Eigen::Index v = 0; v < dim; ++v) {
      pint(v, v) = mask.interior(static_cast<BasisIndex>(v)) ? 1.0 : 0.0;
      pbd(v, v) = 1.0 - pint(v, v).real();
    }
    const MatXc want = kron2x2_block(extract_block(l), pbd, pbd, pint);
    CHECK(max_abs_diff(extract_block(sys.be), want) < 1e-10);
  }
}

TEST_CASE("unconstrained block system decouples") {
  // With nothing pinned the top row solves L u = f alone and the bottom row
  // parks every multiplier at zero.
  const int n = 3;
  DomainMask open(1, n);
  const ElementalArrays arrays = elemental_arrays(1);
  AssembledArray mass = assemble_global_1d(arrays.me, 1, n, ArrayKind::kMass);
  VecXd f(8);
  for (int i = 0; i < 8; ++i) f[i] = 1.0 + 0.1 * i;
  BlockSystem sys = lagrange_system(mass.be, open, VecXd(), f);
  SpMatd block = extract_system(sys);
  SolveReport rep = solve_qlsp(block, sys.rhs, sys.be.alpha, smallest_singular_value(block));
  BlockSolution sol = split_block_solution(rep.u);
  const MatXd m = MatXd(extract_block(mass.be).real());
  const VecXd u_direct = m.lu().solve(f);
  CHECK((sol.u - u_direct).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(sol.lambda.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("partitioned vector preparation") {
  std::mt19937_64 rng(23);
  VecXc f0 = random_state(3, rng);
  VecXc f1 = random_state(3, rng);
  const VecXc out = partitioned_rhs(f0, f1);
  CHECK(std::abs(out.norm() - 1.0) < 1e-12);
  for (int j = 0; j < 8; ++j) {
    CHECK(std::abs(out[j] - f0[j] / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(out[8 + j] - f1[j] / std::sqrt(2.0)) < 1e-12);
  }

  SUBCASE("equal halves factor into a plus state") {
    const VecXc both = partitioned_rhs(f0, f0);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(both[j] - both[8 + j]) < 1e-12);
  }
  SUBCASE("zero-flagged branch keeps half weight") {
    const VecXc out2 = partitioned_rhs(f0, VecXc::Zero(8));
    CHECK(std::abs(out2.norm() - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(out2.tail(8).norm() == 0.0);
  }
  SUBCASE("unnormalized input throws") {
    CHECK_THROWS(partitioned_rhs(2.0 * f0, f1));
  }
}

TEST_CASE("boundary conditions by projector and by multipliers agree") {
  const int n = 4;
  const Eigen::Index dim = 16;
  DomainMask mask = DomainMask::full_square(1, n);
  const ElementalArrays arrays = elemental_arrays(1);
  AssembledArray stiff = assemble_global_1d(arrays.ke, 1, n, ArrayKind::kStiffness);

  VecXd f(dim);
  for (int i = 0; i < dim; ++i) f[i] = 0.2 + 0.05 * i;
  VecXd ubar = VecXd::Zero(dim);

  SUBCASE("homogeneous ends match the classical row-replacement solve") {
    // Classical route: replace the constrained rows by identity pins.
    MatXd k = MatXd(extract_block(stiff.be).real());
    VecXd rhs = f;
    for (int v : {0, 15}) {
      k.row(v).setZero();
      k(v, v) = 1.0;
      rhs[v] = 0.0;
    }
    const VecXd u_classical = k.lu().solve(rhs);

    // Multiplier route.
    BlockSystem sys = lagrange_system(stiff.be, mask, ubar, f);
    SpMatd block = extract_system(sys);
    SolveReport rep = solve_qlsp(block, sys.rhs, sys.be.alpha, smallest_singular_value(block));
    BlockSolution sol = split_block_solution(rep.u);
    CHECK((sol.u - u_classical).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(sol.u[0]) < 1e-9);
    CHECK(std::abs(sol.u[15]) < 1e-9);
    // Interior multipliers are parked at zero.
    for (int v = 1; v < 15; ++v) CHECK(std::abs(sol.lambda[v]) < 1e-9);
  }
}

TEST_CASE("projector route details") {
  const int n = 3;
  const Eigen::Index dim = 8;
  DomainMask mask = DomainMask::full_square(1, n);
  const ElementalArrays arrays = elemental_arrays(1);
  AssembledArray stiff = assemble_global_1d(arrays.ke, 1, n, ArrayKind::kStiffness);

  VecXd f(dim);
  for (int i = 0; i < dim; ++i) f[i] = std::cos(0.7 * i);
  VecXd ubar = VecXd::Zero(dim);
  ubar[0] = 0.5;
  ubar[7] = -0.25;

  auto [l_dirich, b_dirich] = projector_dirichlet(stiff.be, mask, f, ubar);
  const MatXd ld = extract_block(l_dirich).real();

  SUBCASE("boundary rows become identity rows") {
    for (int c = 0; c < dim; ++c) {
      CHECK(ld(0, c) == doctest::Approx(c == 0 ? 1.0 : 0.0).epsilon(1e-10));
      CHECK(ld(7, c) == doctest::Approx(c == 7 ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
  SUBCASE("projector solution equals the multiplier solution on every node") {
    const VecXd u_proj = ld.lu().solve(b_dirich);
    BlockSystem sys = lagrange_system(stiff.be, mask, ubar, f);
    SpMatd block = extract_system(sys);
    SolveReport rep = solve_qlsp(block, sys.rhs, sys.be.alpha, smallest_singular_value(block));
    BlockSolution sol = split_block_solution(rep.u);
    CHECK((sol.u - u_proj).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(sol.u[0] - 0.5) < 1e-9);
    CHECK(std::abs(sol.u[7] + 0.25) < 1e-9);
  }
  SUBCASE("identity projector leaves the operator alone") {
    DomainMask open(1, n);  // nothing constrained
    auto [l_same, b_same] = projector_dirichlet(stiff.be, open, f, VecXd());
    CHECK(max_abs_diff(extract_block(l_same), extract_block(stiff.be)) < 1e-10);
    CHECK((b_same - f).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dirichlet state preparation") {
  const int n = 3;
  DomainMask mask = DomainMask::full_square(1, n);
  SUBCASE("constant data") {
    const VecXd u0 = dirichlet_state(mask, [](BasisIndex) { return 0.0; });
    CHECK(u0.cwiseAbs().maxCoeff() == 0.0);
    const VecXd u1 = dirichlet_state(mask, [](BasisIndex) { return 1.0; });
    VecXd expect = VecXd::Zero(8);
    expect[0] = expect[7] = 1.0;
    CHECK((u1 - expect).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("polynomial path equals the direct path for g(x) = x") {
    const VecXd direct =
        dirichlet_state(mask, [](BasisIndex v) { return static_cast<double>(v) / 7.0; });
    PolySpec g = PolySpec::monomial_1d({0.0, 1.0}, 0.0, 1.0, 1.0);
    const VecXd poly = dirichlet_state_poly(mask, g);
    CHECK((direct - poly).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("two-dimensional polynomial path") {
    DomainMask square = DomainMask::full_square(2, 2);
    PolySpec g;
    g.dims = 2;
    g.degree = 1;
    g.coeffs = {0.25, 1.0, -0.5, 0.0};  // 0.25 + x - y/2
    g.sup_norm_bound = 1.25;
    const VecXd poly = dirichlet_state_poly(square, g);
    const VecXd direct = dirichlet_state(square, [&](BasisIndex v) {
      const double x = static_cast<double>(v & 3u) / 3.0;
      const double y = static_cast<double>(v >> 2) / 3.0;
      return 0.25 + x - 0.5 * y;
    });
    CHECK((direct - poly).cwiseAbs().maxCoeff() < 1e-10);
  }
}
