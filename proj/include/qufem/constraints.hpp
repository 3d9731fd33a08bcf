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

#pragma once

#include <array>
#include <functional>

#include "qufem/block_encoding.hpp"
#include "qufem/mesh.hpp"
#include "qufem/polynomial.hpp"

namespace qufem {

/// Constrained operator on one extra qubit:
///   [[ L, I - P ], [ I - P, P ]]
/// with P the interior projector. The top block row carries the PDE, the
/// bottom row pins boundary values and parks interior multipliers at zero.
struct BlockSystem {
  BlockEncoding be;        // system_qubits = n + 1
  VecXd rhs;               // true stacked right-hand side (f, ubar), unnormalized
  VecXc rhs_state;         // equal-weight two-branch circuit state
  VecXd ubar;
  VecXd pint_diag;         // 1 on interior nodes
};

struct BlockSolution {
  VecXd u;
  VecXd lambda;
  double u_norm = 0.0;
  double lambda_norm = 0.0;
};

/// LCU of the four controlled block embeddings |i><j| (x) A_ij; the result
/// has subnormalization sum alpha_ij and max-ancillas + 3 ancillas.
BlockEncoding block_encode_partitioned(const std::array<std::array<BlockEncoding, 2>, 2>& blocks);

/// Single controlled embedding |i><j| (x) A on one extra system qubit,
/// an (alpha, m+1) encoding built from the flip / swap / controlled-apply
/// sandwich.
BlockEncoding block_embed_single(const BlockEncoding& be, int i, int j);

/// Saddle-form variant [[A, B], [B^dag, 0]] embedded on two extra qubits with
/// the tighter alpha + beta subnormalization.
BlockEncoding block_encode_saddle(const BlockEncoding& be_a, const BlockEncoding& be_b);

/// Builds the Lagrange-multiplier block system for Dirichlet data ubar
/// (supported on constrained nodes; other entries are zeroed).
BlockSystem lagrange_system(const BlockEncoding& be_l, const DomainMask& mask, const VecXd& ubar,
                            const VecXd& f = VecXd());

/// (|0>|f0> + |1>|f1>)/sqrt(2); a zero-flagged branch simply drops out,
/// leaving the other branch at half weight.
VecXc partitioned_rhs(const VecXc& f0, const VecXc& f1);

/// Row-replacement boundary conditions through projectors:
/// L_D = P L P + (I - P), b_D = P b - (L - I)(I - P) ubar.
std::pair<BlockEncoding, VecXd> projector_dirichlet(const BlockEncoding& be_l,
                                                    const DomainMask& mask, const VecXd& b,
                                                    const VecXd& ubar);

/// ubar from per-node boundary data; entries off the constrained set are zero.
VecXd dirichlet_state(const DomainMask& mask, const std::function<double(BasisIndex)>& g);

/// Polynomial path: evaluates g on the whole grid through the eigenvalue
/// transform of the position operators, then projects onto the boundary.
VecXd dirichlet_state_poly(const DomainMask& mask, const PolySpec& g);

BlockSolution split_block_solution(const VecXd& full);

}  // namespace qufem
