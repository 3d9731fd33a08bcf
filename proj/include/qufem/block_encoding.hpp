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

#include <vector>

#include "qufem/gate_cost.hpp"
#include "qufem/operator.hpp"
#include "qufem/types.hpp"

namespace qufem {

/// An (alpha, m, epsilon) block-encoding: `unitary` acts on
/// system_qubits + ancillas qubits, the ancilla register occupies the most
/// significant positions, and the encoded matrix is
/// alpha * (<0|^m (x) I) unitary (|0>^m (x) I) up to epsilon.
struct BlockEncoding {
  Operator unitary;
  double alpha = 1.0;
  int ancillas = 0;
  double epsilon = 0.0;
  int system_qubits = 0;
  GateCost cost{};
};

/// Prepare-oracle pair for an LCU coefficient vector y. Column 0 of `prep`
/// and row 0 of `prep_tilde` hold sqrt(y_j)/sqrt(||y||_1) with the principal
/// square root sqrt(r e^{i theta}) = sqrt(r) e^{i theta/2}, theta in [0, 2pi).
struct StatePrepPair {
  VecXc coeffs;
  Operator prep;
  Operator prep_tilde;
  double beta_norm = 0.0;
  int pad_qubits = 0;
  GateCost cost{};
};

struct PostselectResult {
  VecXc state;
  double success_prob = 0.0;
  double raw_norm = 0.0;
  bool zero_flagged = false;
};

BlockEncoding be_identity(int system_qubits);

/// Wraps a bare unitary as a (1, 0)-block-encoding of itself.
BlockEncoding be_of_unitary(Operator u, GateCost cost = {});

/// Recovers the encoded matrix by applying the unitary to |0>^m |j> for each
/// basis state j and projecting onto the ancilla-zero subspace.
MatXc extract_block(const BlockEncoding& be);

/// Same extraction, kept sparse (usable up to 2^13 system dimensions).
Eigen::SparseMatrix<cplx> extract_block_sparse(const BlockEncoding& be);

/// Max-norm check |extract(be) - target| <= epsilon + 1e-9. Optionally also
/// checks the spectral norm (only sensible for dims <= 2^10).
bool validate_be(const BlockEncoding& be, const MatXc& target, bool spectral = false);

/// (alpha beta, a+b) encoding of A*B; ancilla registers are concatenated.
BlockEncoding be_product(const BlockEncoding& u, const BlockEncoding& v);

BlockEncoding be_adjoint(const BlockEncoding& u);

/// Linear combination sum_j y_j A_j with y = pair.coeffs. Terms with unequal
/// subnormalizations are handled by folding alpha_j into the coefficient
/// vector, in which case a fresh prepare pair is synthesized internally.
BlockEncoding be_lcu(const std::vector<BlockEncoding>& terms, const StatePrepPair& pair);

/// (alpha beta, a+b) encoding of A (x) B, ancillas regrouped on top.
BlockEncoding be_tensor(const BlockEncoding& u, const BlockEncoding& v);

/// (1,1) encoding of a 1-sparse matrix with A_{c(j), j} = amps_j, built from
/// an amplitude oracle followed by the permutation oracle for c.
BlockEncoding be_sparse1(const std::vector<BasisIndex>& column_to_row, const VecXc& amps);

/// Applies the encoded matrix to a normalized state and post-selects the
/// ancilla-zero outcome. success_prob = ||A psi / alpha||^2.
PostselectResult apply_postselected(const BlockEncoding& be, const VecXc& psi);

StatePrepPair make_prep_pair(const VecXc& y);

}  // namespace qufem
