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

#include "qufem/block_encoding.hpp"
#include "qufem/polynomial.hpp"

namespace qufem {

/// Phase factors realizing a definite-parity polynomial as the corner entry
/// of the signal-processing product.
struct QSPPhases {
  VecXd phases;   // length D+1
  int parity = 0; // D mod 2
  PolySpec target;
  double residual = 0.0;
};

/// Exact-backend transform of a diagonal block-encoding: the result encodes
/// diag(q(lambda_i)) with subnormalization q.sup_norm_bound, where lambda_i
/// are the encoded diagonal entries. Throws on non-diagonal input.
BlockEncoding poly_transform_diagonal(const BlockEncoding& be, const PolySpec& poly);

/// Reads off the encoded diagonal (alpha * corner column entries), verifying
/// that the block really is diagonal.
VecXd extract_diagonal(const BlockEncoding& be);

/// Finds phases for a definite-parity target with |P| <= 1 on [-1,1] by
/// Gauss-Newton on Chebyshev nodes. Throws if degree > 16, the parity is
/// mixed, or the residual stays above 1e-8.
QSPPhases qsp_phases(const PolySpec& poly);

/// Signal-processing circuit applied to a Hermitian block-encoding: one flag
/// qubit, projector-controlled phase rotations interleaved with the
/// reflected walk operator. The target polynomial acts on the rescaled
/// spectrum of the encoded block.
BlockEncoding qsp_apply(const BlockEncoding& be, const QSPPhases& phases);

/// Reference value of the signal-processing corner entry at scalar x.
cplx qsp_unitary_entry(const VecXd& phases, double x);

/// Hermitian-unitary (alpha, 1)-encoding of an arbitrary real diagonal with
/// |values| <= alpha.
BlockEncoding hermitian_diagonal_be(const VecXd& values, double alpha);

}  // namespace qufem
