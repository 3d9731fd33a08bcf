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

#include "qufem/block_encoding.hpp"
#include "qufem/polynomial.hpp"

namespace qufem {

struct MqetResult {
  BlockEncoding be;
  double beta_one_norm = 0.0;  // LCU coefficient one-norm, <= (D+2)^(d-1)
};

/// Multivariate polynomial of a family of commuting diagonal block-encodings
/// sharing one index space: an LCU over Chebyshev-product terms
/// T_{s_0}(A_0) ... T_{s_{d-2}}(A_{d-2}) Q_s(A_{d-1}), with the Q_s obtained
/// by Chebyshev orthogonal projection of the target.
MqetResult mqet_transform(const std::vector<BlockEncoding>& bes, const PolySpec& poly);

/// Chebyshev coefficient tensor of `poly` over its domain box, computed by
/// Chebyshev-Gauss quadrature at 2*degree+1 nodes per axis.
std::vector<double> chebyshev_tensor(const PolySpec& poly);

}  // namespace qufem
