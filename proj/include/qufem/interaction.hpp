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
#include "qufem/mesh.hpp"

namespace qufem {

/// Brute-force unit of interaction sum_e |IX(j,e)><IX(k,e)| — the reference
/// every circuit construction is tested against.
MatXd uoi_reference(const Connectivity& conn, int j, int k);

/// Brute-force local-to-global indicator sum_e |IX(j,e)><e|.
MatXd indicator_reference(const Connectivity& conn, int j);

/// (1,1)-encoding of the order-1 unit of interaction via the multi-controlled
/// NOT flag, shifted into place. The periodic variant drops the flag.
BlockEncoding uoi_be_p1(int n, int j, int k, bool periodic = false);

/// Dedicated reduced-Toffoli circuit for the (1,1) self-interaction of local
/// node 1 at order 1 (OR-gate form).
BlockEncoding uoi_be_p1_or11(int n);

/// (1,2)-encoding of the order-p unit of interaction: a remainder flag from
/// the mod-p unitary plus a top-index flag, shifted into place.
BlockEncoding uoi_be_p(int n, int p, int j, int k, bool periodic = false);

/// (1,1)-encoding of the indicator matrix from the element-bound comparator
/// flag and the shifted multiply-mod map.
BlockEncoding indicator_be(int n, int p, int j);

}  // namespace qufem
