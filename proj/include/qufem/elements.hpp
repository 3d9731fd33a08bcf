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
#include "qufem/types.hpp"

namespace qufem {

/// Interpolatory Lagrange basis of order p on the standard element [0, 1]
/// with equally spaced nodes x_m = m/p.
struct LagrangeElement {
  int p = 1;
  double node(int m) const { return static_cast<double>(m) / p; }
};

double basis_eval(int p, int j, double x);
double basis_grad(int p, int j, double x);

/// Elemental stiffness and mass matrices on the standard element, computed
/// with a quadrature order that integrates both exactly.
struct ElementalArrays {
  MatXd ke;
  MatXd me;
  double ke_abs_sum = 0.0;
  double me_abs_sum = 0.0;
};

ElementalArrays elemental_arrays(int p);

/// d-dimensional tensor extensions: the mass matrix is the d-fold Kronecker
/// power, the stiffness is the sum of terms with the 1D stiffness in one slot.
std::pair<MatXd, MatXd> tensor_elemental(int p, int d);

struct ElementalPrepOracles {
  StatePrepPair stiffness;
  StatePrepPair mass;
};

/// Prepare pairs for vec(ke) and vec(me), row-major (local row index in the
/// most significant register).
ElementalPrepOracles elemental_prep_oracles(const ElementalArrays& arrays);

/// The closed-form order-1 prepare circuits, emitted for cross-checking the
/// generic construction.
MatXc explicit_prep_stiffness_p1();
MatXc explicit_prep_tilde_stiffness_p1();
MatXc explicit_prep_mass_p1();

}  // namespace qufem
