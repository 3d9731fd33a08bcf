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

#include "qufem/assembly.hpp"
#include "qufem/mesh.hpp"
#include "qufem/polynomial.hpp"
#include "qufem/quadrature.hpp"

namespace qufem {

/// Diagonal block-encoding of the ell-th Gauss point of every element:
/// h * Pi * [ (x_ell + 1)/2 I + X ], subnormalization in [p, p + h].
BlockEncoding gauss_point_position_be(int ell, const QuadratureRule& rule, int p, int n);

/// Axis-i factor of the d-dimensional Gauss-point family (element projectors
/// on the other axes).
BlockEncoding gauss_point_position_be_dim(int ell, const QuadratureRule& rule, int p, int n,
                                          int axis, int d);

/// Assembles sum_jk A_j ( sum_ell c_{ell j k} f(X_ell) ) A_k^dag for a
/// stiffness- or mass-type bilinear form with coefficient f; quadrature
/// constants are precomputed classically.
AssembledArray assemble_variable_coeff(const PolySpec& f, ArrayKind bilinear_kind, int p, int n,
                                       int g, int d);

/// Element-loop quadrature assembly of the same operator; the reference the
/// quantum path is tested against.
SpMatd classical_variable_assemble(const PolySpec& f, ArrayKind bilinear_kind, int p, int n,
                                   int g, int d);

struct ForceAssembly {
  VecXd state;               // normalized assembled force direction
  double norm = 0.0;         // Euclidean norm of the nodal force vector
  double filling_fraction = 0.0;
  long long amplification_rounds = 0;
  bool zero_flagged = false;
};

/// Assembles the nodal force vector by applying the diagonal force operator
/// to the uniform superposition; Neumann data integrates over the flagged
/// boundary faces. Amplification is modeled as exact renormalization.
ForceAssembly assemble_force_vector(const PolySpec& f, const DomainMask& mask, int p, int n,
                                    int d, int g = 0);

/// Classical reference for the body-force vector.
VecXd classical_force_vector(const PolySpec& f, int p, int n, int d, int g);

/// Neumann boundary contribution h integrated over the faces whose nodes are
/// all flagged in mask.neumann: a (d-1)-dimensional assembly per face.
VecXd neumann_force_vector(const PolySpec& h_flux, const DomainMask& mask, int p, int g);

}  // namespace qufem
