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

#include <string>

#include "qufem/block_encoding.hpp"
#include "qufem/elements.hpp"
#include "qufem/interaction.hpp"
#include "qufem/mesh.hpp"

namespace qufem {

enum class ArrayKind { kStiffness, kMass, kCustom };

struct AssembledArray {
  BlockEncoding be;
  double alpha_analytic = 0.0;  // sum |A^e_jk| (times d for the stiffness)
  ArrayKind kind = ArrayKind::kCustom;
};

/// Element-loop reference assembly; the oracle all quantum paths are tested
/// against.
SpMatd classical_assemble(const Connectivity& conn, const MatXd& elem_matrix);

/// Global array for constant elemental contributions in 1D: an LCU over all
/// (p+1)^2 units of interaction with the elemental entries as coefficients.
AssembledArray assemble_global_1d(const MatXd& elem_matrix, int p, int n,
                                  ArrayKind kind = ArrayKind::kCustom, bool periodic = false);

struct GlobalArraysDd {
  AssembledArray stiffness;
  AssembledArray mass;
};

/// d-dimensional global stiffness and mass from the tensor structure of the
/// 1D assemblies: the mass is a tensor chain, the stiffness an LCU of chains
/// with the 1D stiffness in one slot.
GlobalArraysDd assemble_global_dd(int d, int p, int n);

/// Coordinate-triplet text export (row col value per line).
std::string to_coordinate_text(const SpMatd& m);

}  // namespace qufem
