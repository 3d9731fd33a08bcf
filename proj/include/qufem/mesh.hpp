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

#include <set>
#include <string>
#include <vector>

#include "qufem/block_encoding.hpp"
#include "qufem/types.hpp"

namespace qufem {

/// Structured 1D mesh parameters replicated per dimension: 2^n nodal points,
/// order-p elements with p+1 local nodes, element width h = 1/numel.
struct MeshParams {
  int d = 1;
  int p = 1;
  int m = 1;          // ceil(log2(p+1))
  int n = 1;          // qubits per dimension
  BasisIndex numnp = 2;
  BasisIndex numel = 1;
  int nen = 2;
  double h = 1.0;

  double node_coord(BasisIndex i) const { return static_cast<double>(i) / (numnp - 1); }
};

/// Local-to-global map IX(j, e) = e*p + j for the structured 1D mesh.
struct Connectivity {
  int nen = 2;
  BasisIndex numel = 1;
  BasisIndex numnp = 2;
  int p = 1;

  BasisIndex ix(int j, BasisIndex e) const;
  bool injective_per_row() const;
};

struct Mesh {
  MeshParams params;
  Connectivity conn;
};

/// Builds the mesh with p = 2^m - 1 and numnp = 2^(m k).
Mesh build_mesh(int d, int p, int k);

/// Connectivity oracle |j>|e>|r> -> |j>|e>|r xor IX(j,e)> on m + n + n qubits
/// (output register most significant, then e, then j lowest).
Operator o_ix_oracle(const Connectivity& conn);

/// Compact variant |j>|e> -> |j>|(e p + j) mod 2^n>, a bijection on the full
/// register for odd p.
Operator o_ix_compact(const Connectivity& conn);

/// (N-1, ceil(log2(n+1)))-encoding of X = diag(0..N-1) as a Pauli-Z LCU.
BlockEncoding position_be(int n);

/// Position operator for coordinate axis i of a d-dimensional grid.
BlockEncoding position_be_dim(int i, int d, int n);

/// Hermitian-unitary (N-1, 1)-encoding of the same diagonal, used where a
/// Hermitian block-encoding is required (eigenvalue transforms).
BlockEncoding position_be_hermitian(int n);

/// (1,1)-encoding of the projector onto element indices below numel.
BlockEncoding element_projector_be(int n, int p);

/// Active / fixed / Neumann node bookkeeping over the full 2^(n d) grid.
/// Nodes outside `active` take no part in the physics and are pinned through
/// the constraint machinery; `fixed` is the Dirichlet-constrained subset of
/// the active nodes.
class DomainMask {
 public:
  DomainMask() : DomainMask(1, 1) {}
  DomainMask(int d, int n);

  int d() const { return d_; }
  int n() const { return n_; }
  BasisIndex grid_dim() const { return dim_of(n_ * d_); }
  BasisIndex side() const { return dim_of(n_); }

  void set_active(BasisIndex v, bool b) { active_[v] = b; }
  void set_fixed(BasisIndex v, bool b) { fixed_[v] = b; }
  void set_neumann(BasisIndex v, bool b) { neumann_[v] = b; }

  bool active(BasisIndex v) const { return active_[v]; }
  bool fixed(BasisIndex v) const { return fixed_[v]; }
  bool neumann(BasisIndex v) const { return neumann_[v]; }
  /// Interior = active and unconstrained; everything else is pinned.
  bool interior(BasisIndex v) const { return active_[v] && !fixed_[v]; }
  bool constrained(BasisIndex v) const { return !interior(v); }

  std::size_t interior_count() const;
  std::size_t fixed_count() const;

  /// Flags every active node touching an inactive neighbor (or the grid
  /// edge) as fixed; used for homogeneous Dirichlet problems on masked
  /// domains.
  void derive_fixed_from_active();

  static DomainMask full_square(int d, int n);                  // all active, edges fixed
  static DomainMask from_bitmap_text(const std::string& text);  // rows of 0/1
  static DomainMask from_bitmap_file(const std::string& path);
  std::string to_bitmap_text() const;

 private:
  int d_;
  int n_;
  std::vector<bool> active_, fixed_, neumann_;
};

struct BoundaryOracle {
  Operator u_b;            // |v>|b> -> |v>|b xor constrained(v)>
  BlockEncoding p_int;     // (1,1)-encoding of the interior projector
  BlockEncoding p_bd;      // (1,1)-encoding of its complement
};

BoundaryOracle boundary_oracle(const DomainMask& mask);

/// The builtin CAL-shaped mask on a 2^5 x 2^5 grid.
DomainMask cal_mask();

}  // namespace qufem
