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

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "qufem/sparse_state.hpp"
#include "qufem/types.hpp"

namespace qufem {

namespace detail {
class OpNode;
}

/// A linear operator on a power-of-two dimensional space, held as a lazy
/// composition tree and applied matrix-free to sparse states. Full matrices
/// are only materialized on demand and only at small dimensions.
class Operator {
 public:
  Operator() = default;

  int qubits() const;
  BasisIndex dim() const { return dim_of(qubits()); }
  bool valid() const { return node_ != nullptr; }

  /// In-place application; `adjoint` applies the Hermitian conjugate.
  void apply(SparseState& state, bool adjoint = false) const;

  /// Convenience application to a dense vector (used by small-dim callers).
  VecXc apply_dense(const VecXc& v, bool adjoint = false) const;

  /// Dense materialization. Guarded: refuses above 2^12.
  MatXc to_matrix() const;

  // ---- leaf constructors ----
  static Operator identity(int qubits);
  static Operator dense(MatXc u);
  /// Column j maps to row `map[j]` with amplitude `amps[j]` (default 1).
  static Operator permutation(std::vector<BasisIndex> map, std::vector<cplx> amps = {});
  static Operator diagonal(VecXc d);
  /// Diagonal given by a callback (avoids 2^n tables on wide registers).
  static Operator functional_diagonal(int qubits, std::function<cplx(BasisIndex)> entry);
  /// Flag-qubit oracle on 1+n qubits (flag most significant):
  /// |b>|j> -> |b xor pred(j)>|j>.
  static Operator flag_oracle(int n, const std::function<bool(BasisIndex)>& pred);
  /// Amplitude oracle on 1+n qubits (flag most significant). For each j the
  /// 2x2 acting on the flag is [[a_j, -s_j],[s_j, conj(a_j)]] with
  /// s_j = sqrt(1-|a_j|^2), so <0,j|U|0,j> = a_j.
  static Operator amplitude_flag(VecXc amps);
  /// Hermitian variant: per-j flag block [[a_j, s_j],[s_j, -a_j]] (a_j real).
  static Operator hermitian_amplitude_flag(VecXd amps);

  // ---- composite constructors ----
  /// Applies `first`, then `second` (i.e. the matrix product second*first).
  static Operator composed(Operator first, Operator second);
  static Operator composed(std::vector<Operator> in_application_order);
  /// a on the most significant qubits, b on the least significant (a (x) b).
  static Operator tensor(Operator a, Operator b);
  /// Embeds `op` into `total_qubits`, acting on the listed target qubits
  /// (targets[t] is the global index carrying op's t-th qubit, LSB first).
  static Operator embedded(Operator op, int total_qubits, std::vector<int> targets);
  /// Multiplexer: the top `ctrl_qubits` select a branch applied to the lower
  /// qubits; branch indices past the list act as identity.
  static Operator select(int ctrl_qubits, std::vector<Operator> branches);
  /// Applies `op` on `targets` only when every (qubit, value) control matches.
  static Operator controlled(int total_qubits, std::vector<std::pair<int, int>> controls,
                             Operator op, std::vector<int> targets);
  static Operator adjoint(Operator op);

 private:
  explicit Operator(std::shared_ptr<const detail::OpNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::OpNode> node_;
};

}  // namespace qufem
