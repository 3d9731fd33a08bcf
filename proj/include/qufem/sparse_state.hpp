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

#include <utility>
#include <vector>

#include "qufem/types.hpp"

namespace qufem {

/// Sparse amplitude vector over the computational basis of `qubits` qubits.
///
/// Terms are kept sorted by basis index with duplicates merged. Operators in
/// this library are composition trees applied matrix-free; states produced by
/// them stay sparse because every register (coefficient ancillas, flags,
/// shifted system indices) only ever fans out by a small factor.
class SparseState {
 public:
  using Term = std::pair<BasisIndex, cplx>;

  explicit SparseState(int qubits) : qubits_(qubits) {}

  static SparseState basis(int qubits, BasisIndex index);
  static SparseState from_dense(int qubits, const VecXc& v);

  int qubits() const { return qubits_; }
  BasisIndex dim() const { return dim_of(qubits_); }

  void add(BasisIndex index, cplx amp) { terms_.emplace_back(index, amp); }
  void clear() { terms_.clear(); }

  /// Sorts by index, merges duplicates, and drops exact-zero amplitudes.
  void compress();

  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& terms() { return terms_; }

  double norm() const;
  VecXc to_dense() const;

 private:
  std::vector<Term> terms_;
  int qubits_;
};

}  // namespace qufem
