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

#include "qufem/gate_cost.hpp"
#include "qufem/operator.hpp"

namespace qufem {

/// Circuit primitives are realized semantically (as the permutations they
/// implement) with Toffoli budgets attached from closed-form counts.
struct CostedOperator {
  Operator op;
  GateCost cost{};
};

/// Modular shift S^k on n qubits: |i> -> |(i+k) mod 2^n>.
CostedOperator shift_op(int n, long long k);

/// C^n(NOT) on n controls plus one target (target most significant):
/// flips the target iff all controls are 1. Barenco-style count.
CostedOperator multi_cnot(int n);

/// Reversible OR flag on n inputs plus one flag qubit (most significant):
/// the flag toggles iff every input qubit is 0.
CostedOperator or_gate(int n);

/// |i>_n |r>_m -> |i>_n |r xor (i mod p)>_m with m = ceil(log2(p+1)); the
/// remainder register occupies the top m qubits. The division workspace is
/// uncomputed internally and excluded from block-encoding ancilla counts.
CostedOperator mod_p_unitary(int n, int p);

/// |e> -> |(e*p) mod 2^n> on n qubits; requires odd p so the map is a
/// bijection on the full register.
CostedOperator mul_mod_unitary(int n, int p);

/// Toffoli count of the restoring-division circuit for an n-bit dividend and
/// m-bit divisor.
std::int64_t division_toffoli(int n, int m);

/// Post-selected ancilla count when k LCU terms share their block-encoding
/// ancillas through a compression gadget (counter register + shared flags),
/// instead of paying per_term_ancillas for each term.
struct CompressionLedger {
  int postselected_ancillas = 0;
  int naive_ancillas = 0;
  GateCost cost{};
};
CompressionLedger compression_ledger(int k_terms, int per_term_ancillas);

}  // namespace qufem
