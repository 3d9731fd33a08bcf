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

#include "qufem/gates.hpp"

#include <stdexcept>
#include <vector>

namespace qufem {

namespace {

// Toffoli count of an n-qubit +/-1 incrementer with one borrowed workspace
// qubit. The constant is recorded in the cost tables alongside every sweep.
constexpr std::int64_t kShiftToffoliPerQubit = 4;

std::int64_t multi_cnot_toffoli(int n) {
  if (n <= 1) return 0;
  if (n == 2) return 1;
  return 2 * static_cast<std::int64_t>(n) - 3;
}

}  // namespace

CostedOperator shift_op(int n, long long k) {
  const BasisIndex dim = dim_of(n);
  const long long mod = static_cast<long long>(dim);
  long long kr = ((k % mod) + mod) % mod;
  std::vector<BasisIndex> map(dim);
  for (BasisIndex i = 0; i < dim; ++i)
    map[i] = static_cast<BasisIndex>((static_cast<long long>(i) + kr) % mod);
  // Interpreted as |k| repeated unit shifts after signed reduction mod 2^n.
  long long ksigned = kr > mod / 2 ? kr - mod : kr;
  const std::int64_t units = std::abs(ksigned);
  GateCost cost{units * kShiftToffoliPerQubit * n, units > 0 && n >= 2 ? 1 : 0};
  return {Operator::permutation(std::move(map)), cost};
}

CostedOperator multi_cnot(int n) {
  if (n < 1) throw std::invalid_argument("multi_cnot: need at least one control");
  const BasisIndex all_ones = dim_of(n) - 1;
  Operator op = Operator::flag_oracle(n, [all_ones](BasisIndex i) { return i == all_ones; });
  return {std::move(op), GateCost{multi_cnot_toffoli(n), n >= 3 ? 1 : 0}};
}

CostedOperator or_gate(int n) {
  if (n < 1) throw std::invalid_argument("or_gate: need at least one input");
  Operator op = Operator::flag_oracle(n, [](BasisIndex i) { return i == 0; });
  // X conjugation is free; the core is the same multi-controlled NOT.
  return {std::move(op), GateCost{multi_cnot_toffoli(n), n >= 3 ? 1 : 0}};
}

std::int64_t division_toffoli(int n, int m) {
  return 46ll * m * n - 46ll * m * m + 48ll * m - 2ll * n - 2ll;
}

CostedOperator mod_p_unitary(int n, int p) {
  if (p < 1) throw std::invalid_argument("mod_p_unitary: divisor must be positive");
  int m = 0;
  while ((1 << m) < p + 1) ++m;
  const BasisIndex sys_dim = dim_of(n);
  const BasisIndex dim = dim_of(n + m);
  std::vector<BasisIndex> map(dim);
  for (BasisIndex idx = 0; idx < dim; ++idx) {
    const BasisIndex i = idx & (sys_dim - 1);
    const BasisIndex r = idx >> n;
    const BasisIndex rem = static_cast<BasisIndex>(i % static_cast<BasisIndex>(p));
    map[idx] = i | ((r ^ rem) << n);
  }
  // The net permutation of the divide / copy / un-divide circuit; both the
  // division and its inverse are charged, the copy is CNOT-only.
  GateCost cost{2 * division_toffoli(n, m), n + m};
  return {Operator::permutation(std::move(map)), cost};
}

CostedOperator mul_mod_unitary(int n, int p) {
  if (p < 1 || p % 2 == 0)
    throw std::invalid_argument("mul_mod_unitary: multiplier must be odd and positive");
  const BasisIndex dim = dim_of(n);
  std::vector<BasisIndex> map(dim);
  for (BasisIndex e = 0; e < dim; ++e)
    map[e] = static_cast<BasisIndex>((e * static_cast<BasisIndex>(p)) % dim);
  int m = 0;
  while ((1 << m) < p + 1) ++m;
  // Multiply-then-reduce at the division circuit's O(nm) budget; p = 1 is
  // the identity and costs nothing.
  GateCost cost{p == 1 ? 0 : division_toffoli(n, m), p == 1 ? 0 : n + m};
  return {Operator::permutation(std::move(map)), cost};
}

CompressionLedger compression_ledger(int k_terms, int per_term_ancillas) {
  if (k_terms < 1) throw std::invalid_argument("compression_ledger: need at least one term");
  CompressionLedger ledger;
  ledger.naive_ancillas = k_terms * per_term_ancillas;
  if (k_terms == 1) {
    ledger.postselected_ancillas = per_term_ancillas;
    return ledger;
  }
  int logk = 0;
  while ((1 << logk) < k_terms) ++logk;
  // Coefficient register + shared term ancillas + counter seed + counter.
  ledger.postselected_ancillas = logk + per_term_ancillas + 1 + logk;
  ledger.cost = GateCost{static_cast<std::int64_t>(k_terms) * logk, 0};
  return ledger;
}

}  // namespace qufem
