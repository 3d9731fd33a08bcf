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

#include "qufem/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qufem {

SparseState SparseState::basis(int qubits, BasisIndex index) {
  SparseState s(qubits);
  if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
  s.add(index, cplx(1.0, 0.0));
  return s;
}

SparseState SparseState::from_dense(int qubits, const VecXc& v) {
  SparseState s(qubits);
  if (static_cast<BasisIndex>(v.size()) != s.dim())
    throw std::invalid_argument("dense vector dimension mismatch");
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] != cplx(0.0, 0.0)) s.add(static_cast<BasisIndex>(i), v[i]);
  return s;
}

void SparseState::compress() {
  if (terms_.empty()) return;
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    BasisIndex idx = terms_[i].first;
    cplx sum = terms_[i].second;
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].first == idx) sum += terms_[j++].second;
    // Keep anything representable; only denormal dust is dropped.
    if (std::abs(sum.real()) > 1e-300 || std::abs(sum.imag()) > 1e-300)
      terms_[out++] = {idx, sum};
    i = j;
  }
  terms_.resize(out);
}

double SparseState::norm() const {
  double s = 0.0;
  for (const auto& [idx, amp] : terms_) s += std::norm(amp);
  return std::sqrt(s);
}

VecXc SparseState::to_dense() const {
  if (qubits_ > 24) throw std::length_error("state too large to densify");
  VecXc v = VecXc::Zero(static_cast<Eigen::Index>(dim()));
  for (const auto& [idx, amp] : terms_) v[static_cast<Eigen::Index>(idx)] += amp;
  return v;
}

}  // namespace qufem
