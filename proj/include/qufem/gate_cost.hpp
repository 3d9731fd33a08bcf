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

#include <cstdint>

namespace qufem {

/// Symbolic Toffoli budget for a circuit fragment. Workspace qubits are
/// scratch registers restored to |0> and never post-selected, so they are
/// tracked separately from block-encoding ancillas.
struct GateCost {
  std::int64_t toffoli = 0;
  int extra_workspace_qubits = 0;

  GateCost& operator+=(const GateCost& o) {
    toffoli += o.toffoli;
    extra_workspace_qubits += o.extra_workspace_qubits;
    return *this;
  }
  friend GateCost operator+(GateCost a, const GateCost& b) { return a += b; }
  friend bool operator==(const GateCost&, const GateCost&) = default;
};

}  // namespace qufem
