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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qufem {

using cplx = std::complex<double>;
using BasisIndex = std::uint64_t;

using MatXc = Eigen::MatrixXcd;
using MatXd = Eigen::MatrixXd;
using VecXc = Eigen::VectorXcd;
using VecXd = Eigen::VectorXd;
using SpMatd = Eigen::SparseMatrix<double>;

inline constexpr BasisIndex dim_of(int qubits) { return BasisIndex{1} << qubits; }

}  // namespace qufem
