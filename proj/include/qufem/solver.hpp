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

#include <optional>
#include <string>

#include "qufem/assembly.hpp"
#include "qufem/constraints.hpp"
#include "qufem/polynomial.hpp"

namespace qufem {

/// Coefficient bundle for the linear PDE
///   -div(D grad u) + k u = f,  u = g on the Dirichlet set,
///   D grad u . n = h on the Neumann set.
struct PDECoefficients {
  PolySpec diffusivity = PolySpec::constant(1.0);
  PolySpec reaction = PolySpec::constant(0.0);
  PolySpec body_force = PolySpec::constant(0.0);
  PolySpec neumann_flux = PolySpec::constant(0.0);
  PolySpec dirichlet = PolySpec::constant(0.0);
  // Boundary data may also be listed node by node ("dirichlet_values":
  // [[node, value], ...]); entries here take precedence over the polynomial.
  std::vector<std::pair<BasisIndex, double>> dirichlet_values;

  /// Throws unless the diffusivity stays bounded away from zero on the
  /// domain box (the coercivity requirement of the weak form).
  void validate() const;

  static PDECoefficients from_json_text(const std::string& text);
};

struct SolveReport {
  VecXd u;
  VecXd lambda;
  double u_norm = 0.0;            // recovered through the success probability
  double u_norm_direct = 0.0;
  double p_qlsp = 0.0;
  double kappa = 0.0;
  double residual = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Extracted matrix of an assembled array, applied column by column.
SpMatd extract_system(const AssembledArray& array);
SpMatd extract_system(const BlockSystem& system);

/// Direct classical solve plus the exact success-probability bookkeeping:
/// p = (beta/alpha)^2 ||L^-1 f/||f|| ||^2 and the norm identity
/// ||u|| = (alpha/beta) ||f|| sqrt(p).
SolveReport solve_qlsp(const SpMatd& system, const VecXd& rhs, double alpha, double beta_lower);

/// Spectral condition estimate: dense SVD at small sizes, power iteration
/// with a factorized inverse otherwise.
double condition_number(const SpMatd& m);

double smallest_singular_value(const SpMatd& m);

/// Mass-weighted observable r^T M u with nodal samples of r.
double observable(const PolySpec& r, const VecXd& u, int p, int n, int d);

}  // namespace qufem
