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

#include "qufem/mesh.hpp"
#include "qufem/solver.hpp"

namespace qufem {

struct DemoResult {
  SolveReport report;
  VecXd u_classical;        // all-classical reference on the same mesh
  double rel_max_err = 0.0; // quantum vs classical, relative max-norm
  double lambda_interior_max = 0.0;
  double fixed_value_max_err = 0.0;
  int n = 0;
  std::int64_t toffoli = 0;  // budget of the extracted block system
  DomainMask mask;
  // Duct extras
  double center_velocity = 0.0;
  double flow_rate = 0.0;
  double l2_error_coarse = 0.0;  // against the series solution, grid n-1 or n
  double l2_error_fine = 0.0;
  double convergence_ratio = 0.0;
};

/// Classical bilinear-element solve over the active cells with pinned
/// constrained nodes; the reference for both demos.
VecXd classical_fem_solve(const DomainMask& mask, const VecXd& force, const VecXd& ubar);

/// Classical assembly of the 2D Laplacian over active cells only.
SpMatd classical_fem_matrix(const DomainMask& mask);

/// Poisson on the CAL-shaped domain with force x^0 x^1 by default: quantum
/// assembly, quadrature force vector, Lagrange-multiplier constraints.
DemoResult demo_poisson_cal(int n, const PolySpec& f, const DomainMask* mask = nullptr);

/// Unidirectional duct flow: -lap u = -dpdx/mu on the unit square with
/// no-slip walls, plus convergence diagnostics against the series solution.
DemoResult demo_square_duct(int n, double dpdx_over_mu);

/// 50-term double-series solution of -lap w = 1 on the unit square.
double duct_series_value(double x, double y, int terms = 50);

/// Writes "x_index,y_index,value" rows for a grid field.
void write_field_csv(const std::string& path, const VecXd& field, int n);

/// Min-max normalized grayscale heatmap.
void write_field_pgm(const std::string& path, const VecXd& field, int n);

void write_summary_json(const std::string& path, const DemoResult& result,
                        const std::string& name);

}  // namespace qufem
