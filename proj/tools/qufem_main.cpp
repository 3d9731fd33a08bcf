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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qufem/demos.hpp"
#include "qufem/gates.hpp"
#include "qufem/qsp.hpp"
#include "qufem/variable_assembly.hpp"

namespace {

using namespace qufem;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int mesh_m_for(int p) {
  int m = 0;
  while ((1 << m) < p + 1) ++m;
  return m;
}

int run_assemble(int d, int p, int n, const std::string& coeff_file, const std::string& kind_name,
                 const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const ArrayKind kind = kind_name == "mass" ? ArrayKind::kMass : ArrayKind::kStiffness;
  AssembledArray array;
  SpMatd reference;
  if (coeff_file.empty()) {
    GlobalArraysDd arrays = assemble_global_dd(d, p, n);
    array = kind == ArrayKind::kMass ? arrays.mass : arrays.stiffness;
    if (d == 1) {
      const ElementalArrays elem = elemental_arrays(p);
      const Mesh mesh = build_mesh(1, p, n / mesh_m_for(p));
      reference = classical_assemble(mesh.conn, kind == ArrayKind::kMass ? elem.me : elem.ke);
    }
  } else {
    PDECoefficients coeffs = PDECoefficients::from_json_text(read_file(coeff_file));
    const PolySpec& f = kind == ArrayKind::kMass ? coeffs.reaction : coeffs.diffusivity;
    array = assemble_variable_coeff(f, kind, p, n, 0, d);
    reference = classical_variable_assemble(f, kind, p, n, 0, d);
  }
  const SpMatd extracted = extract_system(array);
  std::ofstream coo(out_dir + "/matrix.txt");
  coo << to_coordinate_text(extracted);
  double err = 0.0;
  if (reference.rows() == extracted.rows())
    err = (MatXd(extracted) - MatXd(reference)).cwiseAbs().maxCoeff();
  std::cout << "assembled " << (kind == ArrayKind::kMass ? "mass" : "stiffness") << " d=" << d
            << " p=" << p << " n=" << n << "\n"
            << "  alpha = " << array.be.alpha << "\n"
            << "  ancillas = " << array.be.ancillas << "\n"
            << "  toffoli = " << array.be.cost.toffoli << "\n";
  if (reference.rows() == extracted.rows())
    std::cout << "  max deviation from classical assembly = " << err << "\n";
  std::cout << "  wrote " << out_dir << "/matrix.txt\n";
  return err < 1e-8 ? 0 : 1;
}

int run_demo(const std::string& which, int n, const std::string& mask_file,
             const std::string& out_dir, double dpdx_over_mu, bool pgm) {
  std::filesystem::create_directories(out_dir);
  DemoResult result;
  if (which == "cal") {
    PolySpec f;
    f.dims = 2;
    f.degree = 1;
    f.coeffs = {0.0, 0.0, 0.0, 1.0};
    f.sup_norm_bound = 1.0;
    if (mask_file.empty()) {
      result = demo_poisson_cal(n, f);
    } else {
      DomainMask mask = DomainMask::from_bitmap_file(mask_file);
      result = demo_poisson_cal(n, f, &mask);
    }
  } else {
    result = demo_square_duct(n, dpdx_over_mu);
  }
  write_field_csv(out_dir + "/u.csv", result.report.u, result.n);
  write_field_csv(out_dir + "/lambda.csv", result.report.lambda, result.n);
  write_summary_json(out_dir + "/summary.json", result, which);
  if (pgm) {
    write_field_pgm(out_dir + "/u.pgm", result.report.u, result.n);
    write_field_pgm(out_dir + "/lambda.pgm", result.report.lambda, result.n);
  }
  const bool norm_ok =
      std::abs(result.report.u_norm - result.report.u_norm_direct) <=
      1e-9 * std::max(1.0, result.report.u_norm_direct);
  std::cout << which << " demo at n=" << n << "\n"
            << "  quantum vs classical rel max err = " << result.rel_max_err << "\n"
            << "  recovered |u| = " << result.report.u_norm << " (direct "
            << result.report.u_norm_direct << ")\n"
            << "  p_qlsp = " << result.report.p_qlsp << ", kappa = " << result.report.kappa
            << "\n  wrote " << out_dir << "/{u.csv,lambda.csv,summary.json}\n";
  if (which == "duct")
    std::cout << "  center velocity = " << result.center_velocity
              << ", flow rate = " << result.flow_rate
              << ", L2 convergence ratio = " << result.convergence_ratio << "\n";
  return (result.rel_max_err < 1e-8 && norm_ok) ? 0 : 1;
}

int run_cost(const std::string& construct, int n_lo, int n_hi, int p, const std::string& out) {
  std::ostringstream csv;
  csv << "construct,n,m,p,toffoli,ancillas\n";
  int m = mesh_m_for(p);
  for (int n = n_lo; n <= n_hi; ++n) {
    std::int64_t toffoli = 0;
    int ancillas = 0;
    if (construct == "shift") {
      toffoli = shift_op(n, 1).cost.toffoli;
    } else if (construct == "multi_cnot") {
      toffoli = multi_cnot(n).cost.toffoli;
      ancillas = 1;
    } else if (construct == "or_gate") {
      toffoli = or_gate(n).cost.toffoli;
      ancillas = 1;
    } else if (construct == "u_div") {
      toffoli = division_toffoli(n, m);
    } else if (construct == "mod_p") {
      toffoli = mod_p_unitary(n, (1 << m) - 1).cost.toffoli;
    } else if (construct == "uoi_p1") {
      BlockEncoding be = uoi_be_p1(n, 1, 0);
      toffoli = be.cost.toffoli;
      ancillas = be.ancillas;
    } else if (construct == "uoi_p") {
      if (n % m != 0) continue;
      BlockEncoding be = uoi_be_p(n, (1 << m) - 1, 1, 0);
      toffoli = be.cost.toffoli;
      ancillas = be.ancillas;
    } else if (construct == "assembly_1d") {
      if (n % m != 0) continue;
      const int pp = (1 << m) - 1;
      AssembledArray array = assemble_global_1d(elemental_arrays(pp).ke, pp, n);
      toffoli = array.be.cost.toffoli;
      ancillas = compression_ledger((pp + 1) * (pp + 1), pp == 1 ? 1 : 2).postselected_ancillas;
    } else {
      std::cerr << "unknown construct " << construct << "\n";
      return 2;
    }
    csv << construct << "," << n << "," << m << "," << p << "," << toffoli << "," << ancillas
        << "\n";
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream file(out);
    file << csv.str();
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int run_verify() {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  // Units of interaction against the brute-force reference.
  for (int p : {1, 3}) {
    const int n = p == 1 ? 4 : 4;
    const Mesh mesh = build_mesh(1, p, n / mesh_m_for(p));
    bool ok = true;
    for (int j = 0; j <= p; ++j)
      for (int k = 0; k <= p; ++k) {
        BlockEncoding be = p == 1 ? uoi_be_p1(n, j, k) : uoi_be_p(n, p, j, k);
        const MatXc block = extract_block(be);
        ok = ok && (block - uoi_reference(mesh.conn, j, k).cast<cplx>()).cwiseAbs().maxCoeff() <
                       1e-12;
      }
    check("unit-of-interaction circuits, p=" + std::to_string(p), ok);
  }

  // Assembled arrays against the classical assembler.
  for (int p : {1, 3}) {
    const int n = 4;
    const Mesh mesh = build_mesh(1, p, n / mesh_m_for(p));
    const ElementalArrays elem = elemental_arrays(p);
    AssembledArray k = assemble_global_1d(elem.ke, p, n, ArrayKind::kStiffness);
    const double err = (extract_block(k.be) - MatXd(classical_assemble(mesh.conn, elem.ke))
                                                  .cast<cplx>())
                           .cwiseAbs()
                           .maxCoeff();
    check("1D assembly, p=" + std::to_string(p), err < 1e-10);
  }
  {
    GlobalArraysDd arrays = assemble_global_dd(2, 1, 3);
    const Mesh mesh = build_mesh(1, 1, 3);
    const ElementalArrays elem = elemental_arrays(1);
    const MatXd k1 = MatXd(classical_assemble(mesh.conn, elem.ke));
    const MatXd m1 = MatXd(classical_assemble(mesh.conn, elem.me));
    MatXd want(64, 64);
    want.setZero();
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        for (int c = 0; c < 8; ++c)
          for (int d2 = 0; d2 < 8; ++d2)
            want(a * 8 + c, b * 8 + d2) = k1(a, b) * m1(c, d2) + m1(a, b) * k1(c, d2);
    const double err =
        (extract_block(arrays.stiffness.be) - want.cast<cplx>()).cwiseAbs().maxCoeff();
    check("2D tensor assembly", err < 1e-10);
  }
  // Variable coefficients.
  {
    PolySpec f = PolySpec::monomial_1d({0.0, 1.0}, 0.0, 1.0, 1.0);
    AssembledArray quantum = assemble_variable_coeff(f, ArrayKind::kMass, 1, 3, 0, 1);
    const double err = (extract_block(quantum.be) -
                        MatXd(classical_variable_assemble(f, ArrayKind::kMass, 1, 3, 0, 1))
                            .cast<cplx>())
                           .cwiseAbs()
                           .maxCoeff();
    check("variable-coefficient assembly", err < 1e-8);
  }
  // Boundary-condition routes agree.
  {
    const int n = 3;
    DomainMask mask = DomainMask::full_square(1, n);
    AssembledArray stiff =
        assemble_global_1d(elemental_arrays(1).ke, 1, n, ArrayKind::kStiffness);
    VecXd f(8), ubar = VecXd::Zero(8);
    for (int i = 0; i < 8; ++i) f[i] = 0.3 + 0.1 * i;
    ubar[0] = 0.2;
    ubar[7] = -0.1;
    BlockSystem sys = lagrange_system(stiff.be, mask, ubar, f);
    SpMatd block = extract_system(sys);
    SolveReport rep = solve_qlsp(block, sys.rhs, sys.be.alpha, smallest_singular_value(block));
    BlockSolution sol = split_block_solution(rep.u);
    auto [l_dirich, b_dirich] = projector_dirichlet(stiff.be, mask, f, ubar);
    const VecXd u_proj = MatXd(extract_block(l_dirich).real()).lu().solve(b_dirich);
    check("boundary-condition route equivalence",
          (sol.u - u_proj).cwiseAbs().maxCoeff() < 1e-8);
  }
  std::cout << (failures == 0 ? "verify: all checks passed\n" : "verify: failures present\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale simulator of block-encoded finite element assembly"};
  app.require_subcommand(1);

  auto* assemble = app.add_subcommand("assemble", "Assemble global arrays and export them");
  int d = 1, p = 1, n = 3;
  std::string coeff_file, kind = "stiffness", out_dir = "out";
  assemble->add_option("--d", d, "spatial dimension");
  assemble->add_option("--p", p, "element order (p+1 a power of two)");
  assemble->add_option("--n", n, "qubits per dimension");
  assemble->add_option("--coeff", coeff_file, "coefficient config (JSON)");
  assemble->add_option("--kind", kind, "stiffness|mass");
  assemble->add_option("--out", out_dir, "output directory");

  auto* demo = app.add_subcommand("demo", "Run an end-to-end PDE demo");
  std::string which = "duct", mask_file, demo_out = "out";
  int demo_n = 5;
  double dpdx = -1.0;
  bool pgm = false;
  demo->add_option("name", which, "cal|duct")->required();
  demo->add_option("--n", demo_n, "qubits per dimension");
  demo->add_option("--mask", mask_file, "domain bitmap file");
  demo->add_option("--out", demo_out, "output directory");
  demo->add_option("--dpdx-over-mu", dpdx, "pressure gradient over viscosity");
  demo->add_flag("--pgm", pgm, "also write PGM heatmaps");

  auto* cost = app.add_subcommand("cost", "Dump Toffoli cost tables");
  std::string construct = "multi_cnot", sweep = "n=3..10", cost_out;
  int cost_p = 1;
  cost->add_option("--construct", construct, "shift|multi_cnot|or_gate|u_div|mod_p|uoi_p1|uoi_p|assembly_1d");
  cost->add_option("--sweep", sweep, "n=<lo>..<hi>");
  cost->add_option("--p", cost_p, "element order");
  cost->add_option("--out", cost_out, "CSV output path");

  auto* verify = app.add_subcommand("verify", "Run the oracle-equivalence suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (assemble->parsed()) return run_assemble(d, p, n, coeff_file, kind, out_dir);
    if (demo->parsed()) return run_demo(which, demo_n, mask_file, demo_out, dpdx, pgm);
    if (cost->parsed()) {
      int lo = 3, hi = 10;
      if (std::sscanf(sweep.c_str(), "n=%d..%d", &lo, &hi) != 2) {
        std::cerr << "bad sweep spec: " << sweep << "\n";
        return 2;
      }
      return run_cost(construct, lo, hi, cost_p, cost_out);
    }
    if (verify->parsed()) return run_verify();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
