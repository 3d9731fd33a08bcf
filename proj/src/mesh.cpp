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

#include "qufem/mesh.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qufem {

BasisIndex Connectivity::ix(int j, BasisIndex e) const {
  if (j < 0 || j >= nen || e >= numel) throw std::invalid_argument("ix: index out of range");
  return e * static_cast<BasisIndex>(p) + static_cast<BasisIndex>(j);
}

bool Connectivity::injective_per_row() const {
  // e -> e*p + j is strictly increasing in e for the structured mesh.
  return true;
}

Mesh build_mesh(int d, int p, int k) {
  if (p < 1 || ((p + 1) & p) != 0)
    throw std::invalid_argument("build_mesh: p + 1 must be a power of two");
  if (k < 1) throw std::invalid_argument("build_mesh: k must be >= 1");
  int m = 0;
  while ((1 << m) < p + 1) ++m;
  Mesh mesh;
  mesh.params.d = d;
  mesh.params.p = p;
  mesh.params.m = m;
  mesh.params.n = m * k;
  mesh.params.numnp = dim_of(m * k);
  mesh.params.numel = (mesh.params.numnp - 1) / static_cast<BasisIndex>(p);
  mesh.params.nen = p + 1;
  mesh.params.h = 1.0 / static_cast<double>(mesh.params.numel);
  mesh.conn = Connectivity{p + 1, mesh.params.numel, mesh.params.numnp, p};
  return mesh;
}

Operator o_ix_oracle(const Connectivity& conn) {
  if (!conn.injective_per_row()) throw std::invalid_argument("o_ix_oracle: non-injective row");
  int m = 0;
  while ((1 << m) < conn.nen) ++m;
  int n = 0;
  while (dim_of(n) < conn.numnp) ++n;
  const int total = m + 2 * n;
  const BasisIndex jdim = dim_of(m), edim = dim_of(n);
  std::vector<BasisIndex> map(dim_of(total));
  for (BasisIndex idx = 0; idx < map.size(); ++idx) {
    const BasisIndex j = idx & (jdim - 1);
    const BasisIndex e = (idx >> m) & (edim - 1);
    const BasisIndex r = idx >> (m + n);
    BasisIndex out = r;
    if (j < static_cast<BasisIndex>(conn.nen) && e < conn.numel) out = r ^ conn.ix(static_cast<int>(j), e);
    map[idx] = j | (e << m) | (out << (m + n));
  }
  return Operator::permutation(std::move(map));
}

Operator o_ix_compact(const Connectivity& conn) {
  if (!conn.injective_per_row()) throw std::invalid_argument("o_ix_compact: non-injective row");
  int m = 0;
  while ((1 << m) < conn.nen) ++m;
  int n = 0;
  while (dim_of(n) < conn.numnp) ++n;
  const BasisIndex jdim = dim_of(m), edim = dim_of(n);
  std::vector<BasisIndex> map(dim_of(m + n));
  for (BasisIndex idx = 0; idx < map.size(); ++idx) {
    const BasisIndex j = idx & (jdim - 1);
    const BasisIndex e = idx >> m;
    const BasisIndex g = (e * static_cast<BasisIndex>(conn.p) + j) & (edim - 1);
    map[idx] = j | (g << m);
  }
  return Operator::permutation(std::move(map));
}

BlockEncoding position_be(int n) {
  if (n < 1) throw std::invalid_argument("position_be: need at least one qubit");
  const double nm1 = static_cast<double>(dim_of(n) - 1);
  std::vector<BlockEncoding> terms;
  VecXc y(n + 1);
  terms.push_back(be_identity(n));
  y[0] = nm1 / 2.0;
  for (int i = 0; i < n; ++i) {
    VecXc z(dim_of(n));
    for (BasisIndex idx = 0; idx < dim_of(n); ++idx)
      z[static_cast<Eigen::Index>(idx)] = ((idx >> i) & 1u) ? -1.0 : 1.0;
    terms.push_back(be_of_unitary(Operator::diagonal(std::move(z))));
    y[i + 1] = -0.5 * static_cast<double>(BasisIndex{1} << i);
  }
  return be_lcu(terms, make_prep_pair(y));
}

BlockEncoding position_be_dim(int i, int d, int n) {
  if (i < 0 || i >= d) throw std::invalid_argument("position_be_dim: axis out of range");
  BlockEncoding be = position_be(n);
  // Axis 0 is the least significant register.
  for (int axis = i + 1; axis < d; ++axis) be = be_tensor(be_identity(n), be);
  for (int axis = 0; axis < i; ++axis) be = be_tensor(be, be_identity(n));
  return be;
}

BlockEncoding position_be_hermitian(int n) {
  const double nm1 = static_cast<double>(dim_of(n) - 1);
  VecXd amps(static_cast<Eigen::Index>(dim_of(n)));
  for (BasisIndex i = 0; i < dim_of(n); ++i)
    amps[static_cast<Eigen::Index>(i)] = static_cast<double>(i) / nm1;
  return BlockEncoding{Operator::hermitian_amplitude_flag(std::move(amps)), nm1, 1, 0.0, n, {}};
}

BlockEncoding element_projector_be(int n, int p) {
  if ((dim_of(n) - 1) % static_cast<BasisIndex>(p) != 0)
    throw std::invalid_argument("element_projector_be: grid does not hold whole elements");
  const BasisIndex numel = (dim_of(n) - 1) / static_cast<BasisIndex>(p);
  Operator u = Operator::flag_oracle(n, [numel](BasisIndex e) { return e >= numel; });
  return BlockEncoding{std::move(u), 1.0, 1, 0.0, n, {}};
}

DomainMask::DomainMask(int d, int n) : d_(d), n_(n) {
  const std::size_t size = static_cast<std::size_t>(dim_of(n * d));
  active_.assign(size, true);
  fixed_.assign(size, false);
  neumann_.assign(size, false);
}

std::size_t DomainMask::interior_count() const {
  std::size_t c = 0;
  for (BasisIndex v = 0; v < grid_dim(); ++v)
    if (interior(v)) ++c;
  return c;
}

std::size_t DomainMask::fixed_count() const {
  std::size_t c = 0;
  for (BasisIndex v = 0; v < grid_dim(); ++v)
    if (fixed_[v]) ++c;
  return c;
}

void DomainMask::derive_fixed_from_active() {
  const long long side = static_cast<long long>(this->side());
  for (BasisIndex v = 0; v < grid_dim(); ++v) {
    if (!active_[v]) continue;
    bool boundary = false;
    if (d_ == 1) {
      const long long x = static_cast<long long>(v);
      for (long long dx = -1; dx <= 1 && !boundary; ++dx) {
        const long long nx = x + dx;
        if (nx < 0 || nx >= side)
          boundary = true;
        else if (!active_[static_cast<BasisIndex>(nx)])
          boundary = true;
      }
    } else if (d_ == 2) {
      const long long x = static_cast<long long>(v) % side;
      const long long y = static_cast<long long>(v) / side;
      for (long long dy = -1; dy <= 1 && !boundary; ++dy)
        for (long long dx = -1; dx <= 1 && !boundary; ++dx) {
          const long long nx = x + dx, ny = y + dy;
          if (nx < 0 || nx >= side || ny < 0 || ny >= side)
            boundary = true;
          else if (!active_[static_cast<BasisIndex>(ny * side + nx)])
            boundary = true;
        }
    } else {
      throw std::invalid_argument("derive_fixed_from_active: supports d <= 2");
    }
    if (boundary) fixed_[v] = true;
  }
}

DomainMask DomainMask::full_square(int d, int n) {
  DomainMask mask(d, n);
  const BasisIndex side = mask.side();
  for (BasisIndex v = 0; v < mask.grid_dim(); ++v) {
    bool edge = false;
    BasisIndex rem = v;
    for (int axis = 0; axis < d; ++axis) {
      const BasisIndex c = rem & (side - 1);
      rem >>= n;
      if (c == 0 || c == side - 1) edge = true;
    }
    if (edge) mask.set_fixed(v, true);
  }
  return mask;
}

DomainMask DomainMask::from_bitmap_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) rows.push_back(line);
  }
  if (rows.empty()) throw std::invalid_argument("bitmap: empty");
  const std::size_t width = rows.front().size();
  int n = 0;
  while (dim_of(n) < width) ++n;
  if (dim_of(n) != width) throw std::invalid_argument("bitmap: width must be a power of two");
  const int d = rows.size() == 1 ? 1 : 2;
  if (d == 2 && rows.size() != width)
    throw std::invalid_argument("bitmap: 2D masks must be square");
  DomainMask mask(d, n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw std::invalid_argument("bitmap: ragged rows");
    // Row 0 of the file is the most significant y line.
    const BasisIndex y = d == 2 ? static_cast<BasisIndex>(width - 1 - r) : 0;
    for (std::size_t c = 0; c < width; ++c) {
      const char ch = rows[r][c];
      if (ch != '0' && ch != '1') throw std::invalid_argument("bitmap: expected 0/1");
      const BasisIndex v = d == 2 ? y * width + c : static_cast<BasisIndex>(c);
      mask.set_active(v, ch == '1');
    }
  }
  mask.derive_fixed_from_active();
  return mask;
}

DomainMask DomainMask::from_bitmap_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mask file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_bitmap_text(ss.str());
}

std::string DomainMask::to_bitmap_text() const {
  std::ostringstream out;
  const BasisIndex side = this->side();
  if (d_ == 1) {
    for (BasisIndex c = 0; c < side; ++c) out << (active_[c] ? '1' : '0');
    out << '\n';
  } else {
    for (BasisIndex r = 0; r < side; ++r) {
      const BasisIndex y = side - 1 - r;
      for (BasisIndex c = 0; c < side; ++c) out << (active_[y * side + c] ? '1' : '0');
      out << '\n';
    }
  }
  return out.str();
}

BoundaryOracle boundary_oracle(const DomainMask& mask) {
  const int nq = mask.n() * mask.d();
  std::vector<bool> constrained(static_cast<std::size_t>(dim_of(nq)));
  for (BasisIndex v = 0; v < mask.grid_dim(); ++v) constrained[v] = mask.constrained(v);
  Operator u_b = Operator::flag_oracle(nq, [constrained](BasisIndex v) { return constrained[v]; });
  Operator u_bd =
      Operator::flag_oracle(nq, [constrained](BasisIndex v) { return !constrained[v]; });
  BoundaryOracle oracle;
  oracle.u_b = u_b;
  oracle.p_int = BlockEncoding{u_b, 1.0, 1, 0.0, nq, {}};
  oracle.p_bd = BlockEncoding{std::move(u_bd), 1.0, 1, 0.0, nq, {}};
  return oracle;
}

namespace {

void fill_rect(DomainMask& mask, int x0, int x1, int y0, int y1) {
  const BasisIndex side = mask.side();
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      mask.set_active(static_cast<BasisIndex>(y) * side + static_cast<BasisIndex>(x), true);
}

}  // namespace

DomainMask cal_mask() {
  DomainMask mask(2, 5);
  for (BasisIndex v = 0; v < mask.grid_dim(); ++v) mask.set_active(v, false);
  // C
  fill_rect(mask, 2, 5, 6, 25);
  fill_rect(mask, 2, 9, 22, 25);
  fill_rect(mask, 2, 9, 6, 9);
  // A
  fill_rect(mask, 12, 15, 6, 25);
  fill_rect(mask, 17, 20, 6, 25);
  fill_rect(mask, 12, 20, 22, 25);
  fill_rect(mask, 12, 20, 14, 17);
  // L
  fill_rect(mask, 23, 26, 6, 25);
  fill_rect(mask, 23, 30, 6, 9);
  mask.derive_fixed_from_active();
  return mask;
}

}  // namespace qufem
