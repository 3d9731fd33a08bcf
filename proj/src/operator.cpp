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

#include "qufem/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qufem {
namespace detail {

class OpNode {
 public:
  explicit OpNode(int qubits) : qubits_(qubits) {
    if (qubits < 0 || qubits > 40) throw std::invalid_argument("bad qubit count");
  }
  virtual ~OpNode() = default;
  int qubits() const { return qubits_; }
  virtual void apply(SparseState& s, bool adj) const = 0;

 private:
  int qubits_;
};

namespace {

void check_state(const OpNode& n, const SparseState& s) {
  if (s.qubits() != n.qubits()) throw std::invalid_argument("state/operator qubit mismatch");
}

int qubits_for_dim(Eigen::Index d) {
  int q = 0;
  while ((Eigen::Index{1} << q) < d) ++q;
  if ((Eigen::Index{1} << q) != d) throw std::invalid_argument("dimension is not a power of two");
  return q;
}

}  // namespace

class IdentityNode final : public OpNode {
 public:
  using OpNode::OpNode;
  void apply(SparseState& s, bool) const override { check_state(*this, s); }
};

class DenseNode final : public OpNode {
 public:
  explicit DenseNode(MatXc u) : OpNode(qubits_for_dim(u.rows())), u_(std::move(u)) {
    if (u_.rows() != u_.cols()) throw std::invalid_argument("dense operator must be square");
  }
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    std::vector<SparseState::Term> out;
    out.reserve(s.terms().size() * static_cast<std::size_t>(u_.rows()));
    for (const auto& [j, v] : s.terms()) {
      for (Eigen::Index i = 0; i < u_.rows(); ++i) {
        cplx a = adj ? std::conj(u_(static_cast<Eigen::Index>(j), i))
                     : u_(i, static_cast<Eigen::Index>(j));
        if (a != cplx(0.0, 0.0)) out.emplace_back(static_cast<BasisIndex>(i), a * v);
      }
    }
    s.terms() = std::move(out);
    s.compress();
  }
  const MatXc& matrix() const { return u_; }

 private:
  MatXc u_;
};

class PermNode final : public OpNode {
 public:
  PermNode(std::vector<BasisIndex> map, std::vector<cplx> amps)
      : OpNode(qubits_for_dim(static_cast<Eigen::Index>(map.size()))),
        map_(std::move(map)),
        amps_(std::move(amps)) {
    if (!amps_.empty() && amps_.size() != map_.size())
      throw std::invalid_argument("permutation amplitude size mismatch");
    std::vector<bool> seen(map_.size(), false);
    for (BasisIndex t : map_) {
      if (t >= map_.size() || seen[t]) throw std::invalid_argument("map is not a bijection");
      seen[t] = true;
    }
    inv_.resize(map_.size());
    for (BasisIndex j = 0; j < map_.size(); ++j) inv_[map_[j]] = j;
  }
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    for (auto& [idx, v] : s.terms()) {
      if (adj) {
        BasisIndex src = inv_[idx];
        if (!amps_.empty()) v *= std::conj(amps_[src]);
        idx = src;
      } else {
        if (!amps_.empty()) v *= amps_[idx];
        idx = map_[idx];
      }
    }
    s.compress();
  }

 private:
  std::vector<BasisIndex> map_;
  std::vector<BasisIndex> inv_;
  std::vector<cplx> amps_;
};

class DiagNode final : public OpNode {
 public:
  explicit DiagNode(VecXc d) : OpNode(qubits_for_dim(d.size())), d_(std::move(d)) {}
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    for (auto& [idx, v] : s.terms()) {
      cplx a = d_[static_cast<Eigen::Index>(idx)];
      v *= adj ? std::conj(a) : a;
    }
    s.compress();
  }

 private:
  VecXc d_;
};

class FuncDiagNode final : public OpNode {
 public:
  FuncDiagNode(int qubits, std::function<cplx(BasisIndex)> entry)
      : OpNode(qubits), entry_(std::move(entry)) {}
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    for (auto& [idx, v] : s.terms()) {
      cplx a = entry_(idx);
      v *= adj ? std::conj(a) : a;
    }
    s.compress();
  }

 private:
  std::function<cplx(BasisIndex)> entry_;
};

// Computes |b>|j> -> |b ^ pred(j)>|j> without a 2^(n+1) table.
class FlagNode final : public OpNode {
 public:
  FlagNode(int n, std::function<bool(BasisIndex)> pred)
      : OpNode(n + 1), n_(n), pred_(std::move(pred)) {}
  void apply(SparseState& s, bool) const override {
    check_state(*this, s);
    const BasisIndex flag = BasisIndex{1} << n_;
    for (auto& [idx, v] : s.terms())
      if (pred_(idx & (flag - 1))) idx ^= flag;
    s.compress();
  }

 private:
  int n_;
  std::function<bool(BasisIndex)> pred_;
};

class AmpFlagNode final : public OpNode {
 public:
  enum class Completion { kRotation, kHermitian };
  AmpFlagNode(VecXc amps, Completion c)
      : OpNode(qubits_for_dim(amps.size()) + 1), amps_(std::move(amps)), completion_(c) {
    for (Eigen::Index j = 0; j < amps_.size(); ++j) {
      if (std::abs(amps_[j]) > 1.0 + 1e-12)
        throw std::invalid_argument("flag amplitudes must have modulus <= 1");
      if (completion_ == Completion::kHermitian && std::abs(amps_[j].imag()) > 1e-14)
        throw std::invalid_argument("hermitian completion requires real amplitudes");
    }
  }
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    const int n = qubits() - 1;
    const BasisIndex flag = BasisIndex{1} << n;
    std::vector<SparseState::Term> out;
    out.reserve(2 * s.terms().size());
    for (const auto& [idx, v] : s.terms()) {
      const BasisIndex j = idx & (flag - 1);
      const bool b = (idx & flag) != 0;
      const cplx a = amps_[static_cast<Eigen::Index>(j)];
      const double sq = std::max(0.0, 1.0 - std::norm(a));
      const double sv = std::sqrt(sq);
      cplx u00, u01, u10, u11;
      if (completion_ == Completion::kRotation) {
        u00 = a, u01 = -sv, u10 = sv, u11 = std::conj(a);
      } else {
        u00 = a.real(), u01 = sv, u10 = sv, u11 = -a.real();
      }
      if (adj) {
        cplx t;
        t = std::conj(u01);  // adjoint: swap off-diagonals, conjugate
        u00 = std::conj(u00);
        u01 = std::conj(u10);
        u10 = t;
        u11 = std::conj(u11);
      }
      if (!b) {
        if (u00 != cplx(0.0)) out.emplace_back(j, u00 * v);
        if (u10 != cplx(0.0)) out.emplace_back(j | flag, u10 * v);
      } else {
        if (u01 != cplx(0.0)) out.emplace_back(j, u01 * v);
        if (u11 != cplx(0.0)) out.emplace_back(j | flag, u11 * v);
      }
    }
    s.terms() = std::move(out);
    s.compress();
  }

 private:
  VecXc amps_;
  Completion completion_;
};

class ComposedNode final : public OpNode {
 public:
  explicit ComposedNode(std::vector<Operator> seq)
      : OpNode(seq.empty() ? 0 : seq.front().qubits()), seq_(std::move(seq)) {
    for (const auto& f : seq_)
      if (f.qubits() != qubits()) throw std::invalid_argument("composition qubit mismatch");
  }
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    if (!adj) {
      for (const auto& f : seq_) f.apply(s, false);
    } else {
      for (auto it = seq_.rbegin(); it != seq_.rend(); ++it) it->apply(s, true);
    }
  }

 private:
  std::vector<Operator> seq_;
};

// Applies a sub-operator to an arbitrary subset of qubits by gather/scatter.
class EmbedNode final : public OpNode {
 public:
  EmbedNode(Operator op, int total, std::vector<int> targets)
      : OpNode(total), op_(std::move(op)), targets_(std::move(targets)) {
    if (static_cast<int>(targets_.size()) != op_.qubits())
      throw std::invalid_argument("target list must match operator arity");
    target_mask_ = 0;
    for (int t : targets_) {
      if (t < 0 || t >= total) throw std::invalid_argument("target qubit out of range");
      BasisIndex bit = BasisIndex{1} << t;
      if (target_mask_ & bit) throw std::invalid_argument("duplicate target qubit");
      target_mask_ |= bit;
    }
  }
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    struct Entry {
      BasisIndex rest;
      BasisIndex sub;
      cplx amp;
    };
    std::vector<Entry> entries;
    entries.reserve(s.terms().size());
    for (const auto& [idx, v] : s.terms())
      entries.push_back({idx & ~target_mask_, gather(idx), v});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.rest == b.rest ? a.sub < b.sub : a.rest < b.rest;
    });
    s.clear();
    std::size_t i = 0;
    SparseState sub(op_.qubits());
    while (i < entries.size()) {
      const BasisIndex rest = entries[i].rest;
      sub.clear();
      while (i < entries.size() && entries[i].rest == rest) {
        sub.add(entries[i].sub, entries[i].amp);
        ++i;
      }
      op_.apply(sub, adj);
      for (const auto& [sj, sv] : sub.terms()) s.add(rest | scatter(sj), sv);
    }
    s.compress();
  }

 private:
  BasisIndex gather(BasisIndex idx) const {
    BasisIndex sub = 0;
    for (std::size_t t = 0; t < targets_.size(); ++t)
      sub |= ((idx >> targets_[t]) & 1u) << t;
    return sub;
  }
  BasisIndex scatter(BasisIndex sub) const {
    BasisIndex idx = 0;
    for (std::size_t t = 0; t < targets_.size(); ++t)
      idx |= ((sub >> t) & 1u) << targets_[t];
    return idx;
  }

  Operator op_;
  std::vector<int> targets_;
  BasisIndex target_mask_;
};

// Multiplexer controlled on the most significant qubits.
class SelectNode final : public OpNode {
 public:
  SelectNode(int ctrl_qubits, std::vector<Operator> branches)
      : OpNode(ctrl_qubits + (branches.empty() ? 0 : branches.front().qubits())),
        ctrl_(ctrl_qubits),
        branches_(std::move(branches)) {
    if (branches_.empty()) throw std::invalid_argument("select needs at least one branch");
    if (branches_.size() > dim_of(ctrl_))
      throw std::invalid_argument("more branches than control states");
    for (const auto& b : branches_)
      if (b.qubits() != branches_.front().qubits())
        throw std::invalid_argument("select branch arity mismatch");
  }
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    const int low = branches_.front().qubits();
    const BasisIndex low_mask = dim_of(low) - 1;
    struct Entry {
      BasisIndex ctrl;
      BasisIndex sub;
      cplx amp;
    };
    std::vector<Entry> entries;
    entries.reserve(s.terms().size());
    for (const auto& [idx, v] : s.terms()) entries.push_back({idx >> low, idx & low_mask, v});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.ctrl == b.ctrl ? a.sub < b.sub : a.ctrl < b.ctrl;
    });
    s.clear();
    std::size_t i = 0;
    SparseState sub(low);
    while (i < entries.size()) {
      const BasisIndex c = entries[i].ctrl;
      sub.clear();
      while (i < entries.size() && entries[i].ctrl == c) {
        sub.add(entries[i].sub, entries[i].amp);
        ++i;
      }
      if (c < branches_.size()) branches_[c].apply(sub, adj);
      for (const auto& [sj, sv] : sub.terms()) s.add((c << low) | sj, sv);
    }
    s.compress();
  }

 private:
  int ctrl_;
  std::vector<Operator> branches_;
};

class ControlledNode final : public OpNode {
 public:
  ControlledNode(int total, std::vector<std::pair<int, int>> controls, Operator op,
                 std::vector<int> targets)
      : OpNode(total), controls_(std::move(controls)), inner_(Operator()) {
    BasisIndex tmask = 0;
    for (int t : targets) tmask |= BasisIndex{1} << t;
    ctrl_mask_ = 0;
    ctrl_value_ = 0;
    for (auto [q, v] : controls_) {
      if (q < 0 || q >= total) throw std::invalid_argument("control qubit out of range");
      BasisIndex bit = BasisIndex{1} << q;
      if (bit & tmask) throw std::invalid_argument("control overlaps target");
      ctrl_mask_ |= bit;
      if (v) ctrl_value_ |= bit;
    }
    inner_ = Operator::embedded(std::move(op), total, std::move(targets));
  }
  void apply(SparseState& s, bool adj) const override {
    check_state(*this, s);
    SparseState active(s.qubits());
    std::vector<SparseState::Term> rest;
    for (const auto& [idx, v] : s.terms()) {
      if ((idx & ctrl_mask_) == ctrl_value_)
        active.add(idx, v);
      else
        rest.emplace_back(idx, v);
    }
    inner_.apply(active, adj);
    s.terms() = std::move(rest);
    for (const auto& [idx, v] : active.terms()) s.add(idx, v);
    s.compress();
  }

 private:
  std::vector<std::pair<int, int>> controls_;
  BasisIndex ctrl_mask_ = 0, ctrl_value_ = 0;
  Operator inner_;
};

class AdjointNode final : public OpNode {
 public:
  explicit AdjointNode(Operator op) : OpNode(op.qubits()), op_(std::move(op)) {}
  void apply(SparseState& s, bool adj) const override { op_.apply(s, !adj); }

 private:
  Operator op_;
};

}  // namespace detail

using detail::OpNode;

int Operator::qubits() const {
  if (!node_) throw std::logic_error("empty operator");
  return node_->qubits();
}

void Operator::apply(SparseState& state, bool adjoint) const {
  if (!node_) throw std::logic_error("empty operator");
  node_->apply(state, adjoint);
}

VecXc Operator::apply_dense(const VecXc& v, bool adjoint) const {
  SparseState s = SparseState::from_dense(qubits(), v);
  apply(s, adjoint);
  return s.to_dense();
}

MatXc Operator::to_matrix() const {
  if (qubits() > 12) throw std::length_error("refusing to materialize a unitary above 2^12");
  const Eigen::Index n = static_cast<Eigen::Index>(dim());
  MatXc m = MatXc::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    SparseState s = SparseState::basis(qubits(), static_cast<BasisIndex>(j));
    apply(s);
    for (const auto& [i, v] : s.terms()) m(static_cast<Eigen::Index>(i), j) = v;
  }
  return m;
}

Operator Operator::identity(int qubits) {
  return Operator(std::make_shared<detail::IdentityNode>(qubits));
}

Operator Operator::dense(MatXc u) {
  return Operator(std::make_shared<detail::DenseNode>(std::move(u)));
}

Operator Operator::permutation(std::vector<BasisIndex> map, std::vector<cplx> amps) {
  return Operator(std::make_shared<detail::PermNode>(std::move(map), std::move(amps)));
}

Operator Operator::diagonal(VecXc d) {
  return Operator(std::make_shared<detail::DiagNode>(std::move(d)));
}

Operator Operator::functional_diagonal(int qubits, std::function<cplx(BasisIndex)> entry) {
  return Operator(std::make_shared<detail::FuncDiagNode>(qubits, std::move(entry)));
}

Operator Operator::flag_oracle(int n, const std::function<bool(BasisIndex)>& pred) {
  return Operator(std::make_shared<detail::FlagNode>(n, pred));
}

Operator Operator::amplitude_flag(VecXc amps) {
  return Operator(std::make_shared<detail::AmpFlagNode>(
      std::move(amps), detail::AmpFlagNode::Completion::kRotation));
}

Operator Operator::hermitian_amplitude_flag(VecXd amps) {
  return Operator(std::make_shared<detail::AmpFlagNode>(
      amps.cast<cplx>(), detail::AmpFlagNode::Completion::kHermitian));
}

Operator Operator::composed(Operator first, Operator second) {
  std::vector<Operator> seq;
  seq.push_back(std::move(first));
  seq.push_back(std::move(second));
  return composed(std::move(seq));
}

Operator Operator::composed(std::vector<Operator> in_application_order) {
  return Operator(std::make_shared<detail::ComposedNode>(std::move(in_application_order)));
}

Operator Operator::tensor(Operator a, Operator b) {
  const int na = a.qubits();
  const int nb = b.qubits();
  std::vector<int> high(na), low(nb);
  for (int i = 0; i < nb; ++i) low[i] = i;
  for (int i = 0; i < na; ++i) high[i] = nb + i;
  std::vector<Operator> seq;
  seq.push_back(embedded(std::move(b), na + nb, low));
  seq.push_back(embedded(std::move(a), na + nb, high));
  return composed(std::move(seq));
}

Operator Operator::embedded(Operator op, int total_qubits, std::vector<int> targets) {
  if (op.qubits() == total_qubits) {
    bool trivial = true;
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (targets[t] != static_cast<int>(t)) trivial = false;
    if (trivial) return op;
  }
  return Operator(
      std::make_shared<detail::EmbedNode>(std::move(op), total_qubits, std::move(targets)));
}

Operator Operator::select(int ctrl_qubits, std::vector<Operator> branches) {
  return Operator(std::make_shared<detail::SelectNode>(ctrl_qubits, std::move(branches)));
}

Operator Operator::controlled(int total_qubits, std::vector<std::pair<int, int>> controls,
                              Operator op, std::vector<int> targets) {
  return Operator(std::make_shared<detail::ControlledNode>(total_qubits, std::move(controls),
                                                           std::move(op), std::move(targets)));
}

Operator Operator::adjoint(Operator op) {
  return Operator(std::make_shared<detail::AdjointNode>(std::move(op)));
}

}  // namespace qufem
