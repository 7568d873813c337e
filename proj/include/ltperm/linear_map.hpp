// Copyright 2026 The ltperm Authors.
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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ltperm/error.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/matrix.hpp"

namespace ltperm {

/// Coordinates of a top element in the basis 1, t, ..., t^{n-1} over F_q.
inline std::vector<Code> coords(const FieldTower& tower, Code x) {
  std::vector<Code> out(tower.n());
  for (auto& c : out) {
    c = x % tower.q();
    x /= tower.q();
  }
  return out;
}

inline Code from_coords(const FieldTower& tower, const std::vector<Code>& v) {
  Code x = 0;
  for (std::size_t i = v.size(); i-- > 0;) x = x * tower.q() + v[i];
  return x;
}

/// F_q-linear map of F_{q^n}: an n x n matrix over F_q whose column j holds the
/// coordinates of L(t^j). A q-polynomial form sum c_i x^{q^i} is kept when the map
/// was built from one. The full value table is cached.
class LinearMap {
 public:
  static LinearMap from_matrix(const FieldTower& tower, Matrix m) {
    if (m.rows() != tower.n() || m.cols() != tower.n()) {
      fail(ErrorKind::DegreeMismatch, "linear map matrix must be " + std::to_string(tower.n()) + "x" +
                                          std::to_string(tower.n()));
    }
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) tower.element(Level::base, m(r, c));
    LinearMap l;
    l.matrix_ = std::move(m);
    l.fill_table(tower);
    return l;
  }

  /// L(x) = sum c_i x^{q^i}, c_i top codes.
  static LinearMap from_qpoly(const FieldTower& tower, std::vector<Code> c) {
    const Field& top = tower.top();
    for (Code ci : c) tower.element(Level::top, ci);
    auto eval = [&](Code x) {
      Code acc = 0;
      for (std::size_t i = 0; i < c.size(); ++i) acc = top.add(acc, top.mul(c[i], top.frob(x, i * tower.k())));
      return acc;
    };
    Matrix m(tower.n(), tower.n());
    Code basis = 1;
    for (std::uint32_t j = 0; j < tower.n(); ++j, basis *= tower.q()) {
      const auto col = coords(tower, eval(basis));
      for (std::uint32_t i = 0; i < tower.n(); ++i) m(i, j) = col[i];
    }
    LinearMap l = from_matrix(tower, std::move(m));
    for (Code x = 0; x < l.table_.size(); ++x) {
      if (l.table_[x] != eval(x)) fail(ErrorKind::NotLinear, "q-polynomial and matrix disagree");
    }
    l.qpoly_ = std::move(c);
    return l;
  }

  /// Accepts a table only if it agrees everywhere with the linear map fixed by the
  /// images of the basis, which is equivalent to F_q-linearity.
  static LinearMap from_fn(const FieldTower& tower, const FieldFn& fn) {
    if (fn.domain() != Level::top || fn.codomain() != Level::top || fn.size() != tower.size(Level::top)) {
      fail(ErrorKind::LevelMismatch, "linear maps act on the top level");
    }
    Matrix m(tower.n(), tower.n());
    Code basis = 1;
    for (std::uint32_t j = 0; j < tower.n(); ++j, basis *= tower.q()) {
      const auto col = coords(tower, fn(basis));
      for (std::uint32_t i = 0; i < tower.n(); ++i) m(i, j) = col[i];
    }
    LinearMap l = from_matrix(tower, std::move(m));
    for (Code x = 0; x < fn.size(); ++x) {
      if (l.table_[x] != fn(x)) fail(ErrorKind::NotLinear, "map is not F_q-linear at " + std::to_string(x));
    }
    return l;
  }

  static LinearMap identity(const FieldTower& tower) { return from_qpoly(tower, {1}); }

  Code apply(Code x) const noexcept { return table_[x]; }
  Code operator()(Code x) const noexcept { return table_[x]; }
  const Matrix& matrix() const noexcept { return matrix_; }
  const std::optional<std::vector<Code>>& qpoly() const noexcept { return qpoly_; }
  FieldFn as_fn() const { return FieldFn(Level::top, Level::top, table_); }

  LinearMap inverse(const FieldTower& tower) const {
    auto inv = ltperm::inverse(tower.base(), matrix_);
    if (!inv) fail(ErrorKind::LNotPermutation, "linear map is singular");
    return from_matrix(tower, std::move(*inv));
  }

  /// this ∘ other.
  LinearMap then_after(const FieldTower& tower, const LinearMap& other) const {
    return from_matrix(tower, mul(tower.base(), matrix_, other.matrix_));
  }

  friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.matrix_ == b.matrix_; }

 private:
  LinearMap() = default;

  void fill_table(const FieldTower& tower) {
    const Field& fq = tower.base();
    table_.assign(tower.size(Level::top), 0);
    for (Code x = 0; x < table_.size(); ++x) {
      const auto v = coords(tower, x);
      table_[x] = from_coords(tower, mul_vec(fq, matrix_, v));
    }
  }

  Matrix matrix_;
  std::optional<std::vector<Code>> qpoly_;
  std::vector<Code> table_;
};

struct LinearMapAnalysis {
  std::vector<Code> kernel_basis;        // top codes
  std::vector<Code> image_basis;
  std::vector<Code> intersection_basis;  // basis of Ker L ∩ Im L
  bool is_permutation = false;
  bool ker_im_trivial = false;
};

/// Kernel and image by elimination over F_q. The intersection comes from the null
/// space of [K | -I] (K, I the basis columns): each solution (u, v) gives K u = I v.
inline LinearMapAnalysis analyze(const FieldTower& tower, const LinearMap& l) {
  const Field& fq = tower.base();
  const std::size_t n = tower.n();
  LinearMapAnalysis out;

  const auto kernel = nullspace(fq, l.matrix());
  for (const auto& v : kernel) out.kernel_basis.push_back(from_coords(tower, v));
  const Echelon e = rref(fq, l.matrix());
  for (auto c : e.pivots) out.image_basis.push_back(from_coords(tower, l.matrix().column(c)));

  const std::size_t kd = out.kernel_basis.size();
  const std::size_t id = out.image_basis.size();
  Matrix stacked(n, kd + id);
  for (std::size_t j = 0; j < kd; ++j) {
    const auto col = coords(tower, out.kernel_basis[j]);
    for (std::size_t i = 0; i < n; ++i) stacked(i, j) = col[i];
  }
  for (std::size_t j = 0; j < id; ++j) {
    const auto col = coords(tower, out.image_basis[j]);
    for (std::size_t i = 0; i < n; ++i) stacked(i, kd + j) = fq.neg(col[i]);
  }
  for (const auto& sol : nullspace(fq, stacked)) {
    std::vector<Code> v(n, 0);
    for (std::size_t j = 0; j < kd; ++j) {
      const auto col = coords(tower, out.kernel_basis[j]);
      for (std::size_t i = 0; i < n; ++i) v[i] = fq.add(v[i], fq.mul(sol[j], col[i]));
    }
    out.intersection_basis.push_back(from_coords(tower, v));
  }
  out.is_permutation = kd == 0;
  out.ker_im_trivial = out.intersection_basis.empty();
  return out;
}

/// F_q-rank of a family of top elements (as coordinate columns).
inline std::size_t rank_over_base(const FieldTower& tower, const std::vector<Code>& elements) {
  Matrix m(tower.n(), elements.size());
  for (std::size_t j = 0; j < elements.size(); ++j) {
    const auto col = coords(tower, elements[j]);
    for (std::size_t i = 0; i < tower.n(); ++i) m(i, j) = col[i];
  }
  return matrix_rank(tower.base(), m);
}

}  // namespace ltperm
