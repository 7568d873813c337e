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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltperm/error.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/matrix.hpp"

namespace ltperm {

/// sum a_i u^{p^i} over any Field.
inline Code eval_linearized(const Field& f, std::span<const Code> coeffs, Code u) noexcept {
  Code acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) acc = f.add(acc, f.mul(coeffs[i], f.frob(u, i)));
  }
  return acc;
}

/// Additive (p-linearized) permutation A(x) = sum_{i<k} a_i x^{p^i} of F_q.
///
/// Bijectivity is decided at construction from the k x k matrix of A over F_p, and
/// the inverse map is read off that matrix's inverse once; apply_inverse is a lookup.
class AdditivePerm {
 public:
  /// Coefficients beyond index k-1 fold back, since x^{p^k} = x on F_q.
  static AdditivePerm make(const FieldTower& tower, std::vector<Code> coeffs) {
    const Field& fq = tower.base();
    const Field& fp = tower.prime();
    const std::uint32_t k = tower.k();
    const std::uint32_t p = tower.p();
    AdditivePerm a;
    a.coeffs_.assign(k, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      tower.element(Level::base, coeffs[i]);
      a.coeffs_[i % k] = fq.add(a.coeffs_[i % k], coeffs[i]);
    }

    // Column j holds the F_p digits of A(s^j), s^j having code p^j.
    Matrix m(k, k);
    Code basis = 1;
    for (std::uint32_t j = 0; j < k; ++j, basis *= p) {
      Code image = eval_linearized(fq, a.coeffs_, basis);
      for (std::uint32_t i = 0; i < k; ++i, image /= p) m(i, j) = image % p;
    }
    auto inv = inverse(fp, m);
    if (!inv) {
      fail(ErrorKind::NotBijective, "additive polynomial has a nontrivial kernel (F_p-rank " +
                                        std::to_string(matrix_rank(fp, m)) + " < " + std::to_string(k) + ")");
    }
    a.matrix_ = m;

    a.forward_.resize(fq.size());
    a.inverse_.resize(fq.size());
    std::vector<Code> digits(k);
    for (Code u = 0; u < fq.size(); ++u) {
      a.forward_[u] = eval_linearized(fq, a.coeffs_, u);
      Code v = u;
      for (auto& d : digits) {
        d = v % p;
        v /= p;
      }
      const auto pre = mul_vec(fp, *inv, digits);
      Code code = 0;
      for (std::size_t i = k; i-- > 0;) code = code * p + pre[i];
      a.inverse_[u] = code;
    }

    // A^{-1} is again p-linearized; solve sum_i c_i (s^j)^{p^i} = A^{-1}(s^j) over F_q.
    Matrix moore(k, k);
    std::vector<Code> rhs(k);
    basis = 1;
    for (std::uint32_t j = 0; j < k; ++j, basis *= p) {
      for (std::uint32_t i = 0; i < k; ++i) moore(j, i) = fq.frob(basis, i);
      rhs[j] = a.inverse_[basis];
    }
    a.inv_coeffs_ = mul_vec(fq, *inverse(fq, moore), rhs);

    std::uint32_t nonzero = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (a.coeffs_[i] != 0) {
        ++nonzero;
        if (a.coeffs_[i] == 1) a.monomial_ = i;
      }
    }
    if (nonzero != 1) a.monomial_.reset();
    return a;
  }

  static AdditivePerm identity(const FieldTower& tower) { return make(tower, {1}); }

  /// x^{p^t}.
  static AdditivePerm frobenius(const FieldTower& tower, std::uint32_t t) {
    std::vector<Code> c(t + 1, 0);
    c[t] = 1;
    return make(tower, std::move(c));
  }

  Code apply(Code u) const noexcept { return forward_[u]; }
  Code apply_inverse(Code u) const noexcept { return inverse_[u]; }

  /// a_0..a_{k-1}.
  const std::vector<Code>& coeffs() const noexcept { return coeffs_; }
  /// Coefficients of A^{-1} as a p-linearized polynomial.
  const std::vector<Code>& inverse_coeffs() const noexcept { return inv_coeffs_; }
  /// t when A(x) = x^{p^t}.
  std::optional<std::uint32_t> monomial_exponent() const noexcept { return monomial_; }
  bool is_identity() const noexcept { return monomial_ == 0u; }
  /// Matrix of A over F_p in the power basis of F_q.
  const Matrix& prime_matrix() const noexcept { return matrix_; }

  std::span<const Code> table() const noexcept { return forward_; }
  std::span<const Code> inverse_table() const noexcept { return inverse_; }
  FieldFn as_fn() const { return FieldFn(Level::base, Level::base, forward_); }
  FieldFn inverse_fn() const { return FieldFn(Level::base, Level::base, inverse_); }

  friend bool operator==(const AdditivePerm& a, const AdditivePerm& b) { return a.coeffs_ == b.coeffs_; }

 private:
  AdditivePerm() = default;

  std::vector<Code> coeffs_;
  std::vector<Code> inv_coeffs_;
  std::vector<Code> forward_;
  std::vector<Code> inverse_;
  Matrix matrix_;
  std::optional<std::uint32_t> monomial_;
};

inline Element apply_additive(const FieldTower& tower, const AdditivePerm& a, Element u) {
  if (u.level != Level::base) fail(ErrorKind::LevelMismatch, "additive permutations act on the base level");
  tower.element(Level::base, u.code);
  return {Level::base, a.apply(u.code)};
}

inline Element apply_additive_inverse(const FieldTower& tower, const AdditivePerm& a, Element u) {
  if (u.level != Level::base) fail(ErrorKind::LevelMismatch, "additive permutations act on the base level");
  tower.element(Level::base, u.code);
  return {Level::base, a.apply_inverse(u.code)};
}

}  // namespace ltperm
