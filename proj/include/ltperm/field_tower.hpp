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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ltperm/error.hpp"
#include "ltperm/field.hpp"

namespace ltperm {

/// The three levels of F_p ⊂ F_q ⊂ F_{q^n}, q = p^k.
enum class Level : std::uint8_t { prime, base, top };

constexpr std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::prime: return "prime";
    case Level::base: return "base";
    case Level::top: return "top";
  }
  return "?";
}

struct Element {
  Level level = Level::top;
  Code code = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Immutable two-level tower F_p ⊂ F_q = F_p[s]/(modulus_q) ⊂ F_{q^n} = F_q[t]/(modulus_qn).
///
/// Copies share the underlying tables, so a tower is cheap to pass around and safe to
/// read from several threads. Elements are codes; a top element sum e_j t^j is encoded
/// as sum e_j q^j over base codes, and a base element sum c_i s^i as sum c_i p^i.
/// Each subfield sits inside the next as the constants, so embedding keeps codes.
class FieldTower {
 public:
  /// Builds and verifies a tower. Missing moduli default to the lexicographically
  /// smallest monic irreducible polynomial of the required degree.
  static FieldTower build(std::uint32_t p, std::uint32_t k, std::uint32_t n,
                          std::optional<RawPoly> modulus_q = std::nullopt,
                          std::optional<RawPoly> modulus_qn = std::nullopt) {
    if (!detail::is_prime(p)) fail(ErrorKind::NonPrimeP, std::to_string(p) + " is not prime");
    if (k == 0 || n == 0) fail(ErrorKind::DegreeMismatch, "k and n must be >= 1");
    if (detail::checked_pow(p, std::uint64_t{k} * n, kMaxFieldSize) > kMaxFieldSize) {
      fail(ErrorKind::FieldTooLarge, "p^(k*n) exceeds " + std::to_string(kMaxFieldSize));
    }
    auto impl = std::make_shared<Impl>(Field::prime(p));
    impl->p = p;
    impl->k = k;
    impl->n = n;

    impl->modulus_q = checked_modulus(impl->prime, k, std::move(modulus_q), "modq");
    impl->base = Field::extension(impl->prime, impl->modulus_q);
    impl->modulus_qn = checked_modulus(*impl->base, n, std::move(modulus_qn), "modqn");
    impl->top = Field::extension(*impl->base, impl->modulus_qn);

    const Field& top = *impl->top;
    impl->rel_trace.resize(top.size());
    impl->abs_trace.resize(top.size());
    for (Code x = 0; x < top.size(); ++x) {
      impl->rel_trace[x] = top.trace(x, k);
      impl->abs_trace[x] = top.trace(x, 1);
    }
    return FieldTower(std::move(impl));
  }

  std::uint32_t p() const noexcept { return impl_->p; }
  std::uint32_t k() const noexcept { return impl_->k; }
  std::uint32_t n() const noexcept { return impl_->n; }
  /// |F_q|.
  std::uint32_t q() const noexcept { return impl_->base->size(); }
  std::uint32_t size(Level level) const noexcept { return field(level).size(); }
  /// Degree of a level over F_p.
  std::uint32_t degree(Level level) const noexcept { return field(level).degree(); }

  const Field& field(Level level) const noexcept {
    switch (level) {
      case Level::prime: return impl_->prime;
      case Level::base: return *impl_->base;
      case Level::top: break;
    }
    return *impl_->top;
  }
  const Field& prime() const noexcept { return impl_->prime; }
  const Field& base() const noexcept { return *impl_->base; }
  const Field& top() const noexcept { return *impl_->top; }

  /// Full monic moduli, low to high.
  const RawPoly& modulus_q() const noexcept { return impl_->modulus_q; }
  const RawPoly& modulus_qn() const noexcept { return impl_->modulus_qn; }

  /// "p=..,k=..,n=.." (the CLI field spec without moduli).
  std::string describe() const {
    return "p=" + std::to_string(p()) + ",k=" + std::to_string(k()) + ",n=" + std::to_string(n());
  }

  Element element(Level level, Code code) const {
    if (code >= size(level)) {
      fail(ErrorKind::OutOfRange, "code " + std::to_string(code) + " out of range for " +
                                      std::string(to_string(level)) + " level of size " + std::to_string(size(level)));
    }
    return {level, code};
  }
  Element zero(Level level) const noexcept { return {level, 0}; }
  Element one(Level level) const noexcept { return {level, 1}; }

  Element add(Element a, Element b) const { return {same(a, b), field(a.level).add(a.code, b.code)}; }
  Element sub(Element a, Element b) const { return {same(a, b), field(a.level).sub(a.code, b.code)}; }
  Element mul(Element a, Element b) const { return {same(a, b), field(a.level).mul(a.code, b.code)}; }
  Element div(Element a, Element b) const { return {same(a, b), field(a.level).div(a.code, b.code)}; }
  Element neg(Element a) const { return {valid_level(a), field(a.level).neg(a.code)}; }
  Element inv(Element a) const { return {valid_level(a), field(a.level).inv(a.code)}; }
  Element pow(Element a, std::uint64_t e) const { return {valid_level(a), field(a.level).pow(a.code, e)}; }

  /// a^{p^j}.
  Element frobenius(Element a, std::uint64_t j) const { return {valid_level(a), field(a.level).frob(a.code, j)}; }

  /// Tr_m^{kn}(a) = a + a^{p^m} + a^{p^{2m}} + ... for a top element; the result is a
  /// top element lying in the subfield of degree m over F_p.
  Element trace(Element a, std::uint32_t m) const {
    require_level(a, Level::top);
    const Field& t = top();
    const Code r = t.trace(a.code, m);
    if (!t.in_subfield(r, m)) fail(ErrorKind::NotInSubfield, "trace left the target subfield");
    return {Level::top, r};
  }

  /// Tr from F_{q^n} down to F_q, as a base element.
  Element relative_trace(Element a) const {
    require_level(a, Level::top);
    return {Level::base, impl_->rel_trace[a.code]};
  }
  Code relative_trace(Code top_code) const noexcept { return impl_->rel_trace[top_code]; }
  std::span<const Code> relative_trace_table() const noexcept { return impl_->rel_trace; }

  /// Absolute trace down to F_p, from the base or top level.
  Element absolute_trace(Element a) const {
    valid(a);
    if (a.level == Level::top) return {Level::prime, impl_->abs_trace[a.code]};
    return {Level::prime, field(a.level).trace(a.code, 1)};
  }
  Code absolute_trace(Code top_code) const noexcept { return impl_->abs_trace[top_code]; }
  std::span<const Code> absolute_trace_table() const noexcept { return impl_->abs_trace; }

  Element embed(Element a, Level to = Level::top) const {
    valid(a);
    if (static_cast<int>(to) < static_cast<int>(a.level)) {
      fail(ErrorKind::LevelMismatch, "cannot embed into a smaller level; use project");
    }
    return {to, a.code};
  }

  Element project(Element a, Level to) const {
    valid(a);
    if (static_cast<int>(to) > static_cast<int>(a.level)) {
      fail(ErrorKind::LevelMismatch, "cannot project into a larger level; use embed");
    }
    if (!field(a.level).in_subfield(a.code, degree(to))) {
      fail(ErrorKind::NotInSubfield, "element " + std::to_string(a.code) + " does not lie in the " +
                                         std::string(to_string(to)) + " subfield");
    }
    return {to, a.code};
  }

  /// Coordinates: F_p digits (length 1 or k) for prime/base, base codes (length n) for top.
  std::vector<Code> coefficients(Element a) const {
    valid(a);
    const std::uint32_t radix = a.level == Level::top ? q() : p();
    const std::uint32_t len = a.level == Level::top ? n() : degree(a.level);
    std::vector<Code> out(len);
    Code v = a.code;
    for (auto& c : out) {
      c = v % radix;
      v /= radix;
    }
    return out;
  }

  Element from_coefficients(Level level, const std::vector<Code>& coeffs) const {
    const std::uint32_t radix = level == Level::top ? q() : p();
    const std::uint32_t len = level == Level::top ? n() : degree(level);
    if (coeffs.size() != len) fail(ErrorKind::DegreeMismatch, "coefficient vector has wrong length");
    Code v = 0;
    for (std::size_t i = len; i-- > 0;) {
      if (coeffs[i] >= radix) fail(ErrorKind::OutOfRange, "coefficient out of range");
      v = v * radix + coeffs[i];
    }
    return {level, v};
  }

 private:
  struct Impl {
    explicit Impl(Field prime_field) : prime(std::move(prime_field)) {}
    std::uint32_t p = 2, k = 1, n = 1;
    Field prime;
    std::optional<Field> base;
    std::optional<Field> top;
    RawPoly modulus_q;
    RawPoly modulus_qn;
    std::vector<Code> rel_trace;
    std::vector<Code> abs_trace;
  };

  explicit FieldTower(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static RawPoly checked_modulus(const Field& coeffs, std::uint32_t degree, std::optional<RawPoly> given,
                                 const char* name) {
    if (!given) return smallest_irreducible(coeffs, degree);
    RawPoly m = std::move(*given);
    if (m.size() != degree + 1 || m.back() != 1) {
      fail(ErrorKind::DegreeMismatch, std::string(name) + " must be monic of degree " + std::to_string(degree));
    }
    for (Code c : m) {
      if (!coeffs.contains(c)) fail(ErrorKind::OutOfRange, std::string(name) + " coefficient out of range");
    }
    if (!is_irreducible(coeffs, m)) fail(ErrorKind::ReducibleModulus, std::string(name) + " is reducible");
    return m;
  }

  Element valid(Element a) const {
    if (a.code >= size(a.level)) {
      fail(ErrorKind::OutOfRange, "code " + std::to_string(a.code) + " out of range for " +
                                      std::string(to_string(a.level)) + " level");
    }
    return a;
  }
  Level valid_level(Element a) const { return valid(a).level; }
  Level same(Element a, Element b) const {
    if (a.level != b.level) fail(ErrorKind::LevelMismatch, "operands live at different levels");
    valid(a);
    valid(b);
    return a.level;
  }
  void require_level(Element a, Level level) const {
    if (a.level != level) {
      fail(ErrorKind::LevelMismatch, "expected a " + std::string(to_string(level)) + " element");
    }
    valid(a);
  }

  std::shared_ptr<const Impl> impl_;
};

}  // namespace ltperm
