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

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ltperm/error.hpp"
#include "ltperm/field_tower.hpp"

namespace ltperm {

/// Univariate polynomial with coefficients at one tower level; coeffs[e] multiplies x^e.
/// The zero polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  Poly(Level level, std::vector<Code> coeffs) : level_(level), coeffs_(std::move(coeffs)) { trim(coeffs_); }

  Level level() const noexcept { return level_; }
  const std::vector<Code>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; 0 for constants and for the zero polynomial.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  Code coeff(std::size_t e) const noexcept { return e < coeffs_.size() ? coeffs_[e] : 0; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  Level level_ = Level::top;
  std::vector<Code> coeffs_;
};

/// Horner evaluation on raw codes.
inline Code eval_code(const Field& f, const std::vector<Code>& coeffs, Code x) noexcept {
  Code acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
  return acc;
}

inline Element eval(const FieldTower& tower, const Poly& poly, Element a) {
  if (a.level != poly.level()) fail(ErrorKind::LevelMismatch, "polynomial and point live at different levels");
  tower.element(a.level, a.code);
  return {a.level, eval_code(tower.field(a.level), poly.coeffs(), a.code)};
}

/// Reduces modulo x^{|F|} - x, so the result has degree < |F| and the same values.
inline Poly reduce_mod_field(const FieldTower& tower, const Poly& poly) {
  const Field& f = tower.field(poly.level());
  const std::size_t size = f.size();
  if (poly.coeffs().size() <= size) return poly;
  std::vector<Code> out(size, 0);
  for (std::size_t e = 0; e < poly.coeffs().size(); ++e) {
    const std::size_t r = e < size ? e : ((e - 1) % (size - 1)) + 1;
    out[r] = f.add(out[r], poly.coeffs()[e]);
  }
  return Poly(poly.level(), std::move(out));
}

/// Newton-form interpolation through distinct abscissae, converted to monomial form.
inline Poly interpolate(const FieldTower& tower, Level level, const std::vector<std::pair<Code, Code>>& points) {
  const Field& f = tower.field(level);
  const std::size_t count = points.size();
  if (count > f.size()) fail(ErrorKind::DuplicateAbscissa, "more points than field elements");
  std::vector<bool> seen(f.size(), false);
  std::vector<Code> xs(count), c(count);
  for (std::size_t i = 0; i < count; ++i) {
    tower.element(level, points[i].first);
    tower.element(level, points[i].second);
    if (seen[points[i].first]) {
      fail(ErrorKind::DuplicateAbscissa, "abscissa " + std::to_string(points[i].first) + " repeated");
    }
    seen[points[i].first] = true;
    xs[i] = points[i].first;
    c[i] = points[i].second;
  }
  for (std::size_t j = 1; j < count; ++j) {
    for (std::size_t i = count - 1; i >= j; --i) {
      c[i] = f.div(f.sub(c[i], c[i - 1]), f.sub(xs[i], xs[i - j]));
    }
  }
  std::vector<Code> acc;
  for (std::size_t i = count; i-- > 0;) {
    // acc = acc * (x - xs[i]) + c[i]
    std::vector<Code> next(acc.size() + 1, 0);
    for (std::size_t e = 0; e < acc.size(); ++e) {
      next[e + 1] = f.add(next[e + 1], acc[e]);
      next[e] = f.sub(next[e], f.mul(acc[e], xs[i]));
    }
    next[0] = f.add(next[0], c[i]);
    acc = std::move(next);
  }
  return Poly(level, std::move(acc));
}

/// "c*x^e + ..." from high to low degree; "0" for the zero polynomial.
inline std::string format_poly(const Poly& poly) {
  if (poly.is_zero()) return "0";
  std::string out;
  for (std::size_t e = poly.coeffs().size(); e-- > 0;) {
    if (poly.coeffs()[e] == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(poly.coeffs()[e]) + "*x^" + std::to_string(e);
  }
  return out;
}

/// Parses `c*x^e` terms joined by `+`; a term may also be `c`, `x`, `x^e` or `c*x`.
/// Coefficients are element codes at `level`; repeated exponents are summed.
inline Poly parse_poly(const FieldTower& tower, Level level, std::string_view text) {
  const Field& f = tower.field(level);
  std::size_t pos = 0;
  auto error = [&](const std::string& what) -> Error {
    return Error(ErrorKind::ParseError, "at position " + std::to_string(pos) + ": " + what);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) throw error("expected a number");
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (1ull << 40)) throw error("number too large");
      ++pos;
    }
    return v;
  };
  std::vector<Code> coeffs;
  skip_ws();
  if (pos == text.size()) throw error("empty polynomial");
  while (true) {
    skip_ws();
    std::uint64_t c = 1;
    std::uint64_t e = 0;
    bool has_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      c = number();
      has_coeff = true;
      skip_ws();
    }
    bool has_x = false;
    if (has_coeff && pos < text.size() && text[pos] == '*') {
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] != 'x') throw error("expected 'x' after '*'");
    }
    if (pos < text.size() && text[pos] == 'x') {
      has_x = true;
      ++pos;
      skip_ws();
      e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = number();
      }
    }
    if (!has_coeff && !has_x) throw error("expected a term");
    if (c >= f.size()) throw error("coefficient " + std::to_string(c) + " out of range");
    if (e > (1u << 24)) throw error("exponent too large");
    if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
    coeffs[e] = f.add(coeffs[e], static_cast<Code>(c));
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+') throw error(std::string("unexpected '") + text[pos] + "'");
    ++pos;
  }
  return Poly(level, std::move(coeffs));
}

}  // namespace ltperm
