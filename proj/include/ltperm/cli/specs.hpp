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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ltperm/additive_perm.hpp"
#include "ltperm/error.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/linear_map.hpp"
#include "ltperm/matrix.hpp"
#include "ltperm/poly.hpp"

// Text forms accepted on the command line.
//
//   field:  p=<int>,k=<int>,n=<int>[,modq=[c0,c1,...]][,modqn=[c0,c1,...]]
//           (moduli monic, coefficients low to high; `;` or space may replace the
//           commas inside the brackets)
//   map:    trace | trace:<c> | identity | const:<code> | mono:<e> | table:<json> |
//           poly:<c*x^e + ...> | a bare polynomial
//   A:      identity | frob:<t> | mono:<p^t> | coeffs:<json>
//   L:      identity | trace | qpoly:<json> | matrix:<json rows> | mono:<q^i> | table:<json>

namespace ltperm::cli {

inline std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  if (text.empty()) fail(ErrorKind::ParseError, std::string(what) + ": expected a number, got ''");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(ErrorKind::ParseError, std::string(what) + " at position " + std::to_string(i) + ": '" +
                                      std::string(text) + "' is not a number");
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > (std::uint64_t{1} << 40)) fail(ErrorKind::ParseError, std::string(what) + ": number too large");
  }
  return v;
}

inline nlohmann::json parse_json(std::string_view text, std::string_view what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, std::string(what) + " at position " + std::to_string(e.byte) + ": invalid JSON");
  }
}

inline std::vector<Code> parse_code_array(std::string_view text, std::string_view what) {
  const auto j = parse_json(text, what);
  if (!j.is_array()) fail(ErrorKind::ParseError, std::string(what) + ": expected a JSON array");
  std::vector<Code> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(ErrorKind::ParseError, std::string(what) + ": entries must be non-negative integers");
    }
    const auto x = v.get<std::uint64_t>();
    if (x > 0xffffffffULL) fail(ErrorKind::OutOfRange, std::string(what) + ": code too large");
    out.push_back(static_cast<Code>(x));
  }
  return out;
}

inline Matrix parse_code_matrix(std::string_view text, std::string_view what) {
  const auto j = parse_json(text, what);
  if (!j.is_array()) fail(ErrorKind::ParseError, std::string(what) + ": expected a JSON array of rows");
  std::vector<std::vector<Code>> rows;
  for (const auto& row : j) rows.push_back(parse_code_array(row.dump(), what));
  for (const auto& row : rows) {
    if (row.size() != rows.size()) fail(ErrorKind::ParseError, std::string(what) + ": matrix must be square");
  }
  return Matrix::from_rows(rows);
}

/// Splits on commas that are not inside brackets.
inline std::vector<std::pair<std::size_t, std::string>> split_top_level(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.emplace_back(start, std::string(text.substr(start, i - start)));
      start = i + 1;
    } else if (text[i] == '[') {
      ++depth;
    } else if (text[i] == ']') {
      --depth;
    }
  }
  return out;
}

inline RawPoly parse_modulus(std::string_view text, std::size_t offset) {
  std::string s(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    fail(ErrorKind::ParseError, "field spec at position " + std::to_string(offset) + ": modulus must be [c0,c1,...]");
  }
  RawPoly out;
  std::string cur;
  for (std::size_t i = 1; i + 1 <= s.size(); ++i) {
    const char c = i + 1 == s.size() ? ',' : s[i];
    if (c == ',' || c == ';' || c == ' ') {
      if (!cur.empty()) out.push_back(static_cast<Code>(parse_uint(cur, "modulus coefficient")));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

struct FieldSpec {
  std::uint32_t p = 0, k = 0, n = 0;
  std::optional<RawPoly> modq, modqn;

  FieldTower build() const { return FieldTower::build(p, k, n, modq, modqn); }
};

inline FieldSpec parse_field_spec(std::string_view text) {
  FieldSpec spec;
  bool seen_p = false, seen_k = false, seen_n = false;
  for (const auto& [offset, token] : split_top_level(text)) {
    const auto eq = token.find('=');
    auto bad = [&](const std::string& why) {
      fail(ErrorKind::ParseError, "field spec at position " + std::to_string(offset) + ": " + why + " in '" + token + "'");
    };
    if (eq == std::string::npos) bad("expected key=value");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "p" || key == "k" || key == "n") {
      std::uint64_t v = 0;
      try {
        v = parse_uint(value, "field spec " + key);
      } catch (const Error&) {
        bad("'" + value + "' is not a number");
      }
      if (v > 1000000) bad("value too large");
      (key == "p" ? spec.p : key == "k" ? spec.k : spec.n) = static_cast<std::uint32_t>(v);
      (key == "p" ? seen_p : key == "k" ? seen_k : seen_n) = true;
    } else if (key == "modq") {
      spec.modq = parse_modulus(value, offset + eq + 1);
    } else if (key == "modqn") {
      spec.modqn = parse_modulus(value, offset + eq + 1);
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  if (!seen_p || !seen_k || !seen_n) fail(ErrorKind::ParseError, "field spec needs p, k and n");
  return spec;
}

inline std::string render_modulus(const RawPoly& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + std::to_string(m[i]);
  return out + "]";
}

/// Canonical text of a tower: the field spec with both moduli spelled out.
inline std::string canonical_field_spec(const FieldTower& t) {
  return t.describe() + ",modq=" + render_modulus(t.modulus_q()) + ",modqn=" + render_modulus(t.modulus_qn());
}

namespace detail {

inline std::pair<std::string, std::string> split_alias(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return {std::string(spec), ""};
  return {std::string(spec.substr(0, colon)), std::string(spec.substr(colon + 1))};
}

inline bool looks_like_poly(std::string_view spec) {
  for (char c : spec) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == '^' || c == '*' || c == '+' || c == ' ')) {
      return false;
    }
  }
  return spec.find('x') != std::string_view::npos;
}

inline FieldFn restrict_codomain(const FieldTower& tower, FieldFn fn, Level codomain) {
  if (fn.codomain() == codomain) return fn;
  std::vector<Code> t(fn.table().begin(), fn.table().end());
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t[x] >= tower.size(codomain)) {
      fail(ErrorKind::NotInSubfield, "value at " + std::to_string(x) + " is not in the " +
                                         std::string(to_string(codomain)) + " field");
    }
  }
  FieldFn out(fn.domain(), codomain, std::move(t));
  if (fn.poly()) out.attach_poly(*fn.poly());
  return out;
}

}  // namespace detail

/// A map between two levels of the tower (domain must contain codomain).
inline FieldFn parse_map_spec(const FieldTower& tower, Level domain, Level codomain, std::string_view spec) {
  const auto [name, arg] = detail::split_alias(spec);
  const Field& fd = tower.field(domain);
  if (name == "identity") {
    if (!arg.empty()) fail(ErrorKind::ParseError, "identity takes no argument");
    return detail::restrict_codomain(tower, FieldFn::identity(tower, domain), codomain);
  }
  if (name == "trace") {
    // Down to F_q from the top level, down to F_p from F_q.
    const Code c = arg.empty() ? 1 : static_cast<Code>(parse_uint(arg, "trace coefficient"));
    tower.element(domain, c);
    FieldFn fn = FieldFn::tabulate(tower, domain, domain, [&](Code x) {
      const Code cx = fd.mul(c, x);
      return domain == Level::top ? tower.relative_trace(cx) : fd.trace(cx, 1);
    });
    return detail::restrict_codomain(tower, std::move(fn), codomain);
  }
  if (name == "const") {
    return FieldFn::constant(tower, domain, codomain, static_cast<Code>(parse_uint(arg, "constant")));
  }
  if (name == "mono") {
    const auto e = parse_uint(arg, "monomial exponent");
    FieldFn fn = FieldFn::tabulate(tower, domain, domain, [&](Code x) { return fd.pow(x, e); });
    return detail::restrict_codomain(tower, std::move(fn), codomain);
  }
  if (name == "table") return FieldFn::make(tower, domain, codomain, parse_code_array(arg, "map table"));
  if (name == "poly" || detail::looks_like_poly(spec)) {
    const Poly poly = parse_poly(tower, domain, name == "poly" ? std::string_view(arg) : spec);
    return detail::restrict_codomain(tower, FieldFn::from_poly(tower, poly), codomain);
  }
  fail(ErrorKind::ParseError, "unknown map spec '" + std::string(spec) + "'");
}

inline AdditivePerm parse_additive_spec(const FieldTower& tower, std::string_view spec) {
  const auto [name, arg] = detail::split_alias(spec);
  if (name == "identity") return AdditivePerm::identity(tower);
  if (name == "frob") return AdditivePerm::frobenius(tower, static_cast<std::uint32_t>(parse_uint(arg, "frob exponent")));
  if (name == "mono") {
    std::uint64_t e = parse_uint(arg, "monomial exponent");
    std::uint32_t t = 0;
    while (e > 1 && e % tower.p() == 0) {
      e /= tower.p();
      ++t;
    }
    if (e != 1) fail(ErrorKind::NotLinear, "additive monomials have exponent p^t");
    return AdditivePerm::frobenius(tower, t);
  }
  if (name == "coeffs") return AdditivePerm::make(tower, parse_code_array(arg, "additive coefficients"));
  fail(ErrorKind::ParseError, "unknown additive spec '" + std::string(spec) + "'");
}

inline LinearMap parse_linear_spec(const FieldTower& tower, std::string_view spec) {
  const auto [name, arg] = detail::split_alias(spec);
  if (name == "identity") return LinearMap::identity(tower);
  if (name == "trace") return LinearMap::from_qpoly(tower, std::vector<Code>(tower.n(), 1));
  if (name == "qpoly") return LinearMap::from_qpoly(tower, parse_code_array(arg, "q-polynomial"));
  if (name == "matrix") return LinearMap::from_matrix(tower, parse_code_matrix(arg, "linear map matrix"));
  if (name == "mono") {
    std::uint64_t e = parse_uint(arg, "monomial exponent");
    std::uint32_t i = 0;
    while (e > 1 && e % tower.q() == 0) {
      e /= tower.q();
      ++i;
    }
    if (e != 1) fail(ErrorKind::NotLinear, "F_q-linear monomials have exponent q^i");
    std::vector<Code> c(i + 1, 0);
    c[i] = 1;
    return LinearMap::from_qpoly(tower, std::move(c));
  }
  if (name == "table") {
    return LinearMap::from_fn(tower, FieldFn::make(tower, Level::top, Level::top, parse_code_array(arg, "map table")));
  }
  fail(ErrorKind::ParseError, "unknown linear map spec '" + std::string(spec) + "'");
}

}  // namespace ltperm::cli
