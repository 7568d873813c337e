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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ltperm/error.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/poly.hpp"

namespace ltperm {

/// Total map between two tower levels, stored as a dense table of output codes
/// indexed by input code. A polynomial form may be attached; it is informational
/// and every consumer reads the table.
class FieldFn {
 public:
  FieldFn() = default;

  /// Unchecked; use make() for input that has not been validated.
  FieldFn(Level domain, Level codomain, std::vector<Code> table)
      : domain_(domain), codomain_(codomain), table_(std::move(table)) {}

  static FieldFn make(const FieldTower& tower, Level domain, Level codomain, std::vector<Code> table) {
    if (table.size() != tower.size(domain)) {
      fail(ErrorKind::DegreeMismatch, "table has " + std::to_string(table.size()) + " entries, domain has " +
                                          std::to_string(tower.size(domain)));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] >= tower.size(codomain)) {
        fail(ErrorKind::OutOfRange, "table entry " + std::to_string(i) + " is not a " +
                                        std::string(to_string(codomain)) + " code");
      }
    }
    return FieldFn(domain, codomain, std::move(table));
  }

  template <class Fn>
  static FieldFn tabulate(const FieldTower& tower, Level domain, Level codomain, Fn&& fn) {
    std::vector<Code> table(tower.size(domain));
    for (Code x = 0; x < table.size(); ++x) table[x] = fn(x);
    return FieldFn(domain, codomain, std::move(table));
  }

  static FieldFn identity(const FieldTower& tower, Level level) {
    return tabulate(tower, level, level, [](Code x) { return x; });
  }

  static FieldFn constant(const FieldTower& tower, Level domain, Level codomain, Code c) {
    tower.element(codomain, c);
    return FieldFn(domain, codomain, std::vector<Code>(tower.size(domain), c));
  }

  static FieldFn from_poly(const FieldTower& tower, const Poly& poly) {
    const Field& f = tower.field(poly.level());
    FieldFn fn = tabulate(tower, poly.level(), poly.level(), [&](Code x) { return eval_code(f, poly.coeffs(), x); });
    fn.poly_ = poly;
    return fn;
  }

  Level domain() const noexcept { return domain_; }
  Level codomain() const noexcept { return codomain_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::span<const Code> table() const noexcept { return table_; }
  Code operator()(Code x) const noexcept { return table_[x]; }

  const std::optional<Poly>& poly() const noexcept { return poly_; }
  FieldFn& attach_poly(Poly poly) {
    poly_ = std::move(poly);
    return *this;
  }

  /// Compares domain, codomain and table; attached polynomials are ignored.
  friend bool operator==(const FieldFn& a, const FieldFn& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.table_ == b.table_;
  }

 private:
  Level domain_ = Level::top;
  Level codomain_ = Level::top;
  std::vector<Code> table_;
  std::optional<Poly> poly_;
};

/// Two inputs with one output; `first < second`.
struct Collision {
  Code first = 0;
  Code second = 0;
  friend bool operator==(const Collision&, const Collision&) = default;
};

/// First collision in code order: the smallest `second` whose image was already hit.
inline std::optional<Collision> find_collision(const FieldFn& f) {
  if (f.domain() != f.codomain()) fail(ErrorKind::LevelMismatch, "permutation test needs a square map");
  std::vector<Code> first_hit(f.size(), static_cast<Code>(-1));
  for (Code x = 0; x < f.size(); ++x) {
    Code& slot = first_hit[f(x)];
    if (slot != static_cast<Code>(-1)) return Collision{slot, x};
    slot = x;
  }
  return std::nullopt;
}

/// Seen-set sweep over the table.
inline bool is_permutation(const FieldFn& f) { return !find_collision(f).has_value(); }

inline bool is_identity(const FieldFn& f) {
  if (f.domain() != f.codomain()) return false;
  for (Code x = 0; x < f.size(); ++x) {
    if (f(x) != x) return false;
  }
  return true;
}

/// outer ∘ inner.
inline FieldFn compose(const FieldFn& outer, const FieldFn& inner) {
  if (outer.domain() != inner.codomain()) fail(ErrorKind::LevelMismatch, "composition levels do not chain");
  std::vector<Code> table(inner.size());
  for (Code x = 0; x < inner.size(); ++x) table[x] = outer(inner(x));
  return FieldFn(inner.domain(), outer.codomain(), std::move(table));
}

/// Interpolating polynomial of the full graph (degree < |F|).
inline Poly poly_form(const FieldTower& tower, const FieldFn& f) {
  if (f.domain() != f.codomain()) fail(ErrorKind::LevelMismatch, "polynomial form needs a square map");
  std::vector<std::pair<Code, Code>> points(f.size());
  for (Code x = 0; x < f.size(); ++x) points[x] = {x, f(x)};
  return interpolate(tower, f.domain(), points);
}

/// Table inverse of a permutation.
inline FieldFn comp_inverse(const FieldFn& f) {
  if (auto c = find_collision(f)) {
    fail(ErrorKind::NotAPermutation,
         "inputs " + std::to_string(c->first) + " and " + std::to_string(c->second) + " share an image");
  }
  std::vector<Code> table(f.size());
  for (Code x = 0; x < f.size(); ++x) table[f(x)] = x;
  return FieldFn(f.codomain(), f.domain(), std::move(table));
}

/// Table inverse with its reduced polynomial form attached.
inline FieldFn comp_inverse(const FieldTower& tower, const FieldFn& f) {
  FieldFn inv = comp_inverse(f);
  inv.attach_poly(poly_form(tower, inv));
  return inv;
}

}  // namespace ltperm
