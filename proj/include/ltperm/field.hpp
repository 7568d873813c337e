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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ltperm/error.hpp"

namespace ltperm {

/// Integer code of a field element. For F_p the code is the residue; for an
/// extension F_s[t]/(M) the element e_0 + e_1 t + ... is encoded as sum e_j |F_s|^j.
using Code = std::uint32_t;

/// Dense polynomial over some Field, coefficient codes from low to high degree.
using RawPoly = std::vector<Code>;

namespace detail {

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > limit / base) return limit + 1;
    r *= base;
  }
  return r;
}

}  // namespace detail

/// Largest field this library will tabulate.
inline constexpr std::uint32_t kMaxFieldSize = 1u << 20;

/// One level of a finite field, with log/antilog tables for multiplication.
///
/// A Field is either a prime field F_p or a simple extension of a smaller Field by
/// a monic irreducible modulus. Addition works digit-wise on the base-p expansion
/// of codes, which is consistent across every level of a tower built this way.
class Field {
 public:
  static Field prime(std::uint32_t p) {
    if (!detail::is_prime(p)) fail(ErrorKind::NonPrimeP, std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    f.degree_ = 1;
    f.size_ = p;
    f.build_tables([p](Code a, Code b) { return static_cast<Code>((std::uint64_t{a} * b) % p); });
    return f;
  }

  /// F_sub[t]/(modulus). `modulus` is monic, low to high, length deg + 1.
  /// Irreducibility is the caller's responsibility (see is_irreducible).
  static Field extension(const Field& sub, std::span<const Code> modulus) {
    if (modulus.size() < 2 || modulus.back() != 1) {
      fail(ErrorKind::DegreeMismatch, "modulus must be monic of degree >= 1");
    }
    const auto d = static_cast<std::uint32_t>(modulus.size() - 1);
    const std::uint64_t size = detail::checked_pow(sub.size(), d, kMaxFieldSize);
    if (size > kMaxFieldSize) fail(ErrorKind::FieldTooLarge, "extension exceeds the tabulation limit");
    Field f;
    f.p_ = sub.p_;
    f.degree_ = sub.degree_ * d;
    f.size_ = static_cast<std::uint32_t>(size);
    const RawPoly mod(modulus.begin(), modulus.end());
    const std::uint32_t s = sub.size();
    f.build_tables([&sub, &mod, d, s](Code a, Code b) {
      std::vector<Code> x(d), y(d), prod(2 * d - 1, 0);
      for (std::uint32_t i = 0; i < d; ++i, a /= s, b /= s) {
        x[i] = a % s;
        y[i] = b % s;
      }
      for (std::uint32_t i = 0; i < d; ++i) {
        if (x[i] == 0) continue;
        for (std::uint32_t j = 0; j < d; ++j) prod[i + j] = sub.add(prod[i + j], sub.mul(x[i], y[j]));
      }
      for (std::uint32_t i = 2 * d - 1; i-- > d;) {
        const Code c = prod[i];
        if (c == 0) continue;
        for (std::uint32_t j = 0; j < d; ++j) prod[i - d + j] = sub.sub(prod[i - d + j], sub.mul(c, mod[j]));
        prod[i] = 0;
      }
      Code r = 0;
      for (std::uint32_t i = d; i-- > 0;) r = r * s + prod[i];
      return r;
    });
    return f;
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  /// Degree over the prime field.
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t size() const noexcept { return size_; }
  bool contains(Code a) const noexcept { return a < size_; }
  Code primitive() const noexcept { return exp_[1 % (size_ - 1)]; }

  Code add(Code a, Code b) const noexcept {
    if (p_ == 2) return a ^ b;
    Code r = 0;
    for (Code w = 1; (a | b) != 0; w *= p_, a /= p_, b /= p_) {
      Code s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      r += s * w;
    }
    return r;
  }

  Code neg(Code a) const noexcept {
    if (p_ == 2) return a;
    Code r = 0;
    for (Code w = 1; a != 0; w *= p_, a /= p_) {
      const Code d = a % p_;
      if (d != 0) r += (p_ - d) * w;
    }
    return r;
  }

  Code sub(Code a, Code b) const noexcept { return add(a, neg(b)); }

  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Code inv(Code a) const {
    if (a == 0) fail(ErrorKind::ZeroInverse, "inverse of zero");
    return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  }

  Code div(Code a, Code b) const { return mul(a, inv(b)); }

  /// Square-and-multiply.
  Code pow(Code a, std::uint64_t e) const noexcept {
    Code result = 1;
    Code base = a;
    while (e != 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  /// a^{p^j}.
  Code frob(Code a, std::uint64_t j) const noexcept {
    if (a == 0) return 0;
    const std::uint64_t order = size_ - 1;
    std::uint64_t scale = 1;
    for (std::uint64_t i = 0, e = j % degree_; i < e; ++i) scale = (scale * p_) % order;
    return exp_[(std::uint64_t{log_[a]} * scale) % order];
  }

  /// Image of an integer in the prime subfield.
  Code scalar(std::int64_t c) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    return static_cast<Code>(((c % p) + p) % p);
  }

  /// Tr to F_{p^m}: a + a^{p^m} + ... ; m must divide degree().
  Code trace(Code a, std::uint32_t m) const {
    if (m == 0 || degree_ % m != 0) {
      fail(ErrorKind::NonDivisorM, std::to_string(m) + " does not divide " + std::to_string(degree_));
    }
    Code acc = 0;
    for (std::uint32_t i = 0; i < degree_ / m; ++i) acc = add(acc, frob(a, std::uint64_t{i} * m));
    return acc;
  }

  /// True iff a lies in the subfield of degree m, i.e. a^{p^m} = a.
  bool in_subfield(Code a, std::uint32_t m) const { return degree_ % m == 0 && frob(a, m) == a; }

  std::uint32_t log(Code a) const {
    if (a == 0) fail(ErrorKind::ZeroInverse, "log of zero");
    return log_[a];
  }

 private:
  Field() = default;

  template <class SlowMul>
  void build_tables(SlowMul&& slow_mul) {
    const std::uint32_t order = size_ - 1;
    auto slow_pow = [&](Code a, std::uint64_t e) {
      Code r = 1;
      while (e != 0) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    const auto factors = detail::prime_factors(order);
    Code g = 0;
    for (Code cand = 1; cand < size_ && g == 0; ++cand) {
      bool primitive = slow_pow(cand, order) == 1;
      for (auto r : factors) {
        if (!primitive) break;
        if (slow_pow(cand, order / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) g = cand;
    }
    if (g == 0) fail(ErrorKind::ReducibleModulus, "no primitive element; modulus is reducible");
    exp_.assign(2 * std::size_t{order}, 0);
    log_.assign(size_, 0);
    Code x = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
      exp_[i] = x;
      exp_[i + order] = x;
      log_[x] = i;
      x = slow_mul(x, g);
    }
  }

  std::uint32_t p_ = 2;
  std::uint32_t degree_ = 1;
  std::uint32_t size_ = 2;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
};

// Polynomials over a Field ----------------------------------------------------

inline void trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo b (b nonzero).
inline RawPoly poly_rem(const Field& f, RawPoly a, RawPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) fail(ErrorKind::ZeroInverse, "polynomial division by zero");
  const Code lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const Code c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  return a;
}

/// Brute force: a monic polynomial of degree d is irreducible iff it has no monic
/// factor of degree 1..d/2.
inline bool is_irreducible(const Field& f, std::span<const Code> monic) {
  RawPoly poly(monic.begin(), monic.end());
  trim(poly);
  if (poly.size() < 2) return false;
  const std::size_t d = poly.size() - 1;
  for (std::size_t e = 1; e <= d / 2; ++e) {
    const std::uint64_t count = detail::checked_pow(f.size(), e, std::numeric_limits<std::uint32_t>::max());
    RawPoly g(e + 1, 0);
    g[e] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < e; ++i, v /= f.size()) g[i] = static_cast<Code>(v % f.size());
      if (poly_rem(f, poly, g).empty()) return false;
    }
  }
  return true;
}

/// Lexicographically smallest monic irreducible polynomial of degree d, comparing
/// the coefficient tuples (c_0, c_1, ..., c_{d-1}) as integers, low degree first.
inline RawPoly smallest_irreducible(const Field& f, std::uint32_t d) {
  if (d == 0) fail(ErrorKind::DegreeMismatch, "degree must be >= 1");
  const std::uint64_t count = detail::checked_pow(f.size(), d, kMaxFieldSize);
  if (count > kMaxFieldSize) fail(ErrorKind::FieldTooLarge, "modulus search space too large");
  RawPoly g(d + 1, 0);
  g[d] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (std::uint32_t i = d; i-- > 0; v /= f.size()) g[i] = static_cast<Code>(v % f.size());
    if (is_irreducible(f, g)) return g;
  }
  fail(ErrorKind::ReducibleModulus, "no irreducible polynomial found");
}

}  // namespace ltperm
