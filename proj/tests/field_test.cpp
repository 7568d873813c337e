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

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "ltperm/field_tower.hpp"
#include "support/oracles.hpp"

namespace ltperm {
namespace {

struct Shape {
  std::uint32_t p, k, n;
};

std::vector<Shape> small_shapes() {
  std::vector<Shape> out;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::uint32_t k = 1; k <= 6; ++k)
      for (std::uint32_t n = 1; n <= 6; ++n) {
        std::uint64_t s = 1;
        for (std::uint32_t i = 0; i < k * n; ++i) s *= p;
        if (s <= 64) out.push_back({p, k, n});
      }
  return out;
}

TEST(FieldTower, DefaultModulusForF4) {
  const auto t = FieldTower::build(2, 1, 2);
  EXPECT_EQ(t.modulus_qn(), (RawPoly{1, 1, 1}));
  EXPECT_EQ(t.size(Level::top), 4u);
}

TEST(FieldTower, DefaultModuliAreSmallestIrreducible) {
  // Brute force: first monic polynomial, coefficient tuples compared low degree first,
  // with no root and (degree <= 3) therefore irreducible.
  const auto t = FieldTower::build(3, 1, 2);
  EXPECT_EQ(t.modulus_qn(), (RawPoly{1, 0, 1}));
  const auto t5 = FieldTower::build(5, 1, 3);
  for (Code c0 = 0; c0 < 5; ++c0)
    for (Code c1 = 0; c1 < 5; ++c1)
      for (Code c2 = 0; c2 < 5; ++c2) {
        bool root = false;
        for (Code x = 0; x < 5; ++x) root = root || (c0 + c1 * x + c2 * x * x + x * x * x) % 5 == 0;
        if (!root) {
          EXPECT_EQ(t5.modulus_qn(), (RawPoly{c0, c1, c2, 1}));
          return;
        }
      }
}

TEST(FieldTower, AcceptsGivenIrreducibleModulus) {
  const auto t = FieldTower::build(3, 1, 2, std::nullopt, RawPoly{1, 0, 1});
  const Element tt{Level::top, 3};
  EXPECT_EQ(t.mul(tt, tt), (Element{Level::top, 2}));
}

TEST(FieldTower, RejectsBadInput) {
  auto kind = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind([] { FieldTower::build(4, 1, 2); }), ErrorKind::NonPrimeP);
  EXPECT_EQ(kind([] { FieldTower::build(2, 1, 2, std::nullopt, RawPoly{1, 0, 1}); }), ErrorKind::ReducibleModulus);
  EXPECT_EQ(kind([] { FieldTower::build(2, 0, 2); }), ErrorKind::DegreeMismatch);
  EXPECT_EQ(kind([] { FieldTower::build(2, 1, 2, std::nullopt, RawPoly{1, 1, 1, 1}); }), ErrorKind::DegreeMismatch);
  EXPECT_EQ(kind([] { FieldTower::build(2, 2, 2, RawPoly{1, 1}); }), ErrorKind::DegreeMismatch);
  EXPECT_EQ(kind([] { FieldTower::build(2, 30, 1); }), ErrorKind::FieldTooLarge);
  try {
    FieldTower::build(2, 2, 2, RawPoly{1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReducibleModulus);
    EXPECT_NE(e.detail().find("modq"), std::string::npos);
  }
}

TEST(FieldTower, SmallProductsAndInverses) {
  const auto f4 = FieldTower::build(2, 1, 2);
  const Element t{Level::top, 2};
  EXPECT_EQ(f4.mul(t, t), (Element{Level::top, 3}));
  EXPECT_EQ(f4.inv(t), (Element{Level::top, 3}));
  EXPECT_EQ(f4.frobenius(t, 1), (Element{Level::top, 3}));
  const auto f9 = FieldTower::build(3, 1, 2);
  const Element s{Level::top, 3};
  EXPECT_EQ(f9.mul(s, s), (Element{Level::top, 2}));
  EXPECT_EQ(f9.frobenius(s, 1), (Element{Level::top, 6}));
  EXPECT_THROW(f9.inv(f9.zero(Level::top)), Error);
  EXPECT_THROW(f9.add(s, Element{Level::base, 1}), Error);
}

TEST(FieldTower, ArithmeticMatchesSchoolbookProduct) {
  for (const auto& sh : small_shapes()) {
    const auto t = FieldTower::build(sh.p, sh.k, sh.n);
    const Field& top = t.top();
    const Field& base = t.base();
    for (Code a = 0; a < top.size(); ++a)
      for (Code b = 0; b < top.size(); ++b) ASSERT_EQ(top.mul(a, b), oracle::top_mul(t, a, b)) << t.describe();
    for (Code a = 0; a < base.size(); ++a)
      for (Code b = 0; b < base.size(); ++b) ASSERT_EQ(base.mul(a, b), oracle::base_mul(t, a, b));
  }
}

TEST(FieldTower, FieldAxiomsExhaustively) {
  for (const auto& sh : small_shapes()) {
    const auto t = FieldTower::build(sh.p, sh.k, sh.n);
    const Field& f = t.top();
    for (Code a = 0; a < f.size(); ++a) {
      if (a != 0) ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
      ASSERT_EQ(f.add(a, f.neg(a)), 0u);
      for (Code b = 0; b < f.size(); ++b) {
        ASSERT_EQ(f.add(a, b), f.add(b, a));
        ASSERT_EQ(f.mul(a, b), f.mul(b, a));
        for (Code c = 0; c < f.size(); c += 3) {
          ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
          ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        }
      }
    }
  }
}

TEST(FieldTower, FrobeniusIsAFieldAutomorphism) {
  for (const auto& sh : small_shapes()) {
    const auto t = FieldTower::build(sh.p, sh.k, sh.n);
    const Field& f = t.top();
    const std::uint32_t d = sh.k * sh.n;
    for (Code a = 0; a < f.size(); ++a) {
      ASSERT_EQ(f.frob(a, 0), a);
      ASSERT_EQ(f.frob(a, d), a);
      ASSERT_EQ(f.frob(a, 1), oracle::top_pow(t, a, sh.p));
      for (Code b = 0; b < f.size(); b += 5) {
        ASSERT_EQ(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
        ASSERT_EQ(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
      }
    }
  }
}

TEST(FieldTower, TraceExamples) {
  const auto t = FieldTower::build(2, 1, 2);
  EXPECT_EQ(t.absolute_trace(Element{Level::top, 2}), (Element{Level::prime, 1}));
  EXPECT_EQ(t.absolute_trace(Element{Level::top, 1}), (Element{Level::prime, 0}));
  const auto t9 = FieldTower::build(3, 1, 2);
  for (Code c = 0; c < 3; ++c) EXPECT_EQ(t9.relative_trace(c), (2 * c) % 3);
  EXPECT_THROW(t.trace(Element{Level::top, 2}, 3), Error);
}

TEST(FieldTower, TraceIsLinearSurjectiveAndFrobeniusInvariant) {
  for (const auto& sh : small_shapes()) {
    const auto t = FieldTower::build(sh.p, sh.k, sh.n);
    const Field& f = t.top();
    const std::uint32_t d = sh.k * sh.n;
    for (std::uint32_t m = 1; m <= d; ++m) {
      if (d % m != 0) continue;
      std::set<Code> image;
      for (Code a = 0; a < f.size(); ++a) {
        const Code tr = t.trace({Level::top, a}, m).code;
        image.insert(tr);
        ASSERT_TRUE(f.in_subfield(tr, m));
        ASSERT_EQ(t.trace({Level::top, f.frob(a, m)}, m).code, tr);
        // Tr(c a) = c Tr(a) for c in F_{p^m}.
        for (Code c = 0; c < f.size(); c += 7) {
          if (!f.in_subfield(c, m)) continue;
          ASSERT_EQ(t.trace({Level::top, f.mul(c, a)}, m).code, f.mul(c, tr));
        }
      }
      std::uint64_t sub = 1;
      for (std::uint32_t i = 0; i < m; ++i) sub *= sh.p;
      EXPECT_EQ(image.size(), sub);
    }
  }
}

TEST(FieldTower, EmbedAndProject) {
  const auto t = FieldTower::build(2, 1, 2);
  EXPECT_EQ(t.embed(Element{Level::prime, 1}), (Element{Level::top, 1}));
  EXPECT_THROW(t.project(Element{Level::top, 2}, Level::prime), Error);
  for (const auto& sh : small_shapes()) {
    const auto tw = FieldTower::build(sh.p, sh.k, sh.n);
    for (Code c = 0; c < tw.q(); ++c) {
      const Element e{Level::base, c};
      ASSERT_EQ(tw.project(tw.embed(e), Level::base), e);
    }
  }
}

TEST(FieldTower, CoefficientCodecRoundTrips) {
  const auto t = FieldTower::build(3, 2, 2);
  for (Code a = 0; a < t.size(Level::top); ++a) {
    const Element e{Level::top, a};
    ASSERT_EQ(t.from_coefficients(Level::top, t.coefficients(e)), e);
  }
}

TEST(FieldTower, RandomizedAxiomsOnLargerTowers) {
  std::mt19937_64 rng(2026);
  for (const Shape sh : {Shape{2, 2, 5}, Shape{3, 2, 3}, Shape{5, 2, 2}, Shape{2, 5, 2}}) {
    const auto t = FieldTower::build(sh.p, sh.k, sh.n);
    const Field& f = t.top();
    std::uniform_int_distribution<Code> pick(0, static_cast<Code>(f.size() - 1));
    for (int i = 0; i < 3000; ++i) {
      const Code a = pick(rng), b = pick(rng), c = pick(rng);
      ASSERT_EQ(f.mul(a, b), oracle::top_mul(t, a, b));
      ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      if (a != 0) ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
    }
  }
}

}  // namespace
}  // namespace ltperm
