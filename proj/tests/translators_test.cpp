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
#include <vector>

#include "gtest/gtest.h"
#include "ltperm/instances.hpp"
#include "ltperm/translators.hpp"
#include "support/oracles.hpp"

namespace ltperm {
namespace {

// Straight from the definition, with the schoolbook oracle for the products.
bool oracle_translator(const FieldTower& t, const FieldFn& f, Code gamma, Code b, const AdditivePerm& a) {
  for (Code x = 0; x < t.size(Level::top); ++x)
    for (Code u = 0; u < t.q(); ++u) {
      const Code shifted = t.top().add(x, static_cast<Code>(oracle::top_mul(t, u, gamma)));
      const Code lhs = static_cast<Code>(oracle::base_add(t, f(shifted), oracle::base_neg(t, f(x))));
      if (lhs != oracle::base_mul(t, b, a.apply(u))) return false;
    }
  return true;
}

FieldFn trace_fn(const FieldTower& t) {
  return FieldFn::tabulate(t, Level::top, Level::base, [&](Code x) { return t.relative_trace(x); });
}

TEST(Translators, VerifyExamples) {
  const auto t = FieldTower::build(2, 1, 2);
  const auto id = AdditivePerm::identity(t);
  const FieldFn tr = trace_fn(t);
  const auto ok = verify_translator(t, tr, 2, 1, id);
  ASSERT_TRUE(ok.cert);
  EXPECT_TRUE(ok.cert->verified);
  const auto bad = verify_translator(t, tr, 1, 1, id);
  ASSERT_TRUE(bad.refutation);
  EXPECT_EQ(*bad.refutation, (Refutation{0, 1}));
  EXPECT_TRUE(verify_translator(t, tr, 1, 0, id).cert);
  EXPECT_THROW(verify_translator(t, tr, 0, 0, id), Error);
}

TEST(Translators, SearchExamples) {
  const auto t = FieldTower::build(2, 1, 2);
  const auto id = AdditivePerm::identity(t);
  const auto s = search_translators(t, trace_fn(t), id);
  EXPECT_EQ(s.pairs, (std::vector<TranslatorPair>{{1, 0}, {2, 1}, {3, 1}}));
  EXPECT_TRUE(s.is_subspace());
  const auto zero = search_translators(t, FieldFn::constant(t, Level::top, Level::base, 0), id);
  EXPECT_EQ(zero.pairs, (std::vector<TranslatorPair>{{1, 0}, {2, 0}, {3, 0}}));
}

TEST(Translators, SearchMatchesDefinitionOnRandomMaps) {
  Rng rng(21);
  for (auto [p, k, n] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
           {2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {3, 1, 3}, {5, 1, 2}}) {
    const auto t = FieldTower::build(p, k, n);
    for (int trial = 0; trial < 6; ++trial) {
      const auto a = random_additive_perm(t, rng);
      // Half the maps carry a planted translator, the rest are random.
      FieldFn f = trial % 2 ? FieldFn::tabulate(t, Level::top, Level::base, [&](Code) { return random_code(rng, t.q()); })
                            : [&] {
        const Code g = random_nonzero(rng, t.size(Level::top));
        return translator_function(t, {g}, 0, random_code(rng, t.q()), a, true, rng);
      }();
      const auto s = search_translators(t, f, a);
      std::vector<TranslatorPair> expected;
      for (Code g = 1; g < t.size(Level::top); ++g)
        for (Code b = 0; b < t.q(); ++b)
          if (oracle_translator(t, f, g, b, a)) expected.push_back({g, b});
      EXPECT_EQ(s.pairs, expected);
      if (!s.pairs.empty() && s.pairs.front().b != 0) EXPECT_TRUE(is_surjective(t, f));
    }
  }
}

TEST(Translators, TranslatorsFormSubspaceWhenShapeIsLinear) {
  Rng rng(8);
  const auto t = FieldTower::build(3, 1, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_additive_perm(t, rng);
    const auto gammas = random_independent(t, 2, rng);
    const FieldFn f = translator_function(t, gammas, 0, 1 + trial % 2, a, true, rng);
    const auto s = search_translators(t, f, a);
    EXPECT_TRUE(s.is_subspace());
    EXPECT_GE(s.pairs.size(), 8u);
  }
}

TEST(Translators, SumAndScaleCertificates) {
  const auto t = FieldTower::build(2, 1, 2);
  const auto id = AdditivePerm::identity(t);
  const FieldFn tr = trace_fn(t);
  const auto c2 = *verify_translator(t, tr, 2, 1, id).cert;
  const auto c3 = *verify_translator(t, tr, 3, 1, id).cert;
  const auto sum = sum_certs(t, c2, c3);
  EXPECT_EQ(sum.gamma, 1u);
  EXPECT_EQ(sum.b, 0u);
  EXPECT_TRUE(sum.verified);
  EXPECT_EQ(scale_cert(t, c2, 1).gamma, 2u);
  EXPECT_THROW(sum_certs(t, c2, c2), Error);
  const std::vector<TranslatorCert> one{c2};
  const std::vector<Code> zero{0};
  EXPECT_TRUE(shift_identity_holds(t, one, zero));
}

TEST(Translators, ShiftIdentityOnRandomSystems) {
  Rng rng(4);
  for (auto [p, k, n] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
           {2, 2, 3}, {3, 1, 4}, {5, 1, 3}}) {
    const auto t = FieldTower::build(p, k, n);
    const auto id = AdditivePerm::identity(t);
    const auto gammas = random_independent(t, 2, rng);
    // f = Tr(c x) with Tr(c gamma_i) = b_i makes gamma_i a (b_i, id)-translator.
    const std::vector<Code> bs{random_code(rng, t.q()), random_code(rng, t.q())};
    const FieldFn f = trace_functional(t, *functional_with_values(t, gammas, bs));
    const std::vector<TranslatorCert> certs{*verify_translator(t, f, gammas[0], bs[0], id).cert,
                                            *verify_translator(t, f, gammas[1], bs[1], id).cert};
    for (int i = 0; i < 10; ++i) {
      const std::vector<Code> us{random_code(rng, t.q()), random_code(rng, t.q())};
      EXPECT_TRUE(shift_identity_holds(t, certs, us));
    }
    std::vector<TranslatorCert> wrong = certs;
    wrong[1].b = t.base().add(wrong[1].b, 1);
    EXPECT_FALSE(shift_identity_holds(t, wrong, std::vector<Code>{0, 1}));
  }
}

TEST(Translators, TraceFamilyVerifies) {
  const auto t = FieldTower::build(3, 2, 2);
  Code nonsquare = 0;
  for (Code a = 1; a < 9; ++a)
    if (!is_power(t.base(), a, 2)) nonsquare = a;
  ASSERT_NE(nonsquare, 0u);
  std::size_t zero_b = 0;
  for (Code g = 1; g < t.size(Level::top); ++g) {
    const auto inst = build_trace_family(t, {2, 4, 1, nonsquare, g});
    EXPECT_TRUE(inst.cert.verified);
    EXPECT_EQ(inst.cert.b, t.relative_trace(t.top().pow(g, 3)));
    EXPECT_TRUE(oracle_translator(t, inst.f, g, inst.cert.b, inst.A));
    zero_b += inst.cert.b == 0;
  }
  const auto f4 = FieldTower::build(2, 2, 2);
  try {
    build_trace_family(f4, {2, 4, 1, 2, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AlphaIsPower);
  }
  EXPECT_GT(zero_b, 0u);
}

}  // namespace
}  // namespace ltperm
