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
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ltperm/bent.hpp"
#include "ltperm/instances.hpp"
#include "support/oracles.hpp"

namespace ltperm {
namespace {

// Absolute trace as sum of x^(2^i), products by the schoolbook oracle.
std::vector<int> oracle_traces(const FieldTower& t) {
  const std::size_t s = t.size(Level::top);
  const std::uint32_t deg = t.k() * t.n();
  std::vector<int> out(s);
  for (Code x = 0; x < s; ++x) {
    std::uint64_t acc = 0, pw = x;
    for (std::uint32_t i = 0; i < deg; ++i) {
      acc ^= pw;
      pw = oracle::top_mul(t, pw, pw);
    }
    EXPECT_LE(acc, 1u);
    out[x] = static_cast<int>(acc);
  }
  return out;
}

std::vector<std::int64_t> oracle_walsh(const FieldTower& t, const BitTable& h) {
  const auto tr = oracle_traces(t);
  const std::size_t s = t.size(Level::top);
  std::vector<std::int64_t> w(s * s, 0);
  for (Code a = 0; a < s; ++a)
    for (Code b = 0; b < s; ++b) {
      std::int64_t acc = 0;
      for (Code x = 0; x < s; ++x)
        for (Code y = 0; y < s; ++y) {
          const int bit = h[x * s + y] ^ tr[oracle::top_mul(t, a, x)] ^ tr[oracle::top_mul(t, b, y)];
          acc += bit ? -1 : 1;
        }
      w[a * s + b] = acc;
    }
  return w;
}

BitTable inner_product(const FieldTower& t) {
  const std::size_t s = t.size(Level::top);
  BitTable h(s * s);
  for (Code x = 0; x < s; ++x)
    for (Code y = 0; y < s; ++y) h.set(x * s + y, t.absolute_trace(t.top().mul(x, y)) != 0);
  return h;
}

// F_8 with modulus t^3 + t + 1, where 1, t + 1 and t^2 + 1 all have trace 1.
FieldTower f8() { return FieldTower::build(2, 1, 3, std::nullopt, RawPoly{1, 1, 0, 1}); }

BentInputs f8_inputs(const FieldTower& t, const FieldFn& g) {
  const FieldFn f = FieldFn::tabulate(t, Level::top, Level::base, [&](Code x) { return t.relative_trace(x); });
  return {LinearMap::identity(t), f, {1, 3, 5}, 1, AdditivePerm::identity(t), g};
}

TEST(BitTable, HexPacking) {
  BitTable b(8);
  b.set(0, true);
  b.set(5, true);
  b.set(7, true);
  EXPECT_EQ(b.to_hex(), "1a");
  b.set(0, false);
  EXPECT_EQ(b.to_hex(), "0a");
  EXPECT_EQ(BitTable(6).to_hex(), "00");
}

TEST(Walsh, BasicSpectra) {
  EXPECT_THROW(walsh_hadamard(BitTable(6)), Error);
  const auto w = walsh_hadamard(BitTable(16));
  EXPECT_EQ(w[0], 16);
  for (std::size_t i = 1; i < 16; ++i) EXPECT_EQ(w[i], 0);
  const auto t = FieldTower::build(2, 1, 3);
  const auto zero = trace_walsh(t, BitTable(64));
  EXPECT_EQ(zero[0], 64);
  EXPECT_FALSE(spectrum_verdict(zero, nullptr).bent);
  EXPECT_TRUE(spectrum_verdict(zero, nullptr).parseval);
}

TEST(Walsh, InnerProductIsBentAndSelfDual) {
  for (std::uint32_t n : {1u, 2u, 3u, 4u, 5u}) {
    const auto t = FieldTower::build(2, 1, n);
    const BitTable h = inner_product(t);
    const auto w = trace_walsh(t, h);
    for (auto v : w) ASSERT_EQ(std::llabs(v), std::int64_t{1} << n);
    const auto v = spectrum_verdict(w, &h);
    EXPECT_TRUE(v.bent);
    EXPECT_TRUE(v.dual_matches);
    EXPECT_TRUE(v.parseval);
  }
}

TEST(Walsh, FastTransformMatchesDefinition) {
  Rng rng(12);
  for (auto [k, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 2}}) {
    const auto t = FieldTower::build(2, k, n);
    const std::size_t s = t.size(Level::top);
    BitTable h(s * s);
    for (std::size_t i = 0; i < s * s; ++i) h.set(i, rng() & 1);
    const auto fast = trace_walsh(t, h);
    EXPECT_EQ(fast, trace_walsh_naive(t, h));
    if (k == 1) {
      EXPECT_EQ(fast, oracle_walsh(t, h));
    }
  }
  // 12 input bits.
  const auto t = FieldTower::build(2, 2, 3);
  BitTable h(64 * 64);
  for (std::size_t i = 0; i < h.size(); ++i) h.set(i, rng() & 1);
  EXPECT_EQ(trace_walsh(t, h), trace_walsh_naive(t, h));
}

TEST(Bent, DegenerateInstanceIsInnerProduct) {
  const auto t = f8();
  auto inst = build_H(t, f8_inputs(t, FieldFn::identity(t, Level::base)));
  for (Code x = 0; x < 8; ++x) EXPECT_EQ(inst.rho(x), 0u);
  EXPECT_EQ(inst.H, inner_product(t));
  compute_spectrum(t, inst);
  const auto v = is_bent(inst);
  EXPECT_TRUE(v.bent && v.dual_matches && v.parseval);
}

TEST(Bent, ShiftedInstanceIsBentWithMatchingDual) {
  const auto t = f8();
  auto inst = build_H(t, f8_inputs(t, FieldFn::make(t, Level::base, Level::base, {1, 0})));
  for (Code x = 0; x < 8; ++x) EXPECT_EQ(inst.rho(x), 1u);
  EXPECT_THROW(is_bent(inst), Error);
  compute_spectrum(t, inst);
  EXPECT_EQ(*inst.walsh, oracle_walsh(t, inst.H));
  for (auto w : *inst.walsh) EXPECT_EQ(std::llabs(w), 8);
  const auto v = is_bent(inst);
  EXPECT_TRUE(v.bent);
  EXPECT_TRUE(v.dual_matches);
  EXPECT_TRUE(v.parseval);
  EXPECT_TRUE(inst.psi_permutation);
  for (bool b : inst.phi_permutations) EXPECT_TRUE(b);
  EXPECT_TRUE(inst.psi_inverse_sums);
  std::ostringstream csv;
  write_spectrum_csv(csv, t, *inst.walsh);
  std::size_t lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  EXPECT_EQ(lines, 65u);
  EXPECT_EQ(csv.str().substr(0, 6), "a,b,W\n");
}

TEST(Bent, HypothesisViolations) {
  const auto t = f8();
  auto in = f8_inputs(t, FieldFn::identity(t, Level::base));
  auto expect_violation = [&](BentInputs bad, const std::string& needle) {
    try {
      build_H(t, std::move(bad));
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
      EXPECT_NE(e.detail().find(needle), std::string::npos) << e.detail();
    }
  };
  auto dup = in;
  dup.gammas = {1, 1, 5};
  expect_violation(dup, "distinct");
  auto notr = in;
  notr.gammas = {1, 3, 2};
  expect_violation(notr, "gamma_3");
  auto nog = in;
  nog.g = FieldFn::make(t, Level::base, Level::base, {0, 0});
  expect_violation(nog, "g is not a permutation");
  auto sum = in;
  sum.gammas = {1, 2, 3};
  expect_violation(sum, "must be nonzero");
  auto zb = in;
  zb.b = 0;
  expect_violation(zb, "b must be nonzero");
}

TEST(Bent, EveryTripleOnF8IsBent) {
  const auto t = FieldTower::build(2, 1, 3);
  const auto id = AdditivePerm::identity(t);
  Rng rng(32);
  std::size_t instances = 0;
  for (Code c = 1; c < 8; ++c)
    for (Code e = 0; e < 2; ++e) {
      const FieldFn f = FieldFn::tabulate(t, Level::top, Level::base,
                                          [&](Code x) { return t.relative_trace(t.top().mul(c, x)) ^ e; });
      const auto triples = bent_triples(t, f, id);
      EXPECT_EQ(triples.size(), 4u);
      for (const auto& tr : triples)
        for (Code g0 = 0; g0 < 2; ++g0) {
          const FieldFn g = FieldFn::make(t, Level::base, Level::base, {g0, Code{1} ^ g0});
          auto inst = build_H(t, {random_linear_perm(t, rng), f, tr.gammas, tr.b, id, g});
          compute_spectrum(t, inst);
          const auto v = is_bent(inst);
          EXPECT_TRUE(v.bent && v.dual_matches && v.parseval);
          EXPECT_TRUE(inst.psi_permutation && inst.psi_inverse_sums);
          ++instances;
        }
    }
  EXPECT_EQ(instances, 7u * 2 * 4 * 2);
}

TEST(Bent, F4HasNoValidTriple) {
  const auto t = FieldTower::build(2, 1, 2);
  const auto id = AdditivePerm::identity(t);
  for (Code c = 1; c < 4; ++c) {
    const FieldFn f = FieldFn::tabulate(t, Level::top, Level::base, [&](Code x) { return t.relative_trace(t.top().mul(c, x)); });
    EXPECT_TRUE(bent_triples(t, f, id).empty());
  }
  const auto w = trace_walsh(t, inner_product(t));
  EXPECT_TRUE(spectrum_verdict(w, nullptr).bent);
}

}  // namespace
}  // namespace ltperm
