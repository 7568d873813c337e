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

#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ltperm/additive_perm.hpp"
#include "ltperm/constructions.hpp"
#include "ltperm/error.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/linear_map.hpp"
#include "ltperm/translators.hpp"

namespace ltperm {

/// Bit-packed boolean table.
class BitTable {
 public:
  BitTable() = default;
  explicit BitTable(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool operator[](std::size_t i) const noexcept { return get(i); }
  void set(std::size_t i, bool v) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (v) {
      words_[i / 64] |= bit;
    } else {
      words_[i / 64] &= ~bit;
    }
  }

  /// One hex digit per 4 entries in index order; entry i is bit (i mod 4) of digit i/4.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve((size_ + 3) / 4);
    for (std::size_t i = 0; i < size_; i += 4) {
      unsigned nibble = 0;
      for (std::size_t j = 0; j < 4 && i + j < size_; ++j) nibble |= static_cast<unsigned>(get(i + j)) << j;
      out.push_back(kDigits[nibble]);
    }
    return out;
  }

  friend bool operator==(const BitTable& a, const BitTable& b) { return a.size_ == b.size_ && a.words_ == b.words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Walsh-Hadamard transform W(u) = sum_x (-1)^{T(x) + <u, x>} with <,> the bitwise dot
/// product of indices.
inline std::vector<std::int64_t> walsh_hadamard(const BitTable& table) {
  const std::size_t n = table.size();
  if (n == 0 || !std::has_single_bit(n)) {
    fail(ErrorKind::BadDomainSize, "domain size " + std::to_string(n) + " is not a power of 2");
  }
  std::vector<std::int64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = table[i] ? -1 : 1;
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const std::int64_t a = w[j];
        const std::int64_t b = w[j + len];
        w[j] = a + b;
        w[j + len] = a - b;
      }
    }
  }
  return w;
}

namespace detail {

inline void require_pair_domain(const FieldTower& tower, const BitTable& h) {
  const std::size_t s = tower.size(Level::top);
  if (tower.p() != 2) fail(ErrorKind::HypothesisViolated, "spectra need characteristic 2");
  if (h.size() != s * s) {
    fail(ErrorKind::BadDomainSize, "table has " + std::to_string(h.size()) + " entries, expected " +
                                       std::to_string(s * s));
  }
}

}  // namespace detail

/// W(a, b) = sum_{x,y} (-1)^{H(x,y) + Tr(ax) + Tr(by)} summed directly; index a * 2^n + b,
/// matching the table's x * 2^n + y layout.
inline std::vector<std::int64_t> trace_walsh_naive(const FieldTower& tower, const BitTable& h) {
  detail::require_pair_domain(tower, h);
  const Field& top = tower.top();
  const std::size_t s = top.size();
  std::vector<std::int64_t> w(s * s, 0);
  for (Code a = 0; a < s; ++a) {
    for (Code b = 0; b < s; ++b) {
      std::int64_t acc = 0;
      for (Code x = 0; x < s; ++x) {
        const Code tax = tower.absolute_trace(top.mul(a, x));
        for (Code y = 0; y < s; ++y) {
          const Code bit = h[x * s + y] ^ tax ^ tower.absolute_trace(top.mul(b, y));
          acc += bit ? -1 : 1;
        }
      }
      w[a * s + b] = acc;
    }
  }
  return w;
}

/// Same spectrum via the butterfly. Tr(a x) = <w(a), x> with w(a)_i = Tr(a * 2^i) on
/// codes, so W(a, b) is the bitwise transform read at (w(a), w(b)).
inline std::vector<std::int64_t> trace_walsh(const FieldTower& tower, const BitTable& h) {
  detail::require_pair_domain(tower, h);
  const Field& top = tower.top();
  const std::size_t s = top.size();
  const unsigned bits = static_cast<unsigned>(std::countr_zero(s));
  const auto raw = walsh_hadamard(h);
  std::vector<std::size_t> dual(s, 0);
  for (Code a = 0; a < s; ++a) {
    for (unsigned i = 0; i < bits; ++i) dual[a] |= std::size_t{tower.absolute_trace(top.mul(a, Code{1} << i))} << i;
  }
  std::vector<std::int64_t> w(s * s);
  for (Code a = 0; a < s; ++a)
    for (Code b = 0; b < s; ++b) w[a * s + b] = raw[dual[a] * s + dual[b]];
  return w;
}

struct BentInputs {
  LinearMap L;
  FieldFn f;
  std::array<Code, 3> gammas{};
  Code b = 0;
  AdditivePerm A;
  FieldFn g;
};

struct BentInstance {
  BentInputs inputs;
  FieldFn rho;
  FieldFn rho_tilde;
  /// Indexed by x * 2^n + y.
  BitTable H;
  BitTable H_dual;
  /// phi_i(x) = L(x) + L(gamma_i) rho(x) and psi = phi_1 + phi_2 + phi_3, each checked.
  std::array<bool, 3> phi_permutations{};
  bool psi_permutation = false;
  /// psi^{-1} = phi_1^{-1} + phi_2^{-1} + phi_3^{-1} as tables.
  bool psi_inverse_sums = false;
  std::optional<std::vector<std::int64_t>> walsh;
};

namespace detail {

inline void require_bent_hypotheses(const FieldTower& tower, const BentInputs& in) {
  auto violated = [](const std::string& what) { fail(ErrorKind::HypothesisViolated, what); };
  if (tower.p() != 2) violated("characteristic must be 2");
  const Field& top = tower.top();
  const auto& gm = in.gammas;
  for (Code g : gm) {
    if (g >= top.size()) violated("gamma outside F_{2^n}");
    if (g == 0) violated("gammas must be nonzero");
  }
  if (gm[0] == gm[1] || gm[0] == gm[2] || gm[1] == gm[2]) violated("gammas must be pairwise distinct");
  if (top.add(top.add(gm[0], gm[1]), gm[2]) == 0) violated("gamma_1 + gamma_2 + gamma_3 must be nonzero");
  if (in.b >= tower.q()) violated("b outside F_{2^m}");
  if (in.b == 0) violated("b must be nonzero");
  if (in.f.domain() != Level::top || in.f.codomain() != Level::base || in.f.size() != top.size()) {
    violated("f must map F_{2^n} to F_{2^m}");
  }
  if (in.g.domain() != Level::base || in.g.codomain() != Level::base || in.g.size() != tower.q()) {
    violated("g must map F_{2^m} to F_{2^m}");
  }
  if (!is_permutation(in.g)) violated("g is not a permutation");
  if (!analyze(tower, in.L).is_permutation) violated("L is not a permutation");
  for (std::size_t i = 0; i < 3; ++i) {
    if (auto bad = find_translator_violation(tower, in.f, gm[i], in.b, in.A)) {
      violated("gamma_" + std::to_string(i + 1) + " is not a (b, A)-translator of f (x=" + std::to_string(bad->x) +
               ", u=" + std::to_string(bad->u) + ")");
    }
  }
}

}  // namespace detail

/// H(x,y) = Tr(x L(y)) + sum_{i<j} Tr(L(g_i) x rho(y)) Tr(L(g_j) x rho(y)), and the dual
/// H~(x,y) = Tr(y L^{-1}(x)) + sum_{i<j} Tr(g_i y rho~(L^{-1}x)) Tr(g_j y rho~(L^{-1}x)).
inline BentInstance build_H(const FieldTower& tower, BentInputs in) {
  detail::require_bent_hypotheses(tower, in);
  const Field& top = tower.top();
  const std::size_t s = top.size();
  const TranslatorCert cert{in.gammas[0], in.b, in.A, in.f, true};
  FieldFn rho = rho_map(tower, cert, in.g);
  FieldFn rho_t = rho_tilde_map(tower, cert, in.g);
  BentInstance out{std::move(in), std::move(rho), std::move(rho_t), BitTable(s * s), BitTable(s * s), {}, false,
                   false, std::nullopt};
  const BentInputs& bi = out.inputs;
  const LinearMap l_inv = bi.L.inverse(tower);
  std::array<Code, 3> lg{};
  for (std::size_t i = 0; i < 3; ++i) lg[i] = bi.L(bi.gammas[i]);
  auto tr = [&](Code a) { return tower.absolute_trace(a); };

  for (Code x = 0; x < s; ++x) {
    const Code xi = l_inv(x);
    const Code rt = out.rho_tilde(xi);
    for (Code y = 0; y < s; ++y) {
      const Code xr = top.mul(x, out.rho(y));
      const Code t1 = tr(top.mul(lg[0], xr)), t2 = tr(top.mul(lg[1], xr)), t3 = tr(top.mul(lg[2], xr));
      out.H.set(x * s + y, (tr(top.mul(x, bi.L(y))) ^ (t1 & t2) ^ (t1 & t3) ^ (t2 & t3)) != 0);
      const Code yr = top.mul(y, rt);
      const Code d1 = tr(top.mul(bi.gammas[0], yr)), d2 = tr(top.mul(bi.gammas[1], yr)),
                 d3 = tr(top.mul(bi.gammas[2], yr));
      out.H_dual.set(x * s + y, (tr(top.mul(y, xi)) ^ (d1 & d2) ^ (d1 & d3) ^ (d2 & d3)) != 0);
    }
  }

  std::array<FieldFn, 3> phis;
  for (std::size_t i = 0; i < 3; ++i) {
    phis[i] = FieldFn::tabulate(tower, Level::top, Level::top,
                                [&](Code x) { return top.add(bi.L(x), top.mul(lg[i], out.rho(x))); });
    out.phi_permutations[i] = is_permutation(phis[i]);
  }
  const FieldFn psi = FieldFn::tabulate(tower, Level::top, Level::top,
                                        [&](Code x) { return top.add(top.add(phis[0](x), phis[1](x)), phis[2](x)); });
  out.psi_permutation = is_permutation(psi);
  if (out.psi_permutation && out.phi_permutations[0] && out.phi_permutations[1] && out.phi_permutations[2]) {
    const FieldFn pi = comp_inverse(psi);
    std::array<FieldFn, 3> inv{comp_inverse(phis[0]), comp_inverse(phis[1]), comp_inverse(phis[2])};
    out.psi_inverse_sums = true;
    for (Code x = 0; x < s && out.psi_inverse_sums; ++x) {
      out.psi_inverse_sums = pi(x) == top.add(top.add(inv[0](x), inv[1](x)), inv[2](x));
    }
  }
  return out;
}

struct BentTriple {
  std::array<Code, 3> gammas{};
  Code b = 0;
};

/// Every ordered-by-code triple of distinct (b, A)-translators of f sharing one b != 0
/// with gamma_1 + gamma_2 + gamma_3 != 0.
inline std::vector<BentTriple> bent_triples(const FieldTower& tower, const FieldFn& f, const AdditivePerm& a) {
  const Field& top = tower.top();
  const auto found = search_translators(tower, f, a);
  std::vector<BentTriple> out;
  const auto& ps = found.pairs;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      for (std::size_t k = j + 1; k < ps.size(); ++k) {
        if (ps[i].b == 0 || ps[i].b != ps[j].b || ps[i].b != ps[k].b) continue;
        if (top.add(top.add(ps[i].gamma, ps[j].gamma), ps[k].gamma) == 0) continue;
        out.push_back({{ps[i].gamma, ps[j].gamma, ps[k].gamma}, ps[i].b});
      }
  return out;
}

inline void compute_spectrum(const FieldTower& tower, BentInstance& inst) { inst.walsh = trace_walsh(tower, inst.H); }

struct BentVerdict {
  bool bent = false;
  bool dual_matches = false;
  bool parseval = false;
};

/// Flatness, Parseval and sign agreement of a spectrum against a candidate dual,
/// using W(a,b) = 2^{N/2} (-1)^{dual(a,b)}.
inline BentVerdict spectrum_verdict(const std::vector<std::int64_t>& w, const BitTable* dual) {
  BentVerdict v;
  const std::size_t n = w.size();
  const std::int64_t flat = std::int64_t{1} << (std::countr_zero(n) / 2);
  v.bent = std::countr_zero(n) % 2 == 0;
  std::int64_t sum_sq = 0;
  for (std::int64_t x : w) {
    sum_sq += x * x;
    v.bent = v.bent && std::llabs(x) == flat;
  }
  v.parseval = sum_sq == static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
  if (dual && v.bent && dual->size() == n) {
    v.dual_matches = true;
    for (std::size_t i = 0; i < n && v.dual_matches; ++i) v.dual_matches = (w[i] < 0) == dual->get(i);
  }
  return v;
}

inline BentVerdict is_bent(const BentInstance& inst) {
  if (!inst.walsh) fail(ErrorKind::SpectrumMissing, "compute the spectrum first");
  return spectrum_verdict(*inst.walsh, &inst.H_dual);
}

/// Spectrum as CSV rows `a,b,W` in (a, b) code order, with header.
inline void write_spectrum_csv(std::ostream& os, const FieldTower& tower, const std::vector<std::int64_t>& w) {
  const std::size_t s = tower.size(Level::top);
  os << "a,b,W\n";
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) os << a << ',' << b << ',' << w[a * s + b] << '\n';
}

}  // namespace ltperm
