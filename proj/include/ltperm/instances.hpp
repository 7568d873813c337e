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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ltperm/additive_perm.hpp"
#include "ltperm/constructions.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/linear_map.hpp"
#include "ltperm/matrix.hpp"

// Random generators for construction inputs. Every family is built so that its
// translator relations hold by design; callers still verify them exhaustively.

namespace ltperm {

using Rng = std::mt19937_64;

inline Code random_code(Rng& rng, std::size_t size) {
  return static_cast<Code>(std::uniform_int_distribution<std::uint64_t>(0, size - 1)(rng));
}

inline Code random_nonzero(Rng& rng, std::size_t size) {
  return static_cast<Code>(std::uniform_int_distribution<std::uint64_t>(1, size - 1)(rng));
}

/// x -> Tr_{q^n/q}(c x).
inline FieldFn trace_functional(const FieldTower& tower, Code c) {
  const Field& top = tower.top();
  const auto tr = tower.relative_trace_table();
  return FieldFn::tabulate(tower, Level::top, Level::base, [&](Code x) { return tr[top.mul(c, x)]; });
}

/// Some c with Tr(c gamma_i) = targets[i] for every i, if one exists.
inline std::optional<Code> functional_with_values(const FieldTower& tower, const std::vector<Code>& gammas,
                                                  const std::vector<Code>& targets) {
  const Field& top = tower.top();
  const auto tr = tower.relative_trace_table();
  for (Code c = 0; c < top.size(); ++c) {
    bool ok = true;
    for (std::size_t i = 0; i < gammas.size() && ok; ++i) ok = tr[top.mul(c, gammas[i])] == targets[i];
    if (ok) return c;
  }
  return std::nullopt;
}

inline FieldFn random_base_map(const FieldTower& tower, Rng& rng) {
  return FieldFn::tabulate(tower, Level::base, Level::base, [&](Code) { return random_code(rng, tower.q()); });
}

inline FieldFn random_base_perm(const FieldTower& tower, Rng& rng) {
  std::vector<Code> t(tower.q());
  std::iota(t.begin(), t.end(), Code{0});
  std::shuffle(t.begin(), t.end(), rng);
  return FieldFn(Level::base, Level::base, std::move(t));
}

inline AdditivePerm random_additive_perm(const FieldTower& tower, Rng& rng) {
  while (true) {
    std::vector<Code> c(tower.k());
    for (auto& x : c) x = random_code(rng, tower.q());
    try {
      return AdditivePerm::make(tower, std::move(c));
    } catch (const Error&) {
    }
  }
}

/// m elements of F_{q^n} linearly independent over F_q (m <= n).
inline std::vector<Code> random_independent(const FieldTower& tower, std::size_t m, Rng& rng) {
  std::vector<Code> out;
  while (out.size() < m) {
    out.push_back(random_nonzero(rng, tower.size(Level::top)));
    if (rank_over_base(tower, out) != out.size()) out.pop_back();
  }
  return out;
}

inline Matrix random_invertible(const Field& f, std::size_t n, Rng& rng) {
  while (true) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = random_code(rng, f.size());
    if (inverse(f, m)) return m;
  }
}

inline LinearMap random_linear_perm(const FieldTower& tower, Rng& rng) {
  return LinearMap::from_matrix(tower, random_invertible(tower.base(), tower.n(), rng));
}

/// f(x) = b A(Tr(c x)) + psi(Tr(d x)) with Tr(c gamma_i) = [i == j] and Tr(d gamma_i) = 0,
/// so gamma_j is a (b, A)-translator of f and every other gamma_i a (0, A)-translator.
/// `nonlinear` adds the psi term (a random map of F_q) when a suitable d != 0 exists.
inline FieldFn translator_function(const FieldTower& tower, const std::vector<Code>& gammas, std::size_t j, Code b,
                                   const AdditivePerm& a, bool nonlinear, Rng& rng) {
  const Field& fq = tower.base();
  std::vector<Code> targets(gammas.size(), 0);
  if (j < gammas.size()) targets[j] = 1;
  const Code c = *functional_with_values(tower, gammas, targets);
  const FieldFn tc = trace_functional(tower, c);
  std::optional<FieldFn> extra;
  if (nonlinear && gammas.size() < tower.n()) {
    std::vector<Code> candidates;
    const auto tr = tower.relative_trace_table();
    for (Code d = 1; d < tower.size(Level::top); ++d) {
      bool ok = true;
      for (Code g : gammas) ok = ok && tr[tower.top().mul(d, g)] == 0;
      if (ok) candidates.push_back(d);
    }
    if (!candidates.empty()) {
      const Code d = candidates[random_code(rng, candidates.size())];
      const FieldFn psi = random_base_map(tower, rng);
      const FieldFn td = trace_functional(tower, d);
      extra = compose(psi, td);
    }
  }
  return FieldFn::tabulate(tower, Level::top, Level::base, [&](Code x) {
    const Code v = fq.mul(b, a.apply(tc(x)));
    return extra ? fq.add(v, (*extra)(x)) : v;
  });
}

struct SystemOptions {
  std::size_t m = 1;
  bool shared_perm = false;
  bool zero_b = false;
  bool nonzero_b = false;
  bool permutation_h = false;
  bool nonlinear = true;
};

/// A diagonal system over the given gammas.
inline TranslatorSystem random_diagonal_system(const FieldTower& tower, std::vector<Code> gammas,
                                               const SystemOptions& opt, Rng& rng) {
  std::vector<FieldFn> fs, hs;
  std::vector<AdditivePerm> perms;
  std::vector<Code> diag;
  const AdditivePerm shared = random_additive_perm(tower, rng);
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    perms.push_back(opt.shared_perm ? shared : random_additive_perm(tower, rng));
    const Code b = opt.zero_b ? 0 : opt.nonzero_b ? random_nonzero(rng, tower.q()) : random_code(rng, tower.q());
    diag.push_back(b);
    fs.push_back(translator_function(tower, gammas, j, b, perms.back(), opt.nonlinear, rng));
    hs.push_back(opt.permutation_h ? random_base_perm(tower, rng) : random_base_map(tower, rng));
  }
  return TranslatorSystem::diagonal(std::move(gammas), std::move(fs), std::move(hs), std::move(perms), diag);
}

struct KernelInstance {
  LinearMap L;
  std::vector<Code> kernel;
};

/// L = P diag(0_m, M) P^{-1} over F_q: Ker L and Im L are complementary, and the first
/// m columns of P span the kernel.
inline KernelInstance random_kernel_map(const FieldTower& tower, std::size_t m, Rng& rng) {
  const Field& fq = tower.base();
  const std::size_t n = tower.n();
  const Matrix p = random_invertible(fq, n, rng);
  const Matrix p_inv = *inverse(fq, p);
  Matrix d(n, n);
  if (m < n) {
    const Matrix inner = random_invertible(fq, n - m, rng);
    for (std::size_t r = 0; r < n - m; ++r)
      for (std::size_t c = 0; c < n - m; ++c) d(m + r, m + c) = inner(r, c);
  }
  KernelInstance out{LinearMap::from_matrix(tower, mul(fq, mul(fq, p, d), p_inv)), {}};
  for (std::size_t j = 0; j < m; ++j) out.kernel.push_back(from_coords(tower, p.column(j)));
  return out;
}

/// Full-matrix system with A = x^{p^t}: f_j = Tr(c_j x)^{p^t}, so gamma_i is a
/// (Tr(c_j gamma_i)^{p^t}, A)-translator of f_j. `target` fixes Tr(c_j gamma_i).
inline TranslatorSystem frobenius_system(const FieldTower& tower, const std::vector<Code>& gammas,
                                         const Matrix& target, std::uint32_t t, std::vector<FieldFn> hs) {
  const Field& fq = tower.base();
  const std::size_t m = gammas.size();
  const AdditivePerm a = AdditivePerm::frobenius(tower, t);
  std::vector<FieldFn> fs;
  Matrix b(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Code> vals(m);
    for (std::size_t i = 0; i < m; ++i) vals[i] = target(i, j);
    const Code c = *functional_with_values(tower, gammas, vals);
    fs.push_back(compose(a.as_fn(), trace_functional(tower, c)));
    for (std::size_t i = 0; i < m; ++i) b(i, j) = fq.frob(target(i, j), t);
  }
  return {gammas, std::move(fs), std::move(hs), std::vector<AdditivePerm>(m, a), std::move(b)};
}

}  // namespace ltperm
