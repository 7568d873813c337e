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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ltperm/additive_perm.hpp"
#include "ltperm/error.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"

namespace ltperm {

/// Witness that gamma is a (b, A)-linear translator of f:
/// f(x + u*gamma) - f(x) = b*A(u) for every x in F_{q^n} and u in F_q.
/// `verified` is set only by verify_translator.
struct TranslatorCert {
  Code gamma;
  Code b;
  AdditivePerm A;
  FieldFn f;
  bool verified = false;
};

/// A pair (x, u) at which the translator identity fails.
struct Refutation {
  Code x = 0;
  Code u = 0;
  friend bool operator==(const Refutation&, const Refutation&) = default;
};

struct TranslatorCheck {
  std::optional<TranslatorCert> cert;
  std::optional<Refutation> refutation;
  bool ok() const noexcept { return cert.has_value(); }
};

namespace detail {

inline void require_top_to_base(const FieldTower& tower, const FieldFn& f) {
  if (f.domain() != Level::top || f.codomain() != Level::base || f.size() != tower.size(Level::top)) {
    fail(ErrorKind::LevelMismatch, "translator functions map the top level to the base level");
  }
}

/// Exhaustive scan; returns the first failing (x, u) with x major, u minor.
inline std::optional<Refutation> find_translator_violation(const FieldTower& tower, const FieldFn& f, Code gamma,
                                                           Code b, const AdditivePerm& a) {
  const Field& top = tower.top();
  const Field& base = tower.base();
  const Code q = tower.q();
  std::vector<Code> shift(q), target(q);
  for (Code u = 0; u < q; ++u) {
    shift[u] = top.mul(u, gamma);
    target[u] = base.mul(b, a.apply(u));
  }
  const auto table = f.table();
  for (Code x = 0; x < table.size(); ++x) {
    const Code fx = table[x];
    for (Code u = 0; u < q; ++u) {
      if (base.sub(table[top.add(x, shift[u])], fx) != target[u]) return Refutation{x, u};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks all q^n * q pairs (x, u).
inline TranslatorCheck verify_translator(const FieldTower& tower, const FieldFn& f, Code gamma, Code b,
                                         const AdditivePerm& a) {
  detail::require_top_to_base(tower, f);
  tower.element(Level::top, gamma);
  tower.element(Level::base, b);
  if (gamma == 0) fail(ErrorKind::ZeroGamma, "a linear translator must be nonzero");
  TranslatorCheck out;
  if (auto bad = detail::find_translator_violation(tower, f, gamma, b, a)) {
    out.refutation = *bad;
  } else {
    out.cert = TranslatorCert{gamma, b, a, f, true};
  }
  return out;
}

/// Re-runs the exhaustive check on an existing certificate.
inline bool reverify(const FieldTower& tower, const TranslatorCert& cert) {
  if (cert.gamma == 0) return false;
  detail::require_top_to_base(tower, cert.f);
  return !detail::find_translator_violation(tower, cert.f, cert.gamma, cert.b, cert.A).has_value();
}

struct TranslatorPair {
  Code gamma = 0;
  Code b = 0;
  friend bool operator==(const TranslatorPair&, const TranslatorPair&) = default;
};

struct TranslatorSearch {
  std::vector<TranslatorPair> pairs;  // sorted by gamma
  bool closed_under_addition = true;
  bool closed_under_scaling = true;
  bool is_subspace() const noexcept { return closed_under_addition && closed_under_scaling; }
};

/// Every (gamma, b) with gamma a (b, A)-linear translator of f. For each nonzero gamma
/// the only possible b is (f(gamma) - f(0)) / A(1); that candidate is then verified.
/// Also reports whether {gamma} ∪ {0} is closed under addition and F_p-scaling.
inline TranslatorSearch search_translators(const FieldTower& tower, const FieldFn& f, const AdditivePerm& a) {
  detail::require_top_to_base(tower, f);
  const Field& top = tower.top();
  const Field& base = tower.base();
  const Code a1_inv = base.inv(a.apply(1));
  TranslatorSearch out;
  std::vector<bool> member(tower.size(Level::top), false);
  member[0] = true;
  for (Code gamma = 1; gamma < tower.size(Level::top); ++gamma) {
    const Code b = base.mul(base.sub(f(gamma), f(0)), a1_inv);
    if (!detail::find_translator_violation(tower, f, gamma, b, a)) {
      out.pairs.push_back({gamma, b});
      member[gamma] = true;
    }
  }
  for (std::size_t i = 0; i < out.pairs.size() && out.closed_under_addition; ++i) {
    for (std::size_t j = i; j < out.pairs.size(); ++j) {
      if (!member[top.add(out.pairs[i].gamma, out.pairs[j].gamma)]) {
        out.closed_under_addition = false;
        break;
      }
    }
  }
  for (const auto& pr : out.pairs) {
    for (Code c = 2; c < tower.p(); ++c) {
      if (!member[top.mul(c, pr.gamma)]) out.closed_under_scaling = false;
    }
  }
  return out;
}

/// True iff every base element is hit by f.
inline bool is_surjective(const FieldTower& tower, const FieldFn& f) {
  std::vector<bool> hit(tower.size(f.codomain()), false);
  std::size_t count = 0;
  for (Code y : f.table()) {
    if (!hit[y]) {
      hit[y] = true;
      ++count;
    }
  }
  return count == hit.size();
}

namespace detail {

inline void require_compatible(const TranslatorCert& a, const TranslatorCert& b) {
  if (!a.verified || !b.verified) fail(ErrorKind::IncompatibleCerts, "certificates must be verified");
  if (!(a.f == b.f)) fail(ErrorKind::IncompatibleCerts, "certificates refer to different functions");
  if (!(a.A == b.A)) fail(ErrorKind::IncompatibleCerts, "certificates use different additive permutations");
}

inline TranslatorCert certify_or_throw(const FieldTower& tower, const FieldFn& f, Code gamma, Code b,
                                       const AdditivePerm& a, const char* what) {
  auto check = verify_translator(tower, f, gamma, b, a);
  if (!check.ok()) {
    fail(ErrorKind::UnverifiedCert, std::string(what) + " failed at x=" + std::to_string(check.refutation->x) +
                                        ", u=" + std::to_string(check.refutation->u));
  }
  return std::move(*check.cert);
}

}  // namespace detail

/// f(x + sum u_i gamma_i) - f(x) == sum b_i A(u_i) for every x.
inline bool shift_identity_holds(const FieldTower& tower, std::span<const TranslatorCert> certs,
                                 std::span<const Code> us) {
  if (certs.size() != us.size()) fail(ErrorKind::IncompatibleCerts, "one coefficient per certificate");
  if (certs.empty()) return true;
  for (const auto& c : certs) detail::require_compatible(certs.front(), c);
  const Field& top = tower.top();
  const Field& base = tower.base();
  Code shift = 0;
  Code rhs = 0;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    tower.element(Level::base, us[i]);
    shift = top.add(shift, top.mul(us[i], certs[i].gamma));
    rhs = base.add(rhs, base.mul(certs[i].b, certs[i].A.apply(us[i])));
  }
  const FieldFn& f = certs.front().f;
  for (Code x = 0; x < f.size(); ++x) {
    if (base.sub(f(top.add(x, shift)), f(x)) != rhs) return false;
  }
  return true;
}

/// (b1 + b2, A)-certificate for gamma1 + gamma2.
inline TranslatorCert sum_certs(const FieldTower& tower, const TranslatorCert& a, const TranslatorCert& b) {
  detail::require_compatible(a, b);
  const Code gamma = tower.top().add(a.gamma, b.gamma);
  if (gamma == 0) fail(ErrorKind::IncompatibleCerts, "gamma1 + gamma2 = 0");
  return detail::certify_or_throw(tower, a.f, gamma, tower.base().add(a.b, b.b), a.A, "sum certificate");
}

/// (c*b, A)-certificate for c*gamma, c in F_p*.
inline TranslatorCert scale_cert(const FieldTower& tower, const TranslatorCert& a, Code c) {
  if (!a.verified) fail(ErrorKind::IncompatibleCerts, "certificate must be verified");
  if (c == 0 || c >= tower.p()) fail(ErrorKind::IncompatibleCerts, "scalar must lie in F_p*");
  return detail::certify_or_throw(tower, a.f, tower.top().mul(c, a.gamma), tower.base().mul(c, a.b), a.A,
                                  "scaled certificate");
}

// Explicit translator family ---------------------------------------------------

/// f(x) = Tr_m^n(x^{p^s} - alpha gamma^{p^s - 1} x) from F_{p^n} to F_{p^m}, modelled on
/// the tower with q = p^m (k = m) and top degree n/m.
struct TraceFamilyParams {
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::uint32_t s = 0;
  Code alpha = 0;  // base code
  Code gamma = 0;  // top code
};

struct TraceFamilyInstance {
  FieldFn f;
  AdditivePerm A;
  TranslatorCert cert;
};

/// True iff alpha = beta^e for some beta in the field (exhaustive).
inline bool is_power(const Field& f, Code alpha, std::uint64_t e) {
  for (Code beta = 0; beta < f.size(); ++beta) {
    if (f.pow(beta, e) == alpha) return true;
  }
  return false;
}

inline TraceFamilyInstance build_trace_family(const FieldTower& tower, const TraceFamilyParams& params) {
  if (params.m != tower.k() || params.n != tower.k() * tower.n()) {
    fail(ErrorKind::DegreeMismatch, "tower must have k = m and k*n = n (got m=" + std::to_string(params.m) +
                                        ", n=" + std::to_string(params.n) + " against " + tower.describe() + ")");
  }
  if (params.s < 1 || params.s + 1 > params.m) fail(ErrorKind::BadS, "need 1 <= s <= m-1");
  tower.element(Level::base, params.alpha);
  tower.element(Level::top, params.gamma);
  if (params.gamma == 0) fail(ErrorKind::ZeroGamma, "gamma must be nonzero");
  const Field& top = tower.top();
  const Field& base = tower.base();
  std::uint64_t ps = 1;
  for (std::uint32_t i = 0; i < params.s; ++i) ps *= tower.p();
  if (params.alpha == 0 || is_power(base, params.alpha, ps - 1)) {
    fail(ErrorKind::AlphaIsPower, "alpha=" + std::to_string(params.alpha) + " is a (p^s-1)-th power");
  }
  const Code c = top.mul(params.alpha, top.pow(params.gamma, ps - 1));
  FieldFn f = FieldFn::tabulate(tower, Level::top, Level::base, [&](Code x) {
    return tower.relative_trace(top.sub(top.frob(x, params.s), top.mul(c, x)));
  });
  std::vector<Code> coeffs(params.s + 1, 0);
  coeffs[0] = base.neg(params.alpha);
  coeffs[params.s] = 1;
  AdditivePerm a = AdditivePerm::make(tower, std::move(coeffs));
  const Code b = tower.relative_trace(top.frob(params.gamma, params.s));
  TranslatorCert cert = detail::certify_or_throw(tower, f, params.gamma, b, a, "explicit family certificate");
  return {std::move(f), std::move(a), std::move(cert)};
}

}  // namespace ltperm
