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
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ltperm/cli/specs.hpp"
#include "ltperm/constructions.hpp"
#include "ltperm/error.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/instances.hpp"

namespace ltperm::cli {

inline const std::vector<std::string>& all_theorems() {
  static const std::vector<std::string> names{"thm21", "thm31", "thm33", "cor34", "cor35",
                                              "cor36", "thm37", "cor38", "thm39"};
  return names;
}

/// 64-bit FNV-1a.
class Fnv1a {
 public:
  Fnv1a& add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(v >> (8 * i)));
    return *this;
  }
  Fnv1a& add(std::string_view s) {
    for (char c : s) byte(static_cast<unsigned char>(c));
    return add(s.size());
  }
  Fnv1a& add(const FieldFn& f) {
    add(static_cast<std::uint64_t>(f.domain()));
    add(static_cast<std::uint64_t>(f.codomain()));
    for (Code c : f.table()) add(c);
    return *this;
  }
  Fnv1a& add(const std::vector<Code>& v) {
    add(v.size());
    for (Code c : v) add(c);
    return *this;
  }
  std::uint64_t value() const noexcept { return h_; }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  void byte(unsigned char b) {
    h_ ^= b;
    h_ *= 0x100000001b3ULL;
  }
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct CatalogConfig {
  std::optional<FieldSpec> field;
  /// Unset ranges mean "every value whose tower fits under the cap".
  std::optional<std::vector<std::uint32_t>> primes, ks, ns;
  std::vector<std::string> theorems = all_theorems();
  std::size_t cap = 1024;
  std::size_t samples = 4;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct CatalogRow {
  std::string field;
  std::string theorem;
  std::string digest;
  bool predicted = false;
  bool oracle = false;
  bool agree() const noexcept { return predicted == oracle; }
};

namespace detail {

inline std::uint64_t size_of(std::uint32_t p, std::uint32_t k, std::uint32_t n) {
  std::uint64_t s = 1;
  for (std::uint64_t i = 0; i < std::uint64_t{k} * n; ++i) {
    s *= p;
    if (s > (std::uint64_t{1} << 40)) break;
  }
  return s;
}

inline Fnv1a& add_system(Fnv1a& h, const TranslatorSystem& sys) {
  h.add(sys.gammas);
  for (const auto& f : sys.fs) h.add(f);
  for (const auto& f : sys.hs) h.add(f);
  for (const auto& a : sys.perms) h.add(a.coeffs());
  for (std::size_t i = 0; i < sys.b.rows(); ++i)
    for (std::size_t j = 0; j < sys.b.cols(); ++j) h.add(sys.b(i, j));
  return h;
}

inline Fnv1a& add_linear(Fnv1a& h, const LinearMap& l) { return h.add(l.as_fn()); }

inline bool applicable(const FieldTower& t, const std::string& theorem) {
  if (theorem == "thm31" || theorem == "cor34" || theorem == "cor36") return t.p() == 2;
  if (theorem == "cor38") return t.p() != 2 && t.n() == 2;
  return true;
}

/// Distinct per (seed, field, theorem, sample), independent of scheduling.
inline Rng row_rng(std::uint64_t seed, const std::string& field, const std::string& theorem, std::size_t sample) {
  Fnv1a h;
  h.add(seed).add(field).add(theorem).add(sample);
  return Rng(h.value());
}

inline std::size_t pick_m(const FieldTower& t, Rng& rng) {
  return 1 + random_code(rng, std::min<std::size_t>(2, t.n()));
}

/// L candidates for the commuting involution result: identity and x^{q^{n/2}}.
inline std::vector<LinearMap> involution_candidates(const FieldTower& t) {
  std::vector<LinearMap> out{LinearMap::identity(t)};
  if (t.n() % 2 == 0) {
    std::vector<Code> c(t.n() / 2 + 1, 0);
    c.back() = 1;
    out.push_back(LinearMap::from_qpoly(t, std::move(c)));
  }
  return out;
}

inline CatalogRow catalog_row(const FieldTower& t, const std::string& field, const std::string& theorem,
                              std::size_t sample, std::uint64_t seed) {
  Rng rng = row_rng(seed, field, theorem, sample);
  CatalogRow row{field, theorem, "", false, false};
  Fnv1a h;
  h.add(theorem).add(field);
  auto finish = [&](const ConstructionResult& r) {
    row.predicted = r.predicted_permutation;
    row.oracle = r.oracle_permutation;
  };

  if (theorem == "thm21" || theorem == "thm31") {
    const LinearMap l = random_linear_perm(t, rng);
    const Code gamma = random_nonzero(rng, t.size(Level::top));
    const AdditivePerm a = random_additive_perm(t, rng);
    const Code b = theorem == "thm31" ? random_nonzero(rng, t.q()) : random_code(rng, t.q());
    const FieldFn f = translator_function(t, {gamma}, 0, b, a, true, rng);
    const FieldFn h_or_g = theorem == "thm31" ? random_base_perm(t, rng) : random_base_map(t, rng);
    const TranslatorCert cert{gamma, b, a, f, true};
    add_linear(h, l).add(gamma).add(b).add(a.coeffs()).add(f).add(h_or_g);
    finish(theorem == "thm21" ? linear_translator_build(t, l, cert, h_or_g) : char2_linear_build(t, l, cert, h_or_g));
  } else if (theorem == "thm33" || theorem == "cor34" || theorem == "cor35") {
    SystemOptions opt;
    opt.m = pick_m(t, rng);
    opt.zero_b = theorem == "cor34";
    const auto sys = random_diagonal_system(t, random_independent(t, opt.m, rng), opt, rng);
    add_system(h, sys);
    if (theorem == "cor35") {
      const LinearMap l = random_linear_perm(t, rng);
      add_linear(h, l);
      finish(composed_sum_build(t, l, sys));
    } else if (theorem == "cor34") {
      // Predicted: an involution.
      const auto r = translator_involution_check(t, sys);
      row.predicted = true;
      row.oracle = r.oracle_permutation && r.involution.value_or(false);
    } else {
      finish(translator_sum_build(t, sys));
    }
  } else if (theorem == "cor36") {
    SystemOptions opt;
    opt.m = pick_m(t, rng);
    opt.zero_b = true;
    const auto sys = random_diagonal_system(t, random_independent(t, opt.m, rng), opt, rng);
    const FieldFn f = translator_sum_build(t, sys).built;
    std::vector<LinearMap> ok;
    for (auto& l : involution_candidates(t)) {
      if (compose(l.as_fn(), f) == compose(f, l.as_fn())) ok.push_back(std::move(l));
    }
    const LinearMap& l = ok[random_code(rng, ok.size())];
    add_system(h, sys);
    add_linear(h, l);
    const auto rep = composed_involution_check(t, l, sys);
    row.predicted = true;
    row.oracle = rep.G.oracle_permutation && rep.g_involution;
  } else if (theorem == "thm37" || theorem == "thm39") {
    const std::size_t m = pick_m(t, rng);
    const auto ki = random_kernel_map(t, m, rng);
    std::vector<FieldFn> hs;
    for (std::size_t i = 0; i < m; ++i) hs.push_back(random_base_perm(t, rng));
    add_linear(h, ki.L);
    if (theorem == "thm37") {
      SystemOptions opt;
      opt.m = m;
      opt.nonzero_b = true;
      opt.permutation_h = true;
      const auto sys = random_diagonal_system(t, ki.kernel, opt, rng);
      add_system(h, sys);
      finish(kernel_sum_build(t, ki.L, sys));
    } else {
      const auto tt = static_cast<std::uint32_t>(random_code(rng, t.k() + 1));
      Matrix target(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) target(i, j) = random_code(rng, t.q());
      if (m == 2 && random_code(rng, 2) == 0) {
        // Rank-deficient half the time: second column a multiple of the first.
        const Code c = random_code(rng, t.q());
        for (std::size_t i = 0; i < m; ++i) target(i, 1) = t.base().mul(c, target(i, 0));
      }
      const auto sys = frobenius_system(t, ki.kernel, target, tt, hs);
      add_system(h, sys).add(tt);
      finish(frobenius_sum_build(t, ki.L, sys, tt));
    }
  } else if (theorem == "cor38") {
    const Field& top = t.top();
    std::vector<Code> gammas;
    for (Code g = 1; g < top.size(); ++g) {
      if (top.add(g, top.frob(g, t.k())) == 0) gammas.push_back(g);
    }
    const Code gamma = gammas[random_code(rng, gammas.size())];
    const AdditivePerm a = random_additive_perm(t, rng);
    const Code b = random_nonzero(rng, t.q());
    const FieldFn f = translator_function(t, {gamma}, 0, b, a, true, rng);
    const FieldFn hp = random_base_perm(t, rng);
    h.add(gamma).add(b).add(a.coeffs()).add(f).add(hp);
    finish(trace_shift_build(t, gamma, f, b, a, hp));
  } else {
    fail(ErrorKind::InvalidArgument, "unknown theorem '" + theorem + "'");
  }
  row.digest = h.hex();
  return row;
}

}  // namespace detail

struct CatalogJob {
  FieldSpec spec;
  std::string theorem;
  std::size_t sample;
};

/// The enumeration, in output order. Throws CapExceeded if an explicitly requested
/// tower is larger than the cap.
inline std::vector<CatalogJob> catalog_jobs(const CatalogConfig& cfg) {
  for (const auto& th : cfg.theorems) {
    if (std::find(all_theorems().begin(), all_theorems().end(), th) == all_theorems().end()) {
      fail(ErrorKind::InvalidArgument, "unknown theorem '" + th + "'");
    }
  }
  std::vector<FieldSpec> specs;
  std::uint64_t required = 0;
  if (cfg.field) {
    specs.push_back(*cfg.field);
    required = detail::size_of(cfg.field->p, cfg.field->k, cfg.field->n);
  } else {
    const std::vector<std::uint32_t> dp{2, 3, 5};
    std::vector<std::uint32_t> dr;
    for (std::uint32_t i = 1; i <= 20; ++i) dr.push_back(i);
    const auto& ps = cfg.primes ? *cfg.primes : dp;
    const auto& ks = cfg.ks ? *cfg.ks : dr;
    const auto& ns = cfg.ns ? *cfg.ns : dr;
    for (std::uint32_t p : ps)
      for (std::uint32_t k : ks)
        for (std::uint32_t n : ns)
          if (detail::size_of(p, k, n) <= cfg.cap) specs.push_back({p, k, n, std::nullopt, std::nullopt});
    // Every explicitly requested value must have at least one tower under the cap.
    auto smallest = [&](int axis, std::uint32_t v) {
      std::uint64_t best = UINT64_MAX;
      for (std::uint32_t p : axis == 0 ? std::vector<std::uint32_t>{v} : ps)
        for (std::uint32_t k : axis == 1 ? std::vector<std::uint32_t>{v} : ks)
          for (std::uint32_t n : axis == 2 ? std::vector<std::uint32_t>{v} : ns) best = std::min(best, detail::size_of(p, k, n));
      return best;
    };
    const std::optional<std::vector<std::uint32_t>>* axes[] = {&cfg.primes, &cfg.ks, &cfg.ns};
    for (int axis = 0; axis < 3; ++axis) {
      if (!*axes[axis]) continue;
      for (std::uint32_t v : **axes[axis]) {
        if (auto s = smallest(axis, v); s != UINT64_MAX && s > cfg.cap) required = std::max(required, s);
      }
    }
  }
  if (required > cfg.cap) {
    fail(ErrorKind::CapExceeded, "requested towers need cap >= " + std::to_string(required) + " (cap is " +
                                     std::to_string(cfg.cap) + ")");
  }
  std::vector<CatalogJob> jobs;
  for (const auto& spec : specs) {
    const FieldTower t = spec.build();
    for (const auto& th : cfg.theorems) {
      if (!detail::applicable(t, th)) continue;
      for (std::size_t s = 0; s < cfg.samples; ++s) jobs.push_back({spec, th, s});
    }
  }
  return jobs;
}

/// Runs every job on a small worker pool; rows come back in enumeration order.
inline std::vector<CatalogRow> run_catalog(const CatalogConfig& cfg) {
  const auto jobs = catalog_jobs(cfg);
  std::vector<CatalogRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const FieldTower t = jobs[i].spec.build();
        rows[i] = detail::catalog_row(t, canonical_field_spec(t), jobs[i].theorem, jobs[i].sample, cfg.seed);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_catalog_csv(std::ostream& os, const std::vector<CatalogRow>& rows) {
  os << "field,theorem,params-digest,predicted,oracle,agree\n";
  for (const auto& r : rows) {
    os << csv_quote(r.field) << ',' << r.theorem << ',' << r.digest << ',' << (r.predicted ? "true" : "false") << ','
       << (r.oracle ? "true" : "false") << ',' << (r.agree() ? "true" : "false") << '\n';
  }
}

}  // namespace ltperm::cli
