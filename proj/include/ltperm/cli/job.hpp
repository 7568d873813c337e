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
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ltperm/bent.hpp"
#include "ltperm/cli/catalog.hpp"
#include "ltperm/cli/specs.hpp"
#include "ltperm/constructions.hpp"
#include "ltperm/error.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/poly.hpp"
#include "ltperm/translators.hpp"

namespace ltperm::cli {

using nlohmann::json;

/// One command-line request. Element codes and specs are kept as text so that
/// validation errors can name the offending token.
struct JobConfig {
  std::string command;
  std::string field;
  std::string theorem;
  std::vector<std::string> f, h, A, gamma, b;
  std::optional<std::string> L, B;
  std::optional<std::uint32_t> t;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<std::string> spectrum;
  std::uint64_t seed = 1;
  std::size_t cap = 1024;
  bool poly = false;
  // catalog ranges: "a..b" or "a,b,c"
  std::optional<std::string> primes, ks, ns;
  std::size_t samples = 4;
  unsigned workers = 0;
};

enum ExitCode : int { kOk = 0, kInvalid = 1, kRefuted = 2 };

inline json error_json(const Error& e) {
  return {{"error", {{"kind", std::string(to_string(e.kind()))}, {"detail", e.detail()}}}};
}

inline std::vector<std::uint32_t> parse_range(std::string_view text, std::string_view what) {
  std::vector<std::uint32_t> out;
  const std::string s(text);
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = parse_uint(s.substr(0, dots), what);
    const auto hi = parse_uint(s.substr(dots + 2), what);
    for (auto v = lo; v <= hi && v - lo < 64; ++v) out.push_back(static_cast<std::uint32_t>(v));
    return out;
  }
  for (const auto& [pos, tok] : split_top_level(s)) {
    if (!tok.empty()) out.push_back(static_cast<std::uint32_t>(parse_uint(tok, what)));
  }
  return out;
}

namespace detail {

inline Code element_code(const FieldTower& tower, Level level, const std::string& text, const std::string& what) {
  const auto v = parse_uint(text, what);
  if (v >= tower.size(level)) {
    fail(ErrorKind::OutOfRange, what + " " + text + " is not a " + std::string(to_string(level)) + " code (size " +
                                    std::to_string(tower.size(level)) + ")");
  }
  return static_cast<Code>(v);
}

/// The i-th value of a repeatable flag; a single value is shared by every index.
inline const std::string& nth(const std::vector<std::string>& v, std::size_t i, const char* flag,
                              const char* fallback = nullptr) {
  static thread_local std::string fb;
  if (v.empty()) {
    if (fallback) return fb = fallback;
    fail(ErrorKind::InvalidArgument, std::string("missing --") + flag);
  }
  if (v.size() == 1) return v[0];
  if (i >= v.size()) fail(ErrorKind::InvalidArgument, std::string("not enough --") + flag + " values");
  return v[i];
}

inline LinearMap linear_or_identity(const FieldTower& t, const JobConfig& cfg) {
  return cfg.L ? parse_linear_spec(t, *cfg.L) : LinearMap::identity(t);
}

inline TranslatorCert single_cert(const FieldTower& t, const JobConfig& cfg) {
  if (cfg.gamma.size() != 1) fail(ErrorKind::InvalidArgument, "this theorem takes exactly one --gamma");
  const Code gamma = element_code(t, Level::top, cfg.gamma[0], "gamma");
  const Code b = element_code(t, Level::base, nth(cfg.b, 0, "b"), "b");
  return {gamma, b, parse_additive_spec(t, nth(cfg.A, 0, "A", "identity")),
          parse_map_spec(t, Level::top, Level::base, nth(cfg.f, 0, "f")), true};
}

inline TranslatorSystem system_from(const FieldTower& t, const JobConfig& cfg, bool with_perms = true) {
  const std::size_t m = cfg.gamma.size();
  TranslatorSystem sys;
  sys.b = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    sys.gammas.push_back(element_code(t, Level::top, cfg.gamma[i], "gamma"));
    sys.fs.push_back(parse_map_spec(t, Level::top, Level::base, nth(cfg.f, i, "f")));
    sys.hs.push_back(parse_map_spec(t, Level::base, Level::base, nth(cfg.h, i, "h")));
    if (with_perms) sys.perms.push_back(parse_additive_spec(t, nth(cfg.A, i, "A", "identity")));
  }
  if (cfg.B) {
    const Matrix b = parse_code_matrix(*cfg.B, "B");
    if (b.rows() != m) fail(ErrorKind::InvalidArgument, "--B must be " + std::to_string(m) + "x" + std::to_string(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        sys.b(i, j) = element_code(t, Level::base, std::to_string(b(i, j)), "B entry");
      }
  } else {
    for (std::size_t i = 0; i < m; ++i) sys.b(i, i) = element_code(t, Level::base, nth(cfg.b, i, "b"), "b");
  }
  return sys;
}

inline json optional_json(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

inline json result_json(const FieldTower& t, const ConstructionResult& r, bool poly) {
  json j{{"theorem", r.theorem},
         {"predicted_permutation", r.predicted_permutation},
         {"oracle_permutation", r.oracle_permutation},
         {"agree", r.agrees()},
         {"reason", r.reason},
         {"witness", r.witness ? json::array({r.witness->first, r.witness->second}) : json(nullptr)},
         {"inverse_ok", optional_json(r.oracle_inverse_ok)},
         {"involution", optional_json(r.involution)},
         {"composition_ok", optional_json(r.composition_ok)},
         {"rank", r.rank ? json(*r.rank) : json(nullptr)}};
  if (poly) {
    j["poly"] = format_poly(poly_form(t, r.built));
  } else {
    j["table"] = std::vector<Code>(r.built.table().begin(), r.built.table().end());
  }
  return j;
}

}  // namespace detail

/// Structural check of an emitted report; returns the first problem found.
inline std::optional<std::string> validate_report(const json& j) {
  if (!j.is_object()) return "report is not an object";
  if (j.contains("error")) {
    const auto& e = j["error"];
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string() || !e.contains("detail") ||
        !e["detail"].is_string()) {
      return "malformed error object";
    }
    return std::nullopt;
  }
  if (!j.contains("command") || !j["command"].is_string()) return "missing command";
  const std::string cmd = j["command"];
  auto need = [&](const char* key, auto pred, const char* type) -> std::optional<std::string> {
    if (!j.contains(key) || !pred(j[key])) return std::string(key) + " must be " + type;
    return std::nullopt;
  };
  auto is_bool = [](const json& v) { return v.is_boolean(); };
  auto is_str = [](const json& v) { return v.is_string(); };
  auto is_arr = [](const json& v) { return v.is_array(); };
  auto is_uint = [](const json& v) { return v.is_number_unsigned(); };
  auto opt_bool = [](const json& v) { return v.is_boolean() || v.is_null(); };
  std::vector<std::optional<std::string>> checks{need("field", is_str, "a string")};
  if (cmd == "fields") {
    checks.push_back(need("p", is_uint, "an integer"));
    checks.push_back(need("q", is_uint, "an integer"));
    checks.push_back(need("modq", is_arr, "an array"));
    checks.push_back(need("modqn", is_arr, "an array"));
    checks.push_back(need("elements", is_arr, "an array"));
  } else if (cmd == "translators") {
    checks.push_back(need("mode", is_str, "a string"));
    if (j.value("mode", "") == "search") {
      checks.push_back(need("translators", is_arr, "an array"));
      checks.push_back(need("subspace", is_bool, "a boolean"));
    } else {
      checks.push_back(need("results", is_arr, "an array"));
    }
  } else if (cmd == "construct") {
    checks.push_back(need("theorem", is_str, "a string"));
    checks.push_back(need("predicted_permutation", is_bool, "a boolean"));
    checks.push_back(need("oracle_permutation", is_bool, "a boolean"));
    checks.push_back(need("agree", is_bool, "a boolean"));
    checks.push_back(need("inverse_ok", opt_bool, "a boolean or null"));
    if (!j.contains("table") && !j.contains("poly")) checks.push_back("table or poly required");
  } else if (cmd == "bent") {
    checks.push_back(need("bent", is_bool, "a boolean"));
    checks.push_back(need("dual_matches", is_bool, "a boolean"));
    checks.push_back(need("parseval", is_bool, "a boolean"));
    checks.push_back(need("H", is_str, "a string"));
  } else if (cmd == "catalog") {
    checks.push_back(need("rows", is_arr, "an array"));
    checks.push_back(need("all_agree", is_bool, "a boolean"));
  } else {
    return "unknown command '" + cmd + "'";
  }
  for (auto& c : checks)
    if (c) return c;
  return std::nullopt;
}

namespace detail {

struct Output {
  std::string text;
  int code = kOk;
};

inline Output cmd_fields(const JobConfig& cfg) {
  const FieldTower t = parse_field_spec(cfg.field).build();
  if (cfg.format && *cfg.format != "json") fail(ErrorKind::InvalidArgument, "fields reports are JSON only");
  json elements = json::array();
  for (const auto& g : cfg.gamma) {
    const Element e{Level::top, element_code(t, Level::top, g, "element")};
    elements.push_back({{"code", e.code}, {"coefficients", t.coefficients(e)}});
  }
  json j{{"command", "fields"},
         {"field", canonical_field_spec(t)},
         {"p", t.p()},
         {"k", t.k()},
         {"n", t.n()},
         {"q", t.q()},
         {"size", t.size(Level::top)},
         {"modq", t.modulus_q()},
         {"modqn", t.modulus_qn()},
         {"primitive", {{"base", t.base().primitive()}, {"top", t.top().primitive()}}},
         {"elements", elements}};
  return {j.dump(2) + "\n", kOk};
}

inline Output cmd_translators(const JobConfig& cfg) {
  const FieldTower t = parse_field_spec(cfg.field).build();
  const FieldFn f = parse_map_spec(t, Level::top, Level::base, nth(cfg.f, 0, "f"));
  const AdditivePerm a = parse_additive_spec(t, nth(cfg.A, 0, "A", "identity"));
  const bool csv = cfg.format && *cfg.format == "csv";
  std::ostringstream os;
  if (!cfg.gamma.empty()) {
    json results = json::array();
    bool all_ok = true;
    if (csv) os << "gamma,b,verified,x,u\n";
    for (std::size_t i = 0; i < cfg.gamma.size(); ++i) {
      const Code gamma = element_code(t, Level::top, cfg.gamma[i], "gamma");
      const Code b = element_code(t, Level::base, nth(cfg.b, i, "b"), "b");
      const auto check = verify_translator(t, f, gamma, b, a);
      all_ok = all_ok && check.ok();
      json w = check.refutation ? json{{"x", check.refutation->x}, {"u", check.refutation->u}} : json(nullptr);
      results.push_back({{"gamma", gamma}, {"b", b}, {"verified", check.ok()}, {"witness", w}});
      if (csv) {
        os << gamma << ',' << b << ',' << (check.ok() ? "true" : "false") << ',';
        if (check.refutation) os << check.refutation->x << ',' << check.refutation->u;
        else os << ',';
        os << '\n';
      }
    }
    if (!csv) {
      os << json{{"command", "translators"}, {"field", canonical_field_spec(t)}, {"mode", "verify"}, {"results", results}}
                .dump(2)
         << '\n';
    }
    return {os.str(), all_ok ? kOk : kRefuted};
  }
  const auto search = search_translators(t, f, a);
  if (csv) {
    os << "gamma,b\n";
    for (const auto& pr : search.pairs) os << pr.gamma << ',' << pr.b << '\n';
    return {os.str(), kOk};
  }
  json list = json::array();
  for (const auto& pr : search.pairs) list.push_back({{"gamma", pr.gamma}, {"b", pr.b}});
  json j{{"command", "translators"},
         {"field", canonical_field_spec(t)},
         {"mode", "search"},
         {"translators", list},
         {"closed_under_addition", search.closed_under_addition},
         {"closed_under_scaling", search.closed_under_scaling},
         {"subspace", search.is_subspace()},
         {"surjective", is_surjective(t, f)}};
  return {j.dump(2) + "\n", kOk};
}

inline Output cmd_construct(const JobConfig& cfg) {
  const FieldTower t = parse_field_spec(cfg.field).build();
  const std::string& th = cfg.theorem;
  ConstructionResult r;
  std::optional<ComposedInvolutionReport> involution_report;
  if (th == "thm21") {
    r = linear_translator_build(t, linear_or_identity(t, cfg), single_cert(t, cfg),
                    parse_map_spec(t, Level::base, Level::base, nth(cfg.h, 0, "h")));
  } else if (th == "thm31") {
    r = char2_linear_build(t, linear_or_identity(t, cfg), single_cert(t, cfg),
                    parse_map_spec(t, Level::base, Level::base, nth(cfg.h, 0, "h")));
  } else if (th == "thm33") {
    r = translator_sum_build(t, system_from(t, cfg));
  } else if (th == "cor34") {
    r = translator_involution_check(t, system_from(t, cfg));
  } else if (th == "cor35") {
    r = composed_sum_build(t, linear_or_identity(t, cfg), system_from(t, cfg));
  } else if (th == "cor36") {
    involution_report = composed_involution_check(t, linear_or_identity(t, cfg), system_from(t, cfg));
    r = involution_report->G;
  } else if (th == "thm37") {
    if (!cfg.L) fail(ErrorKind::InvalidArgument, "missing --L");
    r = kernel_sum_build(t, parse_linear_spec(t, *cfg.L), system_from(t, cfg));
  } else if (th == "cor38") {
    const TranslatorCert c = single_cert(t, cfg);
    r = trace_shift_build(t, c.gamma, c.f, c.b, c.A, parse_map_spec(t, Level::base, Level::base, nth(cfg.h, 0, "h")));
  } else if (th == "thm39") {
    if (!cfg.L) fail(ErrorKind::InvalidArgument, "missing --L");
    if (!cfg.t) fail(ErrorKind::InvalidArgument, "missing --t");
    r = frobenius_sum_build(t, parse_linear_spec(t, *cfg.L), system_from(t, cfg, false), *cfg.t);
  } else {
    fail(ErrorKind::InvalidArgument, "unknown theorem '" + th + "'");
  }
  // The involution results predict an involution; the others predict a permutation.
  // Whether L fixes the gammas is reported alongside but does not decide agreement.
  bool agree = r.agrees();
  if (r.involution) agree = agree && *r.involution;
  if (cfg.format && *cfg.format == "csv") {
    std::ostringstream os;
    os << "x,F(x)\n";
    for (Code x = 0; x < r.built.size(); ++x) os << x << ',' << r.built(x) << '\n';
    return {os.str(), agree ? kOk : kRefuted};
  }
  json j = result_json(t, r, cfg.poly);
  j["command"] = "construct";
  j["field"] = canonical_field_spec(t);
  j["agree"] = agree;
  if (involution_report) {
    j["g_involution"] = involution_report->g_involution;
    j["l_fixes_gammas"] = involution_report->l_fixes_gammas;
  }
  return {j.dump(2) + "\n", agree ? kOk : kRefuted};
}

inline Output cmd_bent(const JobConfig& cfg) {
  const FieldTower t = parse_field_spec(cfg.field).build();
  if (cfg.gamma.size() != 3) fail(ErrorKind::HypothesisViolated, "exactly three --gamma values are needed");
  BentInputs in{linear_or_identity(t, cfg),
                parse_map_spec(t, Level::top, Level::base, nth(cfg.f, 0, "f")),
                {element_code(t, Level::top, cfg.gamma[0], "gamma"), element_code(t, Level::top, cfg.gamma[1], "gamma"),
                 element_code(t, Level::top, cfg.gamma[2], "gamma")},
                element_code(t, Level::base, nth(cfg.b, 0, "b"), "b"),
                parse_additive_spec(t, nth(cfg.A, 0, "A", "identity")),
                parse_map_spec(t, Level::base, Level::base, nth(cfg.h, 0, "h", "identity"))};
  BentInstance inst = build_H(t, std::move(in));
  compute_spectrum(t, inst);
  const BentVerdict v = is_bent(inst);
  if (cfg.spectrum) {
    std::ofstream f(*cfg.spectrum);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + *cfg.spectrum);
    write_spectrum_csv(f, t, *inst.walsh);
  }
  const int code = v.bent && v.dual_matches ? kOk : kRefuted;
  if (cfg.format && *cfg.format == "csv") {
    std::ostringstream os;
    write_spectrum_csv(os, t, *inst.walsh);
    return {os.str(), code};
  }
  json j{{"command", "bent"},
         {"field", canonical_field_spec(t)},
         {"bent", v.bent},
         {"dual_matches", v.dual_matches},
         {"parseval", v.parseval},
         {"phi_permutations", inst.phi_permutations},
         {"psi_permutation", inst.psi_permutation},
         {"psi_inverse_sums", inst.psi_inverse_sums},
         {"H", inst.H.to_hex()},
         {"H_dual", inst.H_dual.to_hex()}};
  return {j.dump(2) + "\n", code};
}

inline Output cmd_catalog(const JobConfig& cfg) {
  CatalogConfig cc;
  if (!cfg.field.empty()) cc.field = parse_field_spec(cfg.field);
  if (cfg.primes) cc.primes = parse_range(*cfg.primes, "--p");
  if (cfg.ks) cc.ks = parse_range(*cfg.ks, "--k");
  if (cfg.ns) cc.ns = parse_range(*cfg.ns, "--n");
  if (!cfg.theorem.empty() && cfg.theorem != "all") {
    cc.theorems.clear();
    for (const auto& [pos, tok] : split_top_level(cfg.theorem))
      if (!tok.empty()) cc.theorems.push_back(tok);
  }
  cc.cap = cfg.cap;
  cc.samples = cfg.samples;
  cc.seed = cfg.seed;
  cc.workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  const auto rows = run_catalog(cc);
  bool all = true;
  for (const auto& r : rows) all = all && r.agree();
  std::ostringstream os;
  if (cfg.format && *cfg.format == "json") {
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"field", r.field},
                      {"theorem", r.theorem},
                      {"params_digest", r.digest},
                      {"predicted", r.predicted},
                      {"oracle", r.oracle},
                      {"agree", r.agree()}});
    }
    os << json{{"command", "catalog"}, {"field", cfg.field}, {"rows", list}, {"all_agree", all}}.dump(2) << '\n';
  } else {
    write_catalog_csv(os, rows);
  }
  return {os.str(), all ? kOk : kRefuted};
}

}  // namespace detail

/// Runs a job and writes its report (or a JSON error object) to `out`, or to the
/// --out file when given. Returns the exit code.
inline int run_job(const JobConfig& cfg, std::ostream& out) {
  detail::Output result;
  try {
    if (cfg.format && *cfg.format != "json" && *cfg.format != "csv") {
      fail(ErrorKind::InvalidArgument, "--format must be json or csv");
    }
    if (cfg.command == "fields") result = detail::cmd_fields(cfg);
    else if (cfg.command == "translators") result = detail::cmd_translators(cfg);
    else if (cfg.command == "construct") result = detail::cmd_construct(cfg);
    else if (cfg.command == "bent") result = detail::cmd_bent(cfg);
    else if (cfg.command == "catalog") result = detail::cmd_catalog(cfg);
    else fail(ErrorKind::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    result = {error_json(e).dump(2) + "\n", kInvalid};
  }
  if (cfg.out && result.code != kInvalid) {
    std::ofstream f(*cfg.out);
    if (!f) {
      out << error_json(Error(ErrorKind::InvalidArgument, "cannot write " + *cfg.out)).dump(2) << '\n';
      return kInvalid;
    }
    f << result.text;
  } else {
    out << result.text;
  }
  return result.code;
}

}  // namespace ltperm::cli
