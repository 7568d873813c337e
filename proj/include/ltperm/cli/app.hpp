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

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ltperm/cli/job.hpp"

namespace ltperm::cli {

namespace detail {

inline void add_common(CLI::App& app, JobConfig& cfg, bool field_required) {
  auto* field = app.add_option("--field", cfg.field, "p=<int>,k=<int>,n=<int>[,modq=[..]][,modqn=[..]]");
  if (field_required) field->required();
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--out", cfg.out, "write the report to this file");
}

inline void add_maps(CLI::App& app, JobConfig& cfg) {
  app.add_option("--f", cfg.f, "map F_{q^n} -> F_q (repeatable)");
  app.add_option("--h,--g", cfg.h, "map F_q -> F_q (repeatable)");
  app.add_option("--A", cfg.A, "additive permutation of F_q (repeatable)");
  app.add_option("--L", cfg.L, "F_q-linear map of F_{q^n}");
  app.add_option("--gamma", cfg.gamma, "top element code (repeatable)");
  app.add_option("--b", cfg.b, "base element code (repeatable)");
}

}  // namespace detail

/// Parses argv into a job and runs it. Usage errors are reported as JSON error objects
/// with exit code 1, like every other invalid input.
inline int run_cli(int argc, const char* const* argv, std::ostream& out) {
  JobConfig cfg;
  CLI::App app{"Permutation constructions from linear translators over finite field towers", "ltperm"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  auto* fields = app.add_subcommand("fields", "describe a field tower and render elements");
  detail::add_common(*fields, cfg, true);
  fields->add_option("--gamma", cfg.gamma, "element code to render (repeatable)");

  auto* translators = app.add_subcommand("translators", "search for or verify (b, A)-linear translators");
  detail::add_common(*translators, cfg, true);
  detail::add_maps(*translators, cfg);

  auto* construct = app.add_subcommand("construct", "build a construction and compare prediction with the oracle");
  detail::add_common(*construct, cfg, true);
  detail::add_maps(*construct, cfg);
  construct->add_option("--theorem", cfg.theorem, "thm21 thm31 thm33 cor34 cor35 cor36 thm37 cor38 thm39")->required();
  construct->add_option("--B", cfg.B, "matrix of translator constants as JSON rows");
  construct->add_option("--t", cfg.t, "Frobenius exponent for A = x^{p^t}");
  construct->add_flag("--poly", cfg.poly, "report the built map as an interpolated polynomial");

  auto* bent = app.add_subcommand("bent", "build the bent function and verify its spectrum");
  detail::add_common(*bent, cfg, true);
  detail::add_maps(*bent, cfg);
  bent->add_option("--spectrum", cfg.spectrum, "write the Walsh spectrum as CSV a,b,W");

  auto* catalog = app.add_subcommand("catalog", "sweep constructions over many towers");
  detail::add_common(*catalog, cfg, false);
  catalog->add_option("--theorem", cfg.theorem, "comma-separated theorem names, or all");
  catalog->add_option("--cap", cfg.cap, "largest tower size allowed");
  catalog->add_option("--seed", cfg.seed, "seed for instance sampling");
  catalog->add_option("--p", cfg.primes, "characteristics, a..b or a,b");
  catalog->add_option("--k", cfg.ks, "base degrees, a..b or a,b");
  catalog->add_option("--n", cfg.ns, "extension degrees, a..b or a,b");
  catalog->add_option("--samples", cfg.samples, "instances per tower and theorem");
  catalog->add_option("--workers", cfg.workers, "worker threads (0: one per core)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << error_json(Error(ErrorKind::ParseError, e.what())).dump(2) << '\n';
    return kInvalid;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run_job(cfg, out);
}

}  // namespace ltperm::cli
