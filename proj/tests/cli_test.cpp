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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ltperm/cli/app.hpp"

namespace ltperm::cli {
namespace {

struct Run {
  int code = -1;
  std::string out;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ltperm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream os;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), os);
  r.out = os.str();
  return r;
}

void expect_valid(const Run& r) {
  const auto problem = validate_report(r.report());
  EXPECT_FALSE(problem) << *problem << "\n" << r.out;
}

TEST(Cli, FieldsReport) {
  const auto r = run({"fields", "--field", "p=2,k=1,n=2", "--gamma", "2"});
  ASSERT_EQ(r.code, 0) << r.out;
  expect_valid(r);
  const auto j = r.report();
  EXPECT_EQ(j["modqn"], json({1, 1, 1}));
  EXPECT_EQ(j["field"], "p=2,k=1,n=2,modq=[0,1],modqn=[1,1,1]");
  EXPECT_EQ(j["elements"][0]["coefficients"], json({0, 1}));
}

TEST(Cli, MalformedFieldNamesToken) {
  const auto r = run({"fields", "--field", "p=2,k=one,n=2"});
  EXPECT_EQ(r.code, 1);
  expect_valid(r);
  EXPECT_NE(r.report()["error"]["detail"].get<std::string>().find("k=one"), std::string::npos) << r.out;
  EXPECT_EQ(run({"fields"}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TranslatorSearchAndVerify) {
  const auto s = run({"translators", "--field", "p=2,k=1,n=2", "--f", "trace", "--A", "identity"});
  ASSERT_EQ(s.code, 0) << s.out;
  expect_valid(s);
  EXPECT_EQ(s.report()["translators"],
            json::parse(R"([{"gamma":1,"b":0},{"gamma":2,"b":1},{"gamma":3,"b":1}])"));
  const auto z = run({"translators", "--field", "p=2,k=1,n=2", "--f", "const:0"});
  EXPECT_EQ(z.report()["translators"],
            json::parse(R"([{"gamma":1,"b":0},{"gamma":2,"b":0},{"gamma":3,"b":0}])"));
  const auto v = run({"translators", "--field", "p=2,k=1,n=2", "--f", "trace", "--gamma", "1", "--b", "1"});
  EXPECT_EQ(v.code, 2);
  expect_valid(v);
  EXPECT_EQ(v.report()["results"][0]["witness"], json::parse(R"({"x":0,"u":1})"));
  const auto csv = run({"translators", "--field", "p=2,k=1,n=2", "--f", "trace", "--format", "csv"});
  EXPECT_EQ(csv.out, "gamma,b\n1,0\n2,1\n3,1\n");
}

TEST(Cli, ConstructTranslatorSumExamples) {
  const std::vector<std::string> base{"construct", "--field", "p=2,k=1,n=2", "--theorem", "thm33",
                                     "--f",       "trace",   "--gamma",     "2",          "--b", "1"};
  auto good_args = base;
  good_args.insert(good_args.end(), {"--h", "const:1"});
  const auto good = run(good_args);
  ASSERT_EQ(good.code, 0) << good.out;
  expect_valid(good);
  const auto g = good.report();
  EXPECT_TRUE(g["predicted_permutation"].get<bool>());
  EXPECT_TRUE(g["oracle_permutation"].get<bool>());
  EXPECT_TRUE(g["inverse_ok"].get<bool>());
  EXPECT_EQ(g["table"], json({2, 3, 0, 1}));
  auto bad_args = base;
  bad_args.insert(bad_args.end(), {"--h", "identity"});
  const auto bad = run(bad_args);
  ASSERT_EQ(bad.code, 0) << bad.out;
  const auto b = bad.report();
  EXPECT_FALSE(b["predicted_permutation"].get<bool>());
  EXPECT_FALSE(b["oracle_permutation"].get<bool>());
  EXPECT_EQ(b["witness"], json({0, 2}));
  auto poly_args = good_args;
  poly_args.push_back("--poly");
  EXPECT_TRUE(run(poly_args).report().contains("poly"));
}

TEST(Cli, ConstructFrobeniusSumAndErrors) {
  const auto r = run({"construct", "--field", "p=3,k=1,n=2", "--theorem", "thm39", "--L", "matrix:[[0,0],[0,0]]",
                      "--t", "0", "--gamma", "1", "--gamma", "3", "--f", "table:[0,1,2,0,1,2,0,1,2]", "--f",
                      "table:[0,0,0,1,1,1,2,2,2]", "--h", "identity", "--B", "[[1,0],[0,1]]"});
  ASSERT_EQ(r.code, 0) << r.out;
  expect_valid(r);
  EXPECT_EQ(r.report()["rank"], 2);
  const auto missing = run({"construct", "--field", "p=2,k=1,n=2", "--theorem", "thm33", "--gamma", "2"});
  EXPECT_EQ(missing.code, 1);
  expect_valid(missing);
  const auto odd = run({"construct", "--field", "p=3,k=1,n=2", "--theorem", "cor34", "--f", "trace", "--gamma",
                        "3", "--b", "0", "--h", "identity"});
  EXPECT_EQ(odd.code, 1);
  EXPECT_EQ(odd.report()["error"]["kind"], "PreconditionViolated");
}

TEST(Cli, ConstructComposedInvolutionReportsGammaCheck) {
  const auto r = run({"construct", "--field", "p=2,k=1,n=2", "--theorem", "cor36", "--f", "const:0", "--gamma", "2",
                      "--b", "0", "--h", "identity", "--L", "mono:2"});
  ASSERT_EQ(r.code, 0) << r.out;
  expect_valid(r);
  EXPECT_TRUE(r.report()["g_involution"].get<bool>());
  EXPECT_FALSE(r.report()["l_fixes_gammas"].get<bool>());
}

TEST(Cli, BentReportAndSpectrumFile) {
  const auto path = (std::filesystem::temp_directory_path() / "ltperm_cli_spectrum.csv").string();
  const auto r = run({"bent", "--field", "p=2,k=1,n=3,modqn=[1,1,0,1]", "--f", "trace", "--gamma", "1", "--gamma", "3", "--gamma",
                      "5", "--b", "1", "--g", "table:[1,0]", "--spectrum", path});
  ASSERT_EQ(r.code, 0) << r.out;
  expect_valid(r);
  EXPECT_TRUE(r.report()["bent"].get<bool>());
  EXPECT_TRUE(r.report()["dual_matches"].get<bool>());
  std::ifstream in(path);
  std::string line;
  std::size_t rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "a,b,W");
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 64u);
  std::remove(path.c_str());
  const auto zero = run({"bent", "--field", "p=2,k=1,n=3,modqn=[1,1,0,1]", "--f", "trace", "--gamma", "1", "--gamma", "2", "--gamma",
                         "3", "--b", "1"});
  EXPECT_EQ(zero.code, 1);
  EXPECT_EQ(zero.report()["error"]["kind"], "HypothesisViolated");
}

TEST(Cli, CatalogSweeps) {
  const auto r = run({"catalog", "--cap", "64", "--theorem", "thm33", "--p", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.out;
  expect_valid(r);
  EXPECT_TRUE(r.report()["all_agree"].get<bool>());
  EXPECT_FALSE(r.report()["rows"].empty());
  const auto empty = run({"catalog", "--n", "3..2"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "field,theorem,params-digest,predicted,oracle,agree\n");
  const auto refused = run({"catalog", "--cap", "16", "--p", "5", "--n", "3"});
  EXPECT_EQ(refused.code, 1);
  EXPECT_EQ(refused.report()["error"]["kind"], "CapExceeded");
  EXPECT_NE(refused.out.find("125"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"catalog", "--cap", "64", "--seed", "7", "--workers", "3"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto one = args;
  one.back() = "1";
  EXPECT_EQ(run(one).out, a.out);
  const std::vector<std::string> bent{"bent", "--field", "p=2,k=1,n=3,modqn=[1,1,0,1]", "--f", "trace", "--gamma", "1",
                                      "--gamma", "3", "--gamma", "5", "--b", "1"};
  EXPECT_EQ(run(bent).out, run(bent).out);
}

TEST(Cli, ValidateReportRejectsBrokenReports) {
  EXPECT_TRUE(validate_report(json::array()));
  EXPECT_TRUE(validate_report(json{{"command", "construct"}, {"field", "x"}}));
  EXPECT_TRUE(validate_report(json{{"error", {{"kind", 3}}}}));
  EXPECT_FALSE(validate_report(json{{"error", {{"kind", "ParseError"}, {"detail", "d"}}}}));
}

}  // namespace
}  // namespace ltperm::cli
