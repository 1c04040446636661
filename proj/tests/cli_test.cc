// Copyright 2026 The ptesolve Authors.
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

#include "cli.h"

#include <filesystem>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gtest/gtest.h"
#include "ptesolve/epr.h"
#include "ptesolve/format.h"
#include "test_support.h"

namespace ptesolve {
namespace {

namespace fs = std::filesystem;
using testing::DataPath;
using testing::ReadText;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool Contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ptesolve_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Temp(const std::string& name) const {
    return (dir_ / name).string();
  }

  fs::path dir_;
};

// ---- validate --------------------------------------------------------------

TEST_F(CliTest, ValidateCorpus) {
  for (const char* file :
       {"games/promise.game.json", "games/prisoners_dilemma.game.json",
        "games/newcomb.game.json", "games/hofstadter.game.json",
        "games/epr.spacetime.json"}) {
    CliRun r = Cli({"validate", DataPath(file)});
    EXPECT_EQ(r.code, cli::kOk) << file << "\n" << r.err;
    EXPECT_TRUE(Contains(r.out, "valid")) << r.out;
  }
}

TEST_F(CliTest, ValidateReportsPointer) {
  const std::string path = DataPath("tests/data/menu_mismatch.game.json");
  CliRun r = Cli({"validate", path});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_TRUE(Contains(r.err, path + ":17:5: /infosets/1: menu-mismatch"))
      << r.err;
}

TEST_F(CliTest, SyntaxAndIoErrors) {
  EXPECT_EQ(Cli({"validate", DataPath("tests/data/malformed.game.json")}).code,
            cli::kIoOrSyntax);
  EXPECT_EQ(Cli({"validate", Temp("missing.game.json")}).code,
            cli::kIoOrSyntax);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, cli::kUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"solve"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"solve", DataPath("games/promise.game.json"), "--concept",
                 "ppe"})
                .code,
            cli::kUsage);
  EXPECT_EQ(Cli({"solve", DataPath("games/promise.game.json"), "--concept",
                 "nash", "--trace"})
                .code,
            cli::kUsage);
}

// ---- solve -----------------------------------------------------------------

TEST_F(CliTest, SolvePromise) {
  CliRun pte = Cli({"solve", DataPath("games/promise.game.json")});
  EXPECT_EQ(pte.code, cli::kOk);
  EXPECT_EQ(pte.out, "PTE: (1,1) paid\n");
  CliRun spe =
      Cli({"solve", DataPath("games/promise.game.json"), "--concept", "spe"});
  EXPECT_EQ(spe.code, cli::kOk);
  EXPECT_TRUE(Contains(spe.out, "SPE: (0,0) no-deal")) << spe.out;
}

TEST_F(CliTest, SolvePrisonersDilemma) {
  const std::string pd = DataPath("games/prisoners_dilemma.game.json");
  EXPECT_TRUE(Contains(Cli({"solve", pd}).out, "PTE: (2,2) cooperate/cooperate"));
  CliRun nash = Cli({"solve", pd, "--concept", "nash"});
  EXPECT_TRUE(Contains(nash.out, "1 pure Nash equilibrium")) << nash.out;
  EXPECT_TRUE(Contains(nash.out, "(1,1) defect/defect")) << nash.out;
  EXPECT_EQ(Cli({"solve", pd, "--concept", "spe"}).code, cli::kInvalid);
}

TEST_F(CliTest, StrictSignalsMissingSolution) {
  const std::string path = DataPath("tests/data/no_pte.game.json");
  CliRun lax = Cli({"solve", path});
  EXPECT_EQ(lax.code, cli::kOk);
  EXPECT_TRUE(Contains(lax.out, "no PTE")) << lax.out;
  EXPECT_EQ(Cli({"solve", path, "--strict"}).code, cli::kNoEquilibrium);
  EXPECT_EQ(Cli({"solve", DataPath("games/promise.game.json"), "--strict"}).code,
            cli::kOk);
}

TEST_F(CliTest, TraceFileAndExplain) {
  const std::string trace = Temp("promise.trace.json");
  CliRun solve = Cli({"solve", DataPath("games/promise.game.json"), "--trace",
                   "--trace-out", trace});
  ASSERT_EQ(solve.code, cli::kOk) << solve.err;
  TraceDocument doc = ParseTraceDocument(ReadText(trace));
  EXPECT_EQ(doc.rounds.size(), 2u);
  EXPECT_EQ(doc.rounds[0].eliminated[0].outcome, "unpaid");
  EXPECT_EQ(doc.rounds[1].eliminated[0].outcome, "no-deal");

  CliRun explain = Cli({"explain", trace});
  EXPECT_EQ(explain.code, cli::kOk);
  EXPECT_EQ(explain.out, RenderTrace(doc));
  EXPECT_TRUE(Contains(solve.out, explain.out));
}

TEST_F(CliTest, ExplainRejectsGameFiles) {
  EXPECT_EQ(Cli({"explain", DataPath("games/promise.game.json")}).code,
            cli::kInvalid);
}

// ---- compile-spacetime -----------------------------------------------------

TEST_F(CliTest, CompileEpr) {
  const std::string out = Temp("epr.game.json");
  CliRun r = Cli({"compile-spacetime", DataPath("games/epr.spacetime.json"),
               "--out", out});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(Contains(r.out, "6 infosets, 16 leaves")) << r.out;
  GameDocument doc = ParseGameDocument(ReadText(out));
  ASSERT_EQ(doc.kind(), DocumentKind::kExtensive);
  EXPECT_EQ(std::get<GameTree>(doc.body).num_infosets(), 6);
}

TEST_F(CliTest, CompileTimelikeChainIsPerfectInformation) {
  CliRun r = Cli({"compile-spacetime",
               DataPath("tests/data/timelike_chain.spacetime.json")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(Contains(r.out, "all infosets singleton")) << r.out;
}

TEST_F(CliTest, CompileRejectsAcausalSpec) {
  CliRun r = Cli({"compile-spacetime",
               DataPath("tests/data/acausal.spacetime.json")});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_TRUE(Contains(r.err, "/events/1")) << r.err;
}

// ---- epr-ensemble ----------------------------------------------------------

TEST_F(CliTest, EnsembleIsByteIdentical) {
  const std::string a = Temp("a.json"), b = Temp("b.json"),
                    c = Temp("c.json");
  ASSERT_EQ(Cli({"epr-ensemble", "--samples", "300", "--seed", "11", "--out",
                 a})
                .code,
            cli::kOk);
  ASSERT_EQ(Cli({"epr-ensemble", "--samples", "300", "--seed", "11", "--out",
                 b})
                .code,
            cli::kOk);
  ASSERT_EQ(Cli({"epr-ensemble", "--samples", "300", "--seed", "11", "--out",
                 c, "--serial"})
                .code,
            cli::kOk);
  EXPECT_EQ(ReadText(a), ReadText(b));
  EXPECT_EQ(ReadText(a), ReadText(c));
}

TEST_F(CliTest, EnsembleMatchesGolden) {
  const std::string out = Temp("golden.json");
  CliRun r = Cli({"epr-ensemble", "--samples", "200", "--seed", "7", "--out", out});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(ReadText(out),
            ReadText(DataPath("tests/data/epr_n200_seed7.report.json")));
  EXPECT_TRUE(Contains(r.out, "samples 200")) << r.out;
}

TEST_F(CliTest, EnsembleCsvAndModels) {
  const std::string csv = Temp("r.csv");
  CliRun fixed = Cli({"epr-ensemble", "--samples", "50", "--model",
                   "fixed:" + DataPath("tests/data/epr_fixed.utilities.json"),
                   "--csv", csv, "--out", Temp("r.json")});
  ASSERT_EQ(fixed.code, cli::kOk) << fixed.err;
  EXPECT_TRUE(ReadText(csv).starts_with("a_axis,b_axis,u,v,count"));
  EnsembleReport report = ParseReport(ReadText(Temp("r.json")));
  EXPECT_TRUE(report.model.starts_with("fixed:"));

  CliRun shared = Cli({"epr-ensemble", "--samples", "20", "--shared-universe",
                    "--out", Temp("s.json")});
  ASSERT_EQ(shared.code, cli::kOk);
  EXPECT_TRUE(ParseReport(ReadText(Temp("s.json"))).shared_universe);
}

TEST_F(CliTest, EnsembleArgumentErrors) {
  EXPECT_EQ(Cli({"epr-ensemble"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"epr-ensemble", "--samples", "0"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"epr-ensemble", "--samples", "5", "--signs", "+-"}).code,
            cli::kUsage);
  EXPECT_EQ(Cli({"epr-ensemble", "--samples", "5", "--model", "gaussian"}).code,
            cli::kUsage);
  EXPECT_EQ(Cli({"epr-ensemble", "--samples", "5", "--model",
                 "fixed:" + Temp("missing.json")})
                .code,
            cli::kIoOrSyntax);
}

}  // namespace
}  // namespace ptesolve
