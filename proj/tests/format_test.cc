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

#include "ptesolve/format.h"

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gtest/gtest.h"
#include "ptesolve/epr.h"
#include "ptesolve/rng.h"
#include "ptesolve/solvers.h"
#include "test_support.h"

namespace ptesolve {
namespace {

using testing::DataPath;
using testing::ReadText;

const std::vector<std::string> kCorpus = {
    "games/promise.game.json",
    "games/prisoners_dilemma.game.json",
    "games/newcomb.game.json",
    "games/hofstadter.game.json",
    "games/epr.spacetime.json",
    "tests/data/timelike_chain.spacetime.json",
    "tests/data/spacelike_pair.spacetime.json",
};

GameDocument LoadDoc(const std::string& file) {
  return ParseGameDocument(ReadText(DataPath(file)));
}

FormatError ParseFailure(std::string_view text) {
  try {
    ParseGameDocument(text);
  } catch (const FormatError& e) {
    return e;
  }
  ADD_FAILURE() << "expected FormatError for:\n" << text;
  return FormatError({});
}

GameTree TreeOf(const GameDocument& doc) {
  switch (doc.kind()) {
    case DocumentKind::kExtensive:
      return std::get<GameTree>(doc.body);
    case DocumentKind::kNormal:
      return ToTree(std::get<NormalFormGame>(doc.body));
    case DocumentKind::kSpacetime:
      return Compile(std::get<SpacetimeSpec>(doc.body));
  }
  return {};
}

// ---- Parsing ---------------------------------------------------------------

TEST(ParseTest, PromiseGame) {
  GameDocument doc = LoadDoc("games/promise.game.json");
  EXPECT_EQ(doc.version, 1);
  ASSERT_EQ(doc.kind(), DocumentKind::kExtensive);
  const GameTree& tree = std::get<GameTree>(doc.body);
  EXPECT_EQ(tree.agents(), (std::vector<std::string>{"Peter", "Mary"}));
  EXPECT_EQ(Outcomes(tree).size(), 3u);
  EXPECT_TRUE(tree.IsPerfectInformation());
}

TEST(ParseTest, PrisonersDilemma) {
  GameDocument doc = LoadDoc("games/prisoners_dilemma.game.json");
  ASSERT_EQ(doc.kind(), DocumentKind::kNormal);
  const NormalFormGame& nf = std::get<NormalFormGame>(doc.body);
  EXPECT_EQ(nf.num_agents(), 2);
  EXPECT_EQ(nf.strategies()[0].size(), 2u);
  EXPECT_EQ(nf.strategies()[1].size(), 2u);
  EXPECT_EQ(nf.payoff(std::vector<int>{0, 1}), (PayoffVector{0, 3}));
}

TEST(ParseTest, EprTemplate) {
  GameDocument doc = LoadDoc("games/epr.spacetime.json");
  ASSERT_EQ(doc.kind(), DocumentKind::kSpacetime);
  EXPECT_EQ(std::get<SpacetimeSpec>(doc.body).events.size(), 4u);
}

TEST(ParseTest, EmptyInputIsSyntaxErrorAtOrigin) {
  FormatError e = ParseFailure("");
  EXPECT_EQ(e.kind(), Diagnostic::Kind::kSyntax);
  ASSERT_EQ(e.diagnostics().size(), 1u);
  EXPECT_EQ(e.diagnostics()[0].line, 1);
  EXPECT_EQ(e.diagnostics()[0].column, 1);
}

TEST(ParseTest, SyntaxErrorPosition) {
  FormatError e = ParseFailure(ReadText(DataPath("tests/data/malformed.game.json")));
  EXPECT_EQ(e.kind(), Diagnostic::Kind::kSyntax);
  ASSERT_FALSE(e.diagnostics().empty());
  EXPECT_EQ(e.diagnostics()[0].line, 4);
  EXPECT_NE(e.diagnostics()[0].message.find("expected"), std::string::npos);
}

TEST(ParseTest, UnknownAgentPointer) {
  FormatError e =
      ParseFailure(ReadText(DataPath("tests/data/unknown_agent.game.json")));
  EXPECT_EQ(e.kind(), Diagnostic::Kind::kSemantic);
  ASSERT_FALSE(e.diagnostics().empty());
  EXPECT_EQ(e.diagnostics()[0].pointer, "/nodes/0/agent");
  EXPECT_EQ(e.diagnostics()[0].line, 7);
  EXPECT_NE(e.diagnostics()[0].message.find("unknown agent"),
            std::string::npos);
}

TEST(ParseTest, MenuMismatchPointer) {
  FormatError e =
      ParseFailure(ReadText(DataPath("tests/data/menu_mismatch.game.json")));
  EXPECT_EQ(e.kind(), Diagnostic::Kind::kSemantic);
  ASSERT_FALSE(e.diagnostics().empty());
  EXPECT_EQ(e.diagnostics()[0].pointer, "/infosets/1");
  EXPECT_GT(e.diagnostics()[0].line, 0);
}

TEST(ParseTest, AcausalConditionRejected) {
  FormatError e =
      ParseFailure(ReadText(DataPath("tests/data/acausal.spacetime.json")));
  EXPECT_EQ(e.kind(), Diagnostic::Kind::kSemantic);
  ASSERT_FALSE(e.diagnostics().empty());
  EXPECT_EQ(e.diagnostics()[0].pointer, "/events/1");
}

TEST(ParseTest, DanglingChild) {
  FormatError e = ParseFailure(R"({
  "version": 1, "kind": "extensive", "agents": ["P"], "root": "r",
  "nodes": [{"id": "r", "agent": "P", "actions": {"go": "nowhere"}}]
})");
  EXPECT_EQ(e.kind(), Diagnostic::Kind::kSemantic);
  EXPECT_NE(e.diagnostics()[0].message.find("nowhere"), std::string::npos);
}

TEST(ParseTest, RejectsUnknownKeys) {
  FormatError e = ParseFailure(R"({
  "version": 1, "kind": "normal", "agents": ["P"], "colour": "red",
  "strategies": {"P": ["a"]}, "table": {"a": {"P": 1}}
})");
  EXPECT_EQ(e.diagnostics()[0].line, 2);
  EXPECT_NE(e.diagnostics()[0].message.find("colour"), std::string::npos);
}

TEST(ParseTest, RejectsDuplicateKeys) {
  FormatError e = ParseFailure(R"({"version": 1, "version": 1})");
  EXPECT_NE(e.diagnostics()[0].message.find("duplicate"), std::string::npos);
}

TEST(ParseTest, RejectsNonIntegerPayoffs) {
  FormatError e = ParseFailure(R"({
  "version": 1, "kind": "normal", "agents": ["P"],
  "strategies": {"P": ["a", "b"]},
  "table": {"a": {"P": 1.5}, "b": {"P": 2}}
})");
  EXPECT_EQ(e.diagnostics()[0].pointer, "/table/a/P");
}

TEST(ParseTest, RejectsOtherVersions) {
  FormatError e = ParseFailure(R"({"version": 2, "kind": "normal"})");
  EXPECT_EQ(e.diagnostics()[0].pointer, "/version");
}

TEST(ParseTest, RejectsIncompleteTable) {
  FormatError e = ParseFailure(R"({
  "version": 1, "kind": "normal", "agents": ["P"],
  "strategies": {"P": ["a", "b"]}, "table": {"a": {"P": 1}}
})");
  EXPECT_EQ(e.kind(), Diagnostic::Kind::kSemantic);
}

TEST(ParseTest, DiagnosticToString) {
  Diagnostic d{Diagnostic::Kind::kSemantic, 3, 7, "/nodes/2", "bad"};
  EXPECT_EQ(d.ToString(), "3:7: /nodes/2: bad");
}

// ---- Serialization ---------------------------------------------------------

TEST(SerializeTest, CorpusRoundTrips) {
  for (const std::string& file : kCorpus) {
    SCOPED_TRACE(file);
    GameDocument doc = LoadDoc(file);
    const std::string text = Serialize(doc);
    EXPECT_EQ(ParseGameDocument(text), doc);
    EXPECT_EQ(Serialize(ParseGameDocument(text)), text);
    EXPECT_EQ(text.back(), '\n');
  }
}

TEST(SerializeTest, PromiseOutputIsCanonical) {
  const std::string text = Serialize(LoadDoc("games/promise.game.json"));
  EXPECT_LT(text.find("\"version\""), text.find("\"kind\""));
  EXPECT_LT(text.find("\"kind\""), text.find("\"agents\""));
  EXPECT_LT(text.find("\"keep\""), text.find("\"give\""));
  EXPECT_NE(text.find("\n  \"agents\""), std::string::npos);
}

TEST(SerializeTest, StableAcrossRuns) {
  const std::string text = ReadText(DataPath("games/epr.spacetime.json"));
  const std::size_t first =
      std::hash<std::string>{}(Serialize(ParseGameDocument(text)));
  const std::size_t second =
      std::hash<std::string>{}(Serialize(ParseGameDocument(text)));
  EXPECT_EQ(first, second);
}

TEST(SerializeTest, RationalCoordinatesRoundTrip) {
  SpacetimeSpec spec =
      std::get<SpacetimeSpec>(LoadDoc("tests/data/spacelike_pair.spacetime.json").body);
  spec.events[1].coord.t = Rational(1, 3);
  GameDocument doc{kFormatVersion, spec};
  const std::string text = Serialize(doc);
  EXPECT_NE(text.find("\"1/3\""), std::string::npos);
  EXPECT_EQ(ParseGameDocument(text), doc);
}

TEST(SerializeTest, RandomGamesRoundTrip) {
  SampleRng rng(DeriveSeed(31, 0));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<GameDocument> docs = {
        {kFormatVersion, testing::RandomPerfectInfoTree(rng, 4, 3)},
        {kFormatVersion, testing::RandomNormalForm(rng, 2, 3, 3)},
        {kFormatVersion, testing::RandomSpacetimeSpec(rng)}};
    for (const GameDocument& doc : docs) {
      EXPECT_EQ(ParseGameDocument(Serialize(doc)), doc);
    }
  }
}

// ---- Traces ----------------------------------------------------------------

TEST(TraceDocumentTest, PrisonersDilemmaHasTwoRounds) {
  GameTree tree = TreeOf(LoadDoc("games/prisoners_dilemma.game.json"));
  TraceDocument doc = MakeTraceDocument(tree, SolvePte(tree));
  EXPECT_EQ(doc.rounds.size(), 2u);
  const std::string text = Serialize(doc);
  EXPECT_NE(text.find("\"index\": 2"), std::string::npos);
  EXPECT_EQ(text.find("\"index\": 3"), std::string::npos);
  EXPECT_EQ(ParseTraceDocument(text), doc);
}

TEST(TraceDocumentTest, CorpusRoundTrips) {
  for (const std::string& file : kCorpus) {
    SCOPED_TRACE(file);
    GameTree tree = TreeOf(LoadDoc(file));
    TraceDocument doc = MakeTraceDocument(tree, SolvePte(tree));
    const std::string text = Serialize(doc);
    EXPECT_EQ(ParseTraceDocument(text), doc);
    EXPECT_EQ(Serialize(ParseTraceDocument(text)), text);
  }
}

TEST(TraceDocumentTest, RejectsRoundsOutOfOrder) {
  GameTree tree = TreeOf(LoadDoc("games/prisoners_dilemma.game.json"));
  TraceDocument doc = MakeTraceDocument(tree, SolvePte(tree));
  std::swap(doc.rounds[0], doc.rounds[1]);
  EXPECT_THROW(ParseTraceDocument(Serialize(doc)), FormatError);
}

TEST(TraceDocumentTest, RenderPromise) {
  GameTree tree = TreeOf(LoadDoc("games/promise.game.json"));
  const std::string text = RenderTrace(MakeTraceDocument(tree, SolvePte(tree)));
  EXPECT_NE(text.find("Round 1"), std::string::npos);
  EXPECT_NE(text.find("Round 2"), std::string::npos);
  EXPECT_NE(text.find("(-1,2) unpaid"), std::string::npos);
  EXPECT_NE(text.find("Result: (1,1) paid"), std::string::npos);
  EXPECT_LT(text.find("(-1,2) unpaid"), text.find("(0,0) no-deal"));
}

TEST(TraceDocumentTest, RenderNoSolution) {
  SampleRng rng(DeriveSeed(34, 0));
  NormalFormGame nf;
  do {
    nf = testing::RandomNormalForm(rng, 2, 2, 3);
  } while (!testing::TableEliminate(nf).surviving.empty());
  GameTree tree = ToTree(nf);
  const std::string text = RenderTrace(MakeTraceDocument(tree, SolvePte(tree)));
  EXPECT_NE(text.find("Result: no PTE (0 outcomes survive)"),
            std::string::npos)
      << text;
}

// ---- Fuzzing ---------------------------------------------------------------

// Either a document that round-trips or diagnostics that all carry a
// position. Anything else escaping the parser is a failure.
void CheckFuzzedInput(const std::string& text) {
  try {
    GameDocument doc = ParseGameDocument(text);
    EXPECT_EQ(ParseGameDocument(Serialize(doc)), doc);
  } catch (const FormatError& e) {
    ASSERT_FALSE(e.diagnostics().empty());
    for (const Diagnostic& d : e.diagnostics()) {
      EXPECT_GE(d.line, 1) << text;
      EXPECT_GE(d.column, 1) << text;
      EXPECT_FALSE(d.message.empty());
    }
  }
}

TEST(FuzzTest, NearValidGameInputs) {
  std::vector<std::string> seeds;
  for (const std::string& file : kCorpus) {
    seeds.push_back(ReadText(DataPath(file)));
  }
  SampleRng rng(DeriveSeed(32, 0));
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string& base = seeds[rng.Below(seeds.size())];
    CheckFuzzedInput(testing::MutateText(rng, base));
  }
}

TEST(FuzzTest, NearValidTraceInputs) {
  GameTree tree = TreeOf(LoadDoc("games/epr.spacetime.json"));
  const std::string base = Serialize(MakeTraceDocument(tree, SolvePte(tree)));
  SampleRng rng(DeriveSeed(33, 0));
  for (int trial = 0; trial < 500; ++trial) {
    const std::string text = testing::MutateText(rng, base);
    try {
      TraceDocument doc = ParseTraceDocument(text);
      EXPECT_EQ(ParseTraceDocument(Serialize(doc)), doc);
    } catch (const FormatError& e) {
      for (const Diagnostic& d : e.diagnostics()) EXPECT_GE(d.line, 1);
    }
  }
}

}  // namespace
}  // namespace ptesolve
