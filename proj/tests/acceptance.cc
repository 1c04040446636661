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

// Acceptance checks AC1 to AC10. Prints one PASS or FAIL line per check and
// exits non-zero if any check fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ptesolve/epr.h"
#include "ptesolve/format.h"
#include "ptesolve/model.h"
#include "ptesolve/rng.h"
#include "ptesolve/solvers.h"
#include "ptesolve/spacetime.h"
#include "test_support.h"

namespace ptesolve {
namespace {

using testing::DataPath;
using testing::ReadText;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail.str("");
      detail << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

GameDocument LoadDoc(const std::string& file) {
  return ParseGameDocument(ReadText(DataPath(file)));
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

PayoffVector Only(const SolveResult& r) {
  return r.outcomes.size() == 1 ? r.all_outcomes[r.outcomes[0]].payoffs
                                : PayoffVector{};
}

std::vector<PayoffVector> EliminatedPayoffs(const SolveResult& r, int round) {
  std::vector<PayoffVector> out;
  for (const Elimination& e : r.trace->rounds[round].eliminated) {
    out.push_back(r.all_outcomes[e.outcome].payoffs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::multiset<PayoffVector> PayoffSet(const SolveResult& r) {
  std::multiset<PayoffVector> out;
  for (OutcomeIndex o : r.outcomes) out.insert(r.all_outcomes[o].payoffs);
  return out;
}

double ProfileCount(const GameTree& tree) {
  double count = 1;
  for (const InformationSet& i : tree.infosets()) count *= i.menu.size();
  return count;
}

std::set<testing::LabelProfile> NashLabels(const GameTree& tree,
                                           const SolveResult& r) {
  std::set<testing::LabelProfile> out;
  for (const StrategyProfile& p : r.profiles) {
    testing::LabelProfile labels;
    for (InfosetIndex i = 0; i < tree.num_infosets(); ++i) {
      labels[tree.infoset(i).id] = tree.infoset(i).menu[p[i]];
    }
    out.insert(labels);
  }
  return out;
}

// Games with at most 64 profiles, collected from the AC5 and AC6 suites.
std::vector<GameTree> small_games;

void Ac1(Check& c) {
  const auto start = Clock::now();
  GameTree tree = TreeOf(LoadDoc("games/promise.game.json"));
  SolveResult spe = SolveSpe(tree);
  SolveResult pte = SolvePte(tree);
  const double ms = MillisSince(start);
  c.Require(Only(spe) == PayoffVector{0, 0}, "SPE is not (0,0)");
  c.Require(Only(pte) == PayoffVector{1, 1}, "PTE is not (1,1)");
  c.Require(pte.trace->rounds.size() == 2, "trace does not have 2 rounds");
  if (c.pass) {
    c.Require(EliminatedPayoffs(pte, 0) == std::vector<PayoffVector>{{-1, 2}},
              "round 1 does not eliminate (-1,2)");
    c.Require(EliminatedPayoffs(pte, 1) == std::vector<PayoffVector>{{0, 0}},
              "round 2 does not eliminate (0,0)");
  }
  c.Require(ms < 10, "took " + std::to_string(ms) + " ms");
  if (c.pass) {
    c.detail << "SPE (0,0), PTE (1,1), rounds eliminate (-1,2) then (0,0); "
             << ms << " ms";
  }
}

void Ac2(Check& c) {
  const auto start = Clock::now();
  GameTree tree = TreeOf(LoadDoc("games/prisoners_dilemma.game.json"));
  SolveResult nash = EnumerateNash(tree);
  SolveResult pte = SolvePte(tree);
  const double ms = MillisSince(start);
  c.Require(nash.outcomes.size() == 1 &&
                nash.all_outcomes[nash.outcomes[0]].id == "defect/defect" &&
                Only(nash) == PayoffVector{1, 1},
            "Nash is not exactly (defect, defect) with (1,1)");
  c.Require(Only(pte) == PayoffVector{2, 2}, "PTE is not (2,2)");
  c.Require(!pte.trace->rounds.empty() &&
                EliminatedPayoffs(pte, 0) ==
                    std::vector<PayoffVector>{{0, 3}, {3, 0}},
            "round 1 does not eliminate exactly (0,3) and (3,0)");
  c.Require(ms < 10, "took " + std::to_string(ms) + " ms");
  if (c.pass) {
    c.detail << "Nash (defect,defect) (1,1); PTE (2,2), round 1 eliminates "
                "(0,3) and (3,0); "
             << ms << " ms";
  }
}

void Ac3(Check& c) {
  GameTree tree = TreeOf(LoadDoc("games/newcomb.game.json"));
  SolveResult pte = SolvePte(tree);
  // Both infosets span the tree, so elimination reduces to the 4-cell table.
  std::vector<std::string> predictor = tree.infoset(0).menu;
  std::vector<std::string> agent = tree.infoset(1).menu;
  std::vector<PayoffVector> table;
  for (const std::string& p : predictor) {
    for (const std::string& a : agent) {
      table.push_back(testing::PlayProfile(
          tree, {{tree.infoset(0).id, p}, {tree.infoset(1).id, a}}));
    }
  }
  NormalFormGame nf(tree.agents(), {predictor, agent}, table);
  testing::TableElimination oracle = testing::TableEliminate(nf);
  c.Require(oracle.surviving.size() == 1, "oracle finds no unique survivor");
  if (!c.pass) return;
  const std::vector<int> choice = nf.ProfileChoice(*oracle.surviving.begin());
  c.Require(Only(pte) == table[*oracle.surviving.begin()],
            "engine and oracle disagree");
  c.Require(predictor[choice[0]] == "predict-one-box" &&
                agent[choice[1]] == "take-one-box",
            "solution is not (predict-one-box, take-one-box)");
  c.Require(pte.trace->rounds.size() == oracle.rounds.size(),
            "round counts differ from oracle");
  if (c.pass) {
    c.detail << "PTE (predict-one-box, take-one-box) "
             << FormatPayoffs(Only(pte)) << ", matches table oracle in "
             << oracle.rounds.size() << " rounds";
  }
}

void Ac4(Check& c) {
  GameDocument doc = LoadDoc("games/epr.spacetime.json");
  const SpacetimeSpec& spec = std::get<SpacetimeSpec>(doc.body);
  GameTree tree = Compile(spec);
  const std::size_t leaves = Outcomes(tree).size();
  c.Require(tree.num_infosets() == 6, "infoset count is " +
                                          std::to_string(tree.num_infosets()));
  c.Require(leaves == 16, "leaf count is " + std::to_string(leaves));
  std::map<std::string, EventCoord> at;
  for (const DecisionEvent& e : spec.events) at[e.id] = e.coord;
  c.Require(Classify(at["A"], at["U"]) == CausalRelation::kTimelike,
            "A-U not timelike");
  c.Require(Classify(at["A"], at["V"]) == CausalRelation::kSpacelike,
            "A-V not spacelike");
  c.Require(Classify(at["A"], at["B"]) == CausalRelation::kSpacelike,
            "A-B not spacelike");
  if (c.pass) {
    c.detail << "6 infosets, 16 leaves; A-U timelike, A-V and A-B spacelike";
  }
}

void Ac5(Check& c) {
  const auto start = Clock::now();
  SampleRng rng(DeriveSeed(2026, 5));
  constexpr int kTrees = 1000;
  int violations = 0;
  for (int t = 0; t < kTrees; ++t) {
    GameTree tree = testing::RandomPerfectInfoTree(rng, 5, 4);
    SolveResult r = SolvePte(tree);
    if (r.outcomes.size() != 1 ||
        testing::StrictlyDominated(r.all_outcomes, Only(r))) {
      ++violations;
    }
    if (ProfileCount(tree) <= 64) small_games.push_back(tree);
  }
  const double ms = MillisSince(start);
  c.Require(violations == 0, std::to_string(violations) + " violations");
  c.Require(ms < 60000, "took " + std::to_string(ms) + " ms");
  if (c.pass) {
    c.detail << kTrees << " trees, unique and Pareto-undominated, 0 violations; "
             << ms << " ms";
  }
}

void Ac6(Check& c) {
  const auto start = Clock::now();
  SampleRng rng(DeriveSeed(2026, 6));
  constexpr int kGames = 1000;
  int mismatches = 0, dominated = 0, exists = 0, none = 0, multiple = 0;
  for (int g = 0; g < kGames; ++g) {
    NormalFormGame nf = testing::RandomNormalForm(rng, 2, 4, 4);
    SolveResult r = PteNormal(nf);
    testing::TableElimination oracle = testing::TableEliminate(nf);
    std::set<std::string> got, want;
    for (OutcomeIndex o : r.outcomes) got.insert(r.all_outcomes[o].id);
    for (std::size_t p : oracle.surviving) {
      want.insert(nf.ProfileKey(nf.ProfileChoice(p)));
    }
    if (got != want || r.trace->rounds.size() != oracle.rounds.size()) {
      ++mismatches;
    }
    if (r.outcomes.size() == 1) {
      ++exists;
      if (testing::StrictlyDominated(r.all_outcomes, Only(r))) ++dominated;
    } else {
      ++none;
      if (r.outcomes.size() > 1) ++multiple;
    }
    if (nf.num_profiles() <= 64) small_games.push_back(ToTree(nf));
  }
  const double ms = MillisSince(start);
  c.Require(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
  c.Require(multiple == 0, std::to_string(multiple) + " games with 2+ survivors");
  c.Require(dominated == 0, std::to_string(dominated) + " dominated solutions");
  c.Require(ms < 120000, "took " + std::to_string(ms) + " ms");
  if (c.pass) {
    c.detail << kGames << " games: " << exists << " with PTE, " << none
             << " without; 0 mismatches; " << ms << " ms";
  }
}

void Ac7(Check& c) {
  int mismatches = 0;
  for (const GameTree& tree : small_games) {
    std::set<testing::LabelProfile> want;
    for (const testing::LabelProfile& p : testing::BruteForceNash(tree)) {
      want.insert(p);
    }
    if (NashLabels(tree, EnumerateNash(tree, Execution::kSerial)) != want ||
        NashLabels(tree, EnumerateNash(tree, Execution::kParallel)) != want) {
      ++mismatches;
    }
  }
  c.Require(small_games.size() >= 100,
            "only " + std::to_string(small_games.size()) + " small games");
  c.Require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  if (c.pass) {
    c.detail << small_games.size()
             << " games with <= 64 profiles, serial and parallel, 0 mismatches";
  }
}

void Ac8(Check& c) {
  SampleRng rng(DeriveSeed(2026, 8));
  // Nash enumeration is exhaustive, so it is compared only on specs whose
  // compiled game has at most 2^16 profiles. Drawing continues until 200
  // specs have been compared under all three solvers.
  constexpr int kSpecs = 200;
  constexpr double kNashLimit = 65536;
  int full = 0, partial = 0, violations = 0;
  auto spe_payoffs = [](const GameTree& tree) -> std::string {
    try {
      return FormatPayoffs(Only(SolveSpe(tree)));
    } catch (const SolveError& e) {
      return "error " + std::to_string(static_cast<int>(e.kind()));
    }
  };
  while (full < kSpecs) {
    SpacetimeSpec spec = testing::RandomSpacetimeSpec(rng);
    SpacetimeSpec relabeled = testing::RelabelEqualTimeEvents(spec, rng);
    GameTree a = Compile(spec);
    GameTree b = Compile(relabeled);
    bool same = PayoffSet(SolvePte(a)) == PayoffSet(SolvePte(b)) &&
                spe_payoffs(a) == spe_payoffs(b);
    if (ProfileCount(a) <= kNashLimit) {
      same = same && PayoffSet(EnumerateNash(a)) == PayoffSet(EnumerateNash(b));
      ++full;
    } else {
      ++partial;
    }
    if (!same) ++violations;
  }
  c.Require(violations == 0, std::to_string(violations) + " violations");
  if (c.pass) {
    c.detail << full << " specs with PTE, Nash and SPE payoffs unchanged; "
             << partial << " larger specs with PTE and SPE unchanged";
  }
}

void Ac9(Check& c) {
  const auto start = Clock::now();
  UtilityModel model = UtilityModel::Uniform(false);
  EnsembleReport first = SampleEnsemble(1000, 2019, model);
  EnsembleReport second = SampleEnsemble(1000, 2019, model);
  EnsembleReport serial =
      SampleEnsemble(1000, 2019, model, {Execution::kSerial, 0});
  const std::string text = SerializeReport(first);
  c.Require(text == SerializeReport(second), "two runs differ");
  c.Require(text == SerializeReport(serial), "serial and parallel differ");
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      if (first.PairCount(ia, ib) == 0) continue;
      Rational sum = 0;
      for (int ux = 0; ux < 2; ++ux) {
        for (int vy = 0; vy < 2; ++vy) {
          sum += *first.Conditional({ia, ib, ux, vy});
        }
      }
      c.Require(sum == 1, "conditional for " + AxisPairName(ia, ib) +
                              " sums to " + sum.str());
    }
  }
  ChshResult pr = Chsh(
      ParseReport(ReadText(DataPath("tests/data/pr_box.report.json"))),
      kDefaultSigns);
  ChshResult equal = Chsh(
      ParseReport(ReadText(DataPath("tests/data/all_equal.report.json"))),
      kDefaultSigns);
  c.Require(pr.s && *pr.s == 4, "PR box S is not 4");
  c.Require(equal.s && *equal.s == 2, "all-equal S is not 2");
  const double ms = MillisSince(start);
  c.Require(ms < 60000, "took " + std::to_string(ms) + " ms");
  if (c.pass) {
    c.detail << "n=1000 byte-identical across runs and serial/parallel; "
                "conditionals sum to 1; PR box S=4, all-equal S=2; "
             << ms << " ms";
  }
}

void Ac10(Check& c) {
  const std::vector<std::string> corpus = {
      "games/promise.game.json",          "games/prisoners_dilemma.game.json",
      "games/newcomb.game.json",          "games/hofstadter.game.json",
      "games/epr.spacetime.json",
      "tests/data/timelike_chain.spacetime.json",
      "tests/data/spacelike_pair.spacetime.json"};
  std::vector<std::string> texts;
  for (const std::string& file : corpus) {
    texts.push_back(ReadText(DataPath(file)));
    GameDocument doc = ParseGameDocument(texts.back());
    const std::string canonical = Serialize(doc);
    c.Require(ParseGameDocument(canonical) == doc &&
                  Serialize(ParseGameDocument(canonical)) == canonical,
              file + " does not round-trip");
  }
  SampleRng rng(DeriveSeed(2026, 10));
  constexpr int kInputs = 10000;
  int accepted = 0, rejected = 0;
  for (int i = 0; i < kInputs && c.pass; ++i) {
    const std::string text =
        testing::MutateText(rng, texts[rng.Below(texts.size())]);
    try {
      GameDocument doc = ParseGameDocument(text);
      c.Require(ParseGameDocument(Serialize(doc)) == doc,
                "fuzzed input " + std::to_string(i) + " does not round-trip");
      ++accepted;
    } catch (const FormatError& e) {
      ++rejected;
      c.Require(!e.diagnostics().empty(), "error without diagnostics");
      for (const Diagnostic& d : e.diagnostics()) {
        c.Require(d.line >= 1 && d.column >= 1,
                  "diagnostic without position: " + d.message);
      }
    } catch (const std::exception& e) {
      c.Require(false, "fuzzed input " + std::to_string(i) +
                           " escaped the parser: " + e.what());
    }
  }
  if (c.pass) {
    c.detail << corpus.size() << " corpus files round-trip; " << kInputs
             << " fuzzed inputs: " << accepted << " accepted, " << rejected
             << " rejected with positioned diagnostics";
  }
}

int Main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>>
      checks = {{"AC1", Ac1}, {"AC2", Ac2}, {"AC3", Ac3}, {"AC4", Ac4},
                {"AC5", Ac5}, {"AC6", Ac6}, {"AC7", Ac7}, {"AC8", Ac8},
                {"AC9", Ac9}, {"AC10", Ac10}};
  int failures = 0;
  for (const auto& [name, run] : checks) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail.str("");
      c.detail << "exception: " << e.what();
    }
    if (!c.pass) ++failures;
    std::printf("%s %s %s\n", name.c_str(), c.pass ? "PASS" : "FAIL",
                c.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace ptesolve

int main() { return ptesolve::Main(); }
