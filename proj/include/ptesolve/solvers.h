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

#ifndef PTESOLVE_SOLVERS_H_
#define PTESOLVE_SOLVERS_H_

// Solution concepts over GameTree:
//
//   spe  backward induction on perfect-information trees. Assigns a decision
//        to every node, reached or not.
//   nash every pure strategy profile from which no agent gains by switching
//        its whole strategy, everything else held fixed.
//   pte  iterated elimination of outcomes that an agent who is certain to
//        decide would avoid: while some outcome pays a certain decider less
//        than what the decider can guarantee against the surviving outcomes,
//        that outcome cannot be the solution. On perfect-information trees
//        this is the perfect prediction equilibrium.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptesolve/model.h"

namespace ptesolve {

enum class Concept { kSpe, kNash, kPte };

std::string_view ToString(Concept c);
std::optional<Concept> ParseConcept(std::string_view text);

class SolveError : public GameError {
 public:
  enum class Kind { kInvalidGame, kImperfectInformation, kTie, kTooLarge };

  SolveError(Kind kind, const std::string& message)
      : GameError(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ActionGuarantee {
  int action = -1;
  Payoff minimum = 0;

  bool operator==(const ActionGuarantee&) const = default;
};

// Owner's worst case per action over the surviving outcomes through the
// infoset. Actions with no surviving outcome are left out.
struct Guarantee {
  InfosetIndex infoset = kNoInfoset;
  std::vector<ActionGuarantee> per_action;
  Payoff maximin = 0;
  std::vector<int> best_actions;

  bool operator==(const Guarantee&) const = default;
};

struct EliminationReason {
  InfosetIndex infoset = kNoInfoset;
  Payoff payoff = 0;   // owner's payoff at the eliminated outcome
  Payoff maximin = 0;  // what the owner could guarantee instead

  bool operator==(const EliminationReason&) const = default;
};

struct Elimination {
  OutcomeIndex outcome = -1;
  std::vector<EliminationReason> reasons;

  bool operator==(const Elimination&) const = default;
};

struct EliminationRound {
  int index = 0;
  std::vector<InfosetIndex> certain;
  std::vector<Guarantee> guarantees;
  std::vector<Elimination> eliminated;

  bool operator==(const EliminationRound&) const = default;
};

struct PinnedDecision {
  InfosetIndex infoset = kNoInfoset;
  int action = -1;

  bool operator==(const PinnedDecision&) const = default;
};

// Only rounds that eliminate something are recorded.
struct EliminationTrace {
  std::vector<EliminationRound> rounds;
  std::vector<OutcomeIndex> surviving;
  std::vector<PinnedDecision> pinned;
  std::vector<InfosetIndex> undefined;

  bool operator==(const EliminationTrace&) const = default;
};

struct SolveResult {
  Concept solution_concept = Concept::kPte;
  // Every outcome of the tree, depth-first; indices below refer to it.
  std::vector<Outcome> all_outcomes;
  // spe: the induced outcome. nash: one entry per equilibrium profile.
  // pte: the surviving outcomes (exactly one when the PTE exists).
  std::vector<OutcomeIndex> outcomes;
  // spe and nash only, parallel to `outcomes`.
  std::vector<StrategyProfile> profiles;
  std::optional<EliminationTrace> trace;

  bool HasEquilibrium() const;
};

enum class Execution { kSerial, kParallel };

// Within one round, kSimultaneous lets every certain infoset eliminate
// against the same surviving set. kSequential processes certain infosets in
// index order, each against what the previous ones left.
enum class EliminationOrder { kSimultaneous, kSequential };

struct PteOptions {
  EliminationOrder order = EliminationOrder::kSimultaneous;
};

// Throws SolveError: kImperfectInformation, kTie.
SolveResult SolveSpe(const GameTree& tree);

// General position not required. Throws SolveError::kTooLarge past
// kMaxNashProfiles profiles.
inline constexpr std::uint64_t kMaxNashProfiles = std::uint64_t{1} << 24;
SolveResult EnumerateNash(const GameTree& tree,
                          Execution execution = Execution::kSerial);

// Infosets crossed by every outcome in `surviving`.
std::vector<InfosetIndex> CertainInfosets(const GameTree& tree,
                                          std::span<const Outcome> surviving);

// Throws GameError if no action of `infoset` has a surviving outcome.
Guarantee MaximinGuarantee(const GameTree& tree, InfosetIndex infoset,
                           std::span<const Outcome> surviving);

// Throws SolveError::kTie listing colliding outcomes when the game is not in
// general position.
SolveResult SolvePte(const GameTree& tree, const PteOptions& options = {});

// PTE of the sequential tree built in agent declaration order.
SolveResult PteNormal(const NormalFormGame& nf, const PteOptions& options = {});

}  // namespace ptesolve

#endif  // PTESOLVE_SOLVERS_H_
