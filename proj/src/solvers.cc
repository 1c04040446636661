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

#include "ptesolve/solvers.h"

#include <algorithm>
#include <limits>

#include "solver_internal.h"

namespace ptesolve {

std::string_view ToString(Concept c) {
  switch (c) {
    case Concept::kSpe:
      return "spe";
    case Concept::kNash:
      return "nash";
    case Concept::kPte:
      return "pte";
  }
  return "?";
}

std::optional<Concept> ParseConcept(std::string_view text) {
  if (text == "spe") return Concept::kSpe;
  if (text == "nash") return Concept::kNash;
  if (text == "pte") return Concept::kPte;
  return std::nullopt;
}

bool SolveResult::HasEquilibrium() const {
  if (solution_concept == Concept::kPte) return outcomes.size() == 1;
  return !outcomes.empty();
}

namespace internal {

std::vector<Outcome> CheckedOutcomes(const GameTree& tree) {
  try {
    return Outcomes(tree);
  } catch (const GameError& e) {
    throw SolveError(SolveError::Kind::kInvalidGame, e.what());
  }
}

std::vector<int> CrossingMatrix(const GameTree& tree,
                                const std::vector<Outcome>& outcomes) {
  const int num_infosets = tree.num_infosets();
  std::vector<int> cross(outcomes.size() * num_infosets, -1);
  for (const Outcome& o : outcomes) {
    for (const PathStep& step : o.path) {
      cross[o.index * num_infosets + tree.node(step.node).infoset] =
          step.action;
    }
  }
  return cross;
}

}  // namespace internal

namespace {

void RequireGeneralPosition(const GameTree& tree,
                            const std::vector<Outcome>& outcomes) {
  auto collisions = GeneralPositionCheck(tree);
  std::string msg;
  for (AgentIndex a = 0; a < tree.num_agents(); ++a) {
    for (const PayoffCollision& c : collisions[a]) {
      msg += "\n  " + tree.agents()[a] + " ranks '" +
             outcomes[c.first].id + "' and '" + outcomes[c.second].id +
             "' equally (" + std::to_string(c.value) + ")";
    }
  }
  if (!msg.empty()) {
    throw SolveError(SolveError::Kind::kTie,
                     "game is not in general position:" + msg);
  }
}

}  // namespace

SolveResult SolveSpe(const GameTree& tree) {
  std::vector<Outcome> outcomes = internal::CheckedOutcomes(tree);
  if (!tree.IsPerfectInformation()) {
    throw SolveError(SolveError::Kind::kImperfectInformation,
                     "backward induction needs perfect information; "
                     "the game has a non-singleton information set");
  }
  std::vector<OutcomeIndex> outcome_of_leaf(tree.num_nodes(), -1);
  for (const Outcome& o : outcomes) outcome_of_leaf[o.leaf] = o.index;

  StrategyProfile profile(tree.num_infosets(), -1);
  // Post-order over the tree; value[n] is the outcome reached from n.
  std::vector<OutcomeIndex> value(tree.num_nodes(), -1);
  std::vector<std::pair<NodeIndex, bool>> stack = {{tree.root(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    const Node& node = tree.node(n);
    if (node.is_leaf) {
      value[n] = outcome_of_leaf[n];
      continue;
    }
    if (!expanded) {
      stack.push_back({n, true});
      for (NodeIndex c : node.children) stack.push_back({c, false});
      continue;
    }
    int best = 0;
    for (int a = 1; a < static_cast<int>(node.children.size()); ++a) {
      Payoff candidate = outcomes[value[node.children[a]]].payoffs[node.agent];
      Payoff incumbent =
          outcomes[value[node.children[best]]].payoffs[node.agent];
      if (candidate == incumbent) {
        throw SolveError(
            SolveError::Kind::kTie,
            "tie at node '" + node.id + "': actions '" + node.actions[best] +
                "' and '" + node.actions[a] + "' both give " +
                tree.agents()[node.agent] + " " + std::to_string(candidate));
      }
      if (candidate > incumbent) best = a;
    }
    profile[node.infoset] = best;
    value[n] = value[node.children[best]];
  }

  SolveResult result;
  result.solution_concept = Concept::kSpe;
  result.outcomes = {value[tree.root()]};
  result.profiles = {std::move(profile)};
  result.all_outcomes = std::move(outcomes);
  return result;
}

std::vector<InfosetIndex> CertainInfosets(const GameTree& tree,
                                          std::span<const Outcome> surviving) {
  std::vector<InfosetIndex> out;
  for (InfosetIndex i = 0; i < tree.num_infosets(); ++i) {
    bool certain = std::all_of(
        surviving.begin(), surviving.end(),
        [&](const Outcome& o) { return ActionAt(tree, o, i) != -1; });
    if (certain) out.push_back(i);
  }
  return out;
}

Guarantee MaximinGuarantee(const GameTree& tree, InfosetIndex infoset,
                           std::span<const Outcome> surviving) {
  const InformationSet& set = tree.infoset(infoset);
  Guarantee g;
  g.infoset = infoset;
  g.maximin = std::numeric_limits<Payoff>::min();
  for (int a = 0; a < static_cast<int>(set.menu.size()); ++a) {
    std::vector<Outcome> through = OutcomesThrough(tree, infoset, a, surviving);
    if (through.empty()) continue;
    Payoff worst = std::numeric_limits<Payoff>::max();
    for (const Outcome& o : through) {
      worst = std::min(worst, o.payoffs[set.owner]);
    }
    g.per_action.push_back({a, worst});
    if (worst > g.maximin) {
      g.maximin = worst;
      g.best_actions = {a};
    } else if (worst == g.maximin) {
      g.best_actions.push_back(a);
    }
  }
  if (g.per_action.empty()) {
    throw GameError("infoset '" + set.id +
                    "' is not crossed by any surviving outcome");
  }
  return g;
}

namespace {

// The elimination engine works on a dense outcome x infoset crossing matrix
// and an alive mask rather than on Outcome copies.
class Eliminator {
 public:
  Eliminator(const GameTree& tree, const std::vector<Outcome>& outcomes)
      : tree_(tree),
        outcomes_(outcomes),
        num_infosets_(tree.num_infosets()),
        cross_(internal::CrossingMatrix(tree, outcomes)),
        alive_(outcomes.size(), true),
        num_alive_(static_cast<int>(outcomes.size())) {}

  int num_alive() const { return num_alive_; }

  int Crossing(OutcomeIndex o, InfosetIndex i) const {
    return cross_[o * num_infosets_ + i];
  }

  std::vector<InfosetIndex> Certain() const {
    std::vector<InfosetIndex> out;
    if (num_alive_ == 0) return out;
    for (InfosetIndex i = 0; i < num_infosets_; ++i) {
      bool certain = true;
      for (OutcomeIndex o = 0; certain && o < Size(); ++o) {
        certain = !alive_[o] || Crossing(o, i) != -1;
      }
      if (certain) out.push_back(i);
    }
    return out;
  }

  Guarantee Compute(InfosetIndex i) const {
    const InformationSet& set = tree_.infoset(i);
    const int menu = static_cast<int>(set.menu.size());
    std::vector<Payoff> worst(menu, std::numeric_limits<Payoff>::max());
    std::vector<bool> supported(menu, false);
    for (OutcomeIndex o = 0; o < Size(); ++o) {
      if (!alive_[o]) continue;
      int a = Crossing(o, i);
      if (a < 0) continue;
      supported[a] = true;
      worst[a] = std::min(worst[a], outcomes_[o].payoffs[set.owner]);
    }
    Guarantee g;
    g.infoset = i;
    g.maximin = std::numeric_limits<Payoff>::min();
    for (int a = 0; a < menu; ++a) {
      if (!supported[a]) continue;
      g.per_action.push_back({a, worst[a]});
      if (worst[a] > g.maximin) {
        g.maximin = worst[a];
        g.best_actions = {a};
      } else if (worst[a] == g.maximin) {
        g.best_actions.push_back(a);
      }
    }
    return g;
  }

  // Appends to `hits` every alive outcome crossing `g.infoset` that pays the
  // owner less than the guarantee.
  void Collect(const Guarantee& g,
               std::vector<std::vector<EliminationReason>>& hits) const {
    const AgentIndex owner = tree_.infoset(g.infoset).owner;
    for (OutcomeIndex o = 0; o < Size(); ++o) {
      if (!alive_[o] || Crossing(o, g.infoset) < 0) continue;
      Payoff p = outcomes_[o].payoffs[owner];
      if (p < g.maximin) hits[o].push_back({g.infoset, p, g.maximin});
    }
  }

  void Apply(const std::vector<std::vector<EliminationReason>>& hits,
             std::vector<Elimination>& log) {
    for (OutcomeIndex o = 0; o < Size(); ++o) {
      if (hits[o].empty() || !alive_[o]) continue;
      alive_[o] = false;
      --num_alive_;
      log.push_back({o, hits[o]});
    }
  }

  std::vector<OutcomeIndex> Alive() const {
    std::vector<OutcomeIndex> out;
    for (OutcomeIndex o = 0; o < Size(); ++o) {
      if (alive_[o]) out.push_back(o);
    }
    return out;
  }

 private:
  OutcomeIndex Size() const { return static_cast<OutcomeIndex>(alive_.size()); }

  const GameTree& tree_;
  const std::vector<Outcome>& outcomes_;
  const int num_infosets_;
  std::vector<int> cross_;
  std::vector<bool> alive_;
  int num_alive_;
};

}  // namespace

SolveResult SolvePte(const GameTree& tree, const PteOptions& options) {
  std::vector<Outcome> outcomes = internal::CheckedOutcomes(tree);
  RequireGeneralPosition(tree, outcomes);

  Eliminator engine(tree, outcomes);
  EliminationTrace trace;
  while (engine.num_alive() > 0) {
    EliminationRound round;
    round.index = static_cast<int>(trace.rounds.size()) + 1;
    round.certain = engine.Certain();
    std::vector<std::vector<EliminationReason>> hits(outcomes.size());
    if (options.order == EliminationOrder::kSimultaneous) {
      for (InfosetIndex i : round.certain) {
        round.guarantees.push_back(engine.Compute(i));
      }
      for (const Guarantee& g : round.guarantees) engine.Collect(g, hits);
      engine.Apply(hits, round.eliminated);
    } else {
      for (InfosetIndex i : round.certain) {
        if (engine.num_alive() == 0) break;
        round.guarantees.push_back(engine.Compute(i));
        for (auto& h : hits) h.clear();
        engine.Collect(round.guarantees.back(), hits);
        engine.Apply(hits, round.eliminated);
      }
      std::sort(round.eliminated.begin(), round.eliminated.end(),
                [](const Elimination& l, const Elimination& r) {
                  return l.outcome < r.outcome;
                });
    }
    if (round.eliminated.empty()) break;
    trace.rounds.push_back(std::move(round));
  }

  trace.surviving = engine.Alive();
  std::vector<bool> pinned(tree.num_infosets(), false);
  for (InfosetIndex i : engine.Certain()) {
    int action = -1;
    bool unique = true;
    for (OutcomeIndex o : trace.surviving) {
      int a = engine.Crossing(o, i);
      if (action == -1) {
        action = a;
      } else if (a != action) {
        unique = false;
      }
    }
    if (unique && action >= 0) {
      trace.pinned.push_back({i, action});
      pinned[i] = true;
    }
  }
  for (InfosetIndex i = 0; i < tree.num_infosets(); ++i) {
    if (!pinned[i]) trace.undefined.push_back(i);
  }

  SolveResult result;
  result.solution_concept = Concept::kPte;
  result.outcomes = trace.surviving;
  result.trace = std::move(trace);
  result.all_outcomes = std::move(outcomes);
  return result;
}

SolveResult PteNormal(const NormalFormGame& nf, const PteOptions& options) {
  return SolvePte(ToTree(nf), options);
}

}  // namespace ptesolve
