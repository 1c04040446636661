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

// Pure Nash enumeration. The serial path plays every profile out from the
// root and tries every whole-strategy deviation directly; it is the
// reference. The parallel path tabulates the realized outcome of every
// profile once (OpenMP over profiles) and answers deviations by mixed-radix
// index arithmetic into that table.

#include <cstdint>
#include <vector>

#include "ptesolve/solvers.h"
#include "solver_internal.h"

namespace ptesolve {
namespace {

struct ProfileSpace {
  std::vector<std::uint64_t> radix;   // menu size per infoset
  std::vector<std::uint64_t> stride;  // last infoset varies fastest
  std::uint64_t size = 1;
  std::vector<std::vector<InfosetIndex>> owned;  // per agent
};

ProfileSpace MakeSpace(const GameTree& tree) {
  ProfileSpace space;
  const int n = tree.num_infosets();
  space.radix.resize(n);
  space.stride.resize(n);
  space.owned.resize(tree.num_agents());
  for (InfosetIndex i = n; i-- > 0;) {
    space.radix[i] = tree.infoset(i).menu.size();
    space.stride[i] = space.size;
    if (space.radix[i] != 0 && space.size > kMaxNashProfiles / space.radix[i]) {
      throw SolveError(SolveError::Kind::kTooLarge,
                       "more than " + std::to_string(kMaxNashProfiles) +
                           " strategy profiles");
    }
    space.size *= space.radix[i];
  }
  for (InfosetIndex i = 0; i < n; ++i) {
    space.owned[tree.infoset(i).owner].push_back(i);
  }
  return space;
}

void Decode(const ProfileSpace& space, std::uint64_t index,
            StrategyProfile& out) {
  for (std::size_t i = 0; i < space.radix.size(); ++i) {
    out[i] = static_cast<int>((index / space.stride[i]) % space.radix[i]);
  }
}

NodeIndex Play(const GameTree& tree, const StrategyProfile& profile) {
  NodeIndex n = tree.root();
  while (!tree.node(n).is_leaf) {
    const Node& node = tree.node(n);
    n = node.children[profile[node.infoset]];
  }
  return n;
}

// Advances the digits of `infosets` in `profile` like an odometer; false
// once every combination has been visited.
bool NextCombination(const GameTree& tree,
                     const std::vector<InfosetIndex>& infosets,
                     StrategyProfile& profile) {
  for (std::size_t k = infosets.size(); k-- > 0;) {
    InfosetIndex i = infosets[k];
    if (++profile[i] < static_cast<int>(tree.infoset(i).menu.size())) {
      return true;
    }
    profile[i] = 0;
  }
  return false;
}

bool IsNashSerial(const GameTree& tree, const ProfileSpace& space,
                  const StrategyProfile& profile) {
  const NodeIndex realized = Play(tree, profile);
  for (AgentIndex agent = 0; agent < tree.num_agents(); ++agent) {
    const auto& mine = space.owned[agent];
    if (mine.empty()) continue;
    const Payoff current = tree.node(realized).payoffs[agent];
    StrategyProfile deviation = profile;
    for (InfosetIndex i : mine) deviation[i] = 0;
    do {
      if (tree.node(Play(tree, deviation)).payoffs[agent] > current) {
        return false;
      }
    } while (NextCombination(tree, mine, deviation));
  }
  return true;
}

}  // namespace

SolveResult EnumerateNash(const GameTree& tree, Execution execution) {
  std::vector<Outcome> outcomes = internal::CheckedOutcomes(tree);
  std::vector<OutcomeIndex> outcome_of_leaf(tree.num_nodes(), -1);
  for (const Outcome& o : outcomes) outcome_of_leaf[o.leaf] = o.index;
  const ProfileSpace space = MakeSpace(tree);
  const std::int64_t total = static_cast<std::int64_t>(space.size);

  SolveResult result;
  result.solution_concept = Concept::kNash;

  if (execution == Execution::kSerial) {
    StrategyProfile profile(tree.num_infosets(), 0);
    for (std::int64_t p = 0; p < total; ++p) {
      Decode(space, static_cast<std::uint64_t>(p), profile);
      if (IsNashSerial(tree, space, profile)) {
        result.outcomes.push_back(outcome_of_leaf[Play(tree, profile)]);
        result.profiles.push_back(profile);
      }
    }
    result.all_outcomes = std::move(outcomes);
    return result;
  }

  std::vector<OutcomeIndex> realized(space.size);
#pragma omp parallel
  {
    StrategyProfile profile(tree.num_infosets(), 0);
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < total; ++p) {
      Decode(space, static_cast<std::uint64_t>(p), profile);
      realized[p] = outcome_of_leaf[Play(tree, profile)];
    }
  }

  std::vector<char> is_nash(space.size, 0);
#pragma omp parallel
  {
    StrategyProfile profile(tree.num_infosets(), 0);
    StrategyProfile deviation(tree.num_infosets(), 0);
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t p = 0; p < total; ++p) {
      Decode(space, static_cast<std::uint64_t>(p), profile);
      bool stable = true;
      for (AgentIndex agent = 0; stable && agent < tree.num_agents();
           ++agent) {
        const auto& mine = space.owned[agent];
        if (mine.empty()) continue;
        const Payoff current = outcomes[realized[p]].payoffs[agent];
        std::uint64_t base = static_cast<std::uint64_t>(p);
        for (InfosetIndex i : mine) {
          base -= static_cast<std::uint64_t>(profile[i]) * space.stride[i];
        }
        deviation = profile;
        for (InfosetIndex i : mine) deviation[i] = 0;
        do {
          std::uint64_t q = base;
          for (InfosetIndex i : mine) {
            q += static_cast<std::uint64_t>(deviation[i]) * space.stride[i];
          }
          if (outcomes[realized[q]].payoffs[agent] > current) {
            stable = false;
            break;
          }
        } while (NextCombination(tree, mine, deviation));
      }
      is_nash[p] = stable ? 1 : 0;
    }
  }

  StrategyProfile profile(tree.num_infosets(), 0);
  for (std::int64_t p = 0; p < total; ++p) {
    if (!is_nash[p]) continue;
    Decode(space, static_cast<std::uint64_t>(p), profile);
    result.outcomes.push_back(realized[p]);
    result.profiles.push_back(profile);
  }
  result.all_outcomes = std::move(outcomes);
  return result;
}

}  // namespace ptesolve
