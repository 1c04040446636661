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

#ifndef PTESOLVE_SPACETIME_H_
#define PTESOLVE_SPACETIME_H_

// Decision events located in Minkowski spacetime (c = 1) and their
// compilation into an extensive-form game with imperfect information.
//
// An event's menu may depend on actions taken at events in its strict past
// lightcone. When no menu condition holds the event does not occur on that
// branch: it contributes no move and no strategy obligation there.
//
// Compilation orders events by (t, id). Two nodes of the same event share an
// information set exactly when their histories agree on every event in that
// event's past lightcone, so the order chosen among spacelike-separated
// events changes the tree shape but not what any agent can observe.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptesolve/model.h"
#include "ptesolve/rational.h"

namespace ptesolve {

class SpacetimeError : public GameError {
 public:
  using GameError::GameError;
};

struct EventCoord {
  Rational t = 0;
  Rational x = 0;
  Rational y = 0;
  Rational z = 0;

  bool operator==(const EventCoord&) const = default;
};

enum class CausalRelation { kTimelike, kSpacelike, kLightlike, kIdentical };

std::string_view ToString(CausalRelation r);

// Sign of dt^2 - dx^2 - dy^2 - dz^2, computed exactly.
CausalRelation Classify(const EventCoord& a, const EventCoord& b);

// True when `cause` lies in the strict past lightcone of `effect`: strictly
// earlier and not spacelike-separated (a light signal may connect them).
bool InPastLightcone(const EventCoord& cause, const EventCoord& effect);

struct ActionConstraint {
  std::string event;
  std::string action;

  bool operator==(const ActionConstraint&) const = default;
};

// Conjunction of constraints; empty means "always".
using Condition = std::vector<ActionConstraint>;

struct Menu {
  Condition when;
  std::vector<std::string> actions;

  bool operator==(const Menu&) const = default;
};

struct DecisionEvent {
  std::string id;
  AgentIndex agent = kNoAgent;
  EventCoord coord;
  std::vector<Menu> menus;

  bool operator==(const DecisionEvent&) const = default;
};

// Actions of the occurring events, in event declaration order.
using Assignment = std::vector<ActionConstraint>;

struct PayoffEntry {
  Assignment assignment;
  PayoffVector payoffs;

  bool operator==(const PayoffEntry&) const = default;
};

struct SpacetimeSpec {
  std::vector<std::string> agents;
  std::vector<DecisionEvent> events;
  std::vector<PayoffEntry> payoffs;

  std::optional<int> FindEvent(std::string_view id) const;

  bool operator==(const SpacetimeSpec&) const = default;
};

// "A=a,B=c,U=0"; the empty assignment renders as "".
std::string AssignmentKey(const Assignment& assignment);
std::optional<Assignment> ParseAssignmentKey(std::string_view key);

// Event indices sorted by (t, id).
std::vector<int> DecisionOrder(const SpacetimeSpec& spec);

// Flags non-causal menu conditions, overlapping menus, malformed labels and
// payoff-table gaps or extras. An empty report means Compile will succeed.
ValidationReport ValidateSpec(const SpacetimeSpec& spec);

// Every complete assignment reachable under the menu conditions, in the
// depth-first order of the compiled tree. Throws SpacetimeError on a
// condition that cannot be resolved at its event.
std::vector<Assignment> RealizableAssignments(const SpacetimeSpec& spec);

// Throws SpacetimeError on unresolvable conditions or payoff lookup misses.
GameTree Compile(const SpacetimeSpec& spec);

}  // namespace ptesolve

#endif  // PTESOLVE_SPACETIME_H_
