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

#include "ptesolve/spacetime.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace ptesolve {

std::string_view ToString(CausalRelation r) {
  switch (r) {
    case CausalRelation::kTimelike:
      return "timelike";
    case CausalRelation::kSpacelike:
      return "spacelike";
    case CausalRelation::kLightlike:
      return "lightlike";
    case CausalRelation::kIdentical:
      return "identical";
  }
  return "?";
}

CausalRelation Classify(const EventCoord& a, const EventCoord& b) {
  if (a == b) return CausalRelation::kIdentical;
  const Rational dt = a.t - b.t;
  const Rational dx = a.x - b.x;
  const Rational dy = a.y - b.y;
  const Rational dz = a.z - b.z;
  const Rational interval = dt * dt - dx * dx - dy * dy - dz * dz;
  if (interval > 0) return CausalRelation::kTimelike;
  if (interval < 0) return CausalRelation::kSpacelike;
  return CausalRelation::kLightlike;
}

bool InPastLightcone(const EventCoord& cause, const EventCoord& effect) {
  if (!(cause.t < effect.t)) return false;
  CausalRelation r = Classify(cause, effect);
  return r == CausalRelation::kTimelike || r == CausalRelation::kLightlike;
}

std::optional<int> SpacetimeSpec::FindEvent(std::string_view id) const {
  for (int e = 0; e < static_cast<int>(events.size()); ++e) {
    if (events[e].id == id) return e;
  }
  return std::nullopt;
}

std::string AssignmentKey(const Assignment& assignment) {
  std::string key;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i) key += ",";
    key += assignment[i].event + "=" + assignment[i].action;
  }
  return key;
}

std::optional<Assignment> ParseAssignmentKey(std::string_view key) {
  Assignment out;
  if (key.empty()) return out;
  std::size_t begin = 0;
  while (true) {
    std::size_t comma = key.find(',', begin);
    std::string_view part = key.substr(
        begin, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - begin);
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == part.size() ||
        part.find('=', eq + 1) != std::string_view::npos) {
      return std::nullopt;
    }
    out.push_back({std::string(part.substr(0, eq)),
                   std::string(part.substr(eq + 1))});
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return out;
}

std::vector<int> DecisionOrder(const SpacetimeSpec& spec) {
  std::vector<int> order(spec.events.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    const DecisionEvent& a = spec.events[l];
    const DecisionEvent& b = spec.events[r];
    if (a.coord.t != b.coord.t) return a.coord.t < b.coord.t;
    return a.id < b.id;
  });
  return order;
}

namespace {

bool ValidLabel(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ',' || c == '=' || c == '?' || c == '[' || c == ']' ||
        static_cast<unsigned char>(c) <= ' ') {
      return false;
    }
  }
  return true;
}

// Walks the decision order, branching over the actions of occurring events.
// Visitor gets OnDecision(event, menu, history) -> node handle, OnChild(node,
// action, child), OnLeaf(history) -> node handle.
class Walker {
 public:
  explicit Walker(const SpacetimeSpec& spec)
      : spec_(spec),
        order_(DecisionOrder(spec)),
        past_(spec.events.size(), std::vector<bool>(spec.events.size())),
        history_(spec.events.size(), nullptr) {
    const int n = static_cast<int>(spec.events.size());
    for (int e = 0; e < n; ++e) {
      for (int f = 0; f < n; ++f) {
        past_[e][f] =
            InPastLightcone(spec.events[f].coord, spec.events[e].coord);
      }
    }
  }

  const std::vector<std::vector<bool>>& past() const { return past_; }
  const std::vector<const std::string*>& history() const { return history_; }

  template <typename Visitor>
  int Walk(Visitor& visitor) {
    return Step(visitor, 0);
  }

 private:
  // Index of the menu whose condition holds, or -1 if the event does not
  // occur on this branch.
  int MatchMenu(int e) const {
    const DecisionEvent& event = spec_.events[e];
    int match = -1;
    for (int m = 0; m < static_cast<int>(event.menus.size()); ++m) {
      bool holds = true;
      for (const ActionConstraint& c : event.menus[m].when) {
        std::optional<int> f = spec_.FindEvent(c.event);
        if (!f || !past_[e][*f]) {
          throw SpacetimeError("event '" + event.id +
                               "': condition on '" + c.event +
                               "' cannot be resolved from its past lightcone");
        }
        if (history_[*f] == nullptr || *history_[*f] != c.action) {
          holds = false;
          break;
        }
      }
      if (!holds) continue;
      if (match != -1) {
        throw SpacetimeError("event '" + event.id +
                             "': several menu conditions hold at once");
      }
      match = m;
    }
    return match;
  }

  template <typename Visitor>
  int Step(Visitor& visitor, std::size_t pos) {
    while (pos < order_.size()) {
      int e = order_[pos];
      int m = MatchMenu(e);
      if (m == -1) {
        ++pos;
        continue;
      }
      const Menu& menu = spec_.events[e].menus[m];
      int node = visitor.OnDecision(e, m, history_);
      for (int a = 0; a < static_cast<int>(menu.actions.size()); ++a) {
        history_[e] = &menu.actions[a];
        int child = Step(visitor, pos + 1);
        visitor.OnChild(node, a, child);
      }
      history_[e] = nullptr;
      return node;
    }
    return visitor.OnLeaf(history_);
  }

  const SpacetimeSpec& spec_;
  std::vector<int> order_;
  std::vector<std::vector<bool>> past_;
  std::vector<const std::string*> history_;
};

Assignment ToAssignment(const SpacetimeSpec& spec,
                        const std::vector<const std::string*>& history) {
  Assignment out;
  for (std::size_t e = 0; e < spec.events.size(); ++e) {
    if (history[e]) out.push_back({spec.events[e].id, *history[e]});
  }
  return out;
}

struct AssignmentCollector {
  const SpacetimeSpec& spec;
  std::vector<Assignment> out;

  int OnDecision(int, int, const std::vector<const std::string*>&) {
    return 0;
  }
  void OnChild(int, int, int) {}
  int OnLeaf(const std::vector<const std::string*>& history) {
    out.push_back(ToAssignment(spec, history));
    return 0;
  }
};

class TreeEmitter {
 public:
  TreeEmitter(const SpacetimeSpec& spec, const Walker& walker)
      : spec_(spec), walker_(walker), builder_(spec.agents) {
    for (const PayoffEntry& entry : spec.payoffs) {
      payoffs_.emplace(AssignmentKey(entry.assignment), &entry.payoffs);
    }
  }

  int OnDecision(int e, int m,
                 const std::vector<const std::string*>& history) {
    const DecisionEvent& event = spec_.events[e];
    std::string seen = AssignmentKey(ToAssignment(spec_, history));
    // Observable history: the occurring events in the past lightcone.
    Assignment visible;
    for (std::size_t f = 0; f < spec_.events.size(); ++f) {
      if (walker_.past()[e][f] && history[f]) {
        visible.push_back({spec_.events[f].id, *history[f]});
      }
    }
    std::string infoset_id = event.id + "[" + AssignmentKey(visible) + "]";
    NodeIndex node = builder_.AddDecision(event.id + "?" + seen, event.agent,
                                          event.menus[m].actions);
    auto [it, inserted] = infoset_slot_.emplace(infoset_id, groups_.size());
    if (inserted) groups_.push_back({infoset_id, {}});
    groups_[it->second].second.push_back(node);
    return node;
  }

  void OnChild(int node, int action, int child) {
    builder_.SetChild(node, action, child);
  }

  int OnLeaf(const std::vector<const std::string*>& history) {
    std::string key = AssignmentKey(ToAssignment(spec_, history));
    auto it = payoffs_.find(key);
    if (it == payoffs_.end()) {
      throw SpacetimeError("no payoff entry for realizable assignment '" +
                           key + "'");
    }
    return builder_.AddLeaf(key, *it->second);
  }

  GameTree Finish(NodeIndex root) && {
    builder_.SetRoot(root);
    for (auto& [id, members] : groups_) {
      builder_.AddInfoset(id, std::move(members));
    }
    return std::move(builder_).Build(false);
  }

 private:
  const SpacetimeSpec& spec_;
  const Walker& walker_;
  GameTreeBuilder builder_;
  std::unordered_map<std::string, const PayoffVector*> payoffs_;
  std::unordered_map<std::string, std::size_t> infoset_slot_;
  std::vector<std::pair<std::string, std::vector<NodeIndex>>> groups_;
};

void Add(ValidationReport& report, std::string code, std::string subject,
         std::string message) {
  report.push_back(
      {std::move(code), std::move(subject), std::move(message)});
}

}  // namespace

std::vector<Assignment> RealizableAssignments(const SpacetimeSpec& spec) {
  Walker walker(spec);
  AssignmentCollector collector{spec, {}};
  walker.Walk(collector);
  return std::move(collector.out);
}

GameTree Compile(const SpacetimeSpec& spec) {
  Walker walker(spec);
  TreeEmitter emitter(spec, walker);
  NodeIndex root = walker.Walk(emitter);
  return std::move(emitter).Finish(root);
}

ValidationReport ValidateSpec(const SpacetimeSpec& spec) {
  ValidationReport report;
  const int num_agents = static_cast<int>(spec.agents.size());
  if (num_agents == 0) Add(report, "no-agents", "", "spec has no agents");
  {
    std::set<std::string> seen;
    for (const std::string& a : spec.agents) {
      if (a.empty()) Add(report, "agent-name", a, "empty agent name");
      if (!seen.insert(a).second) {
        Add(report, "duplicate-agent", a, "agent '" + a + "' declared twice");
      }
    }
  }

  bool structurally_sound = true;
  std::set<std::string> ids;
  for (const DecisionEvent& event : spec.events) {
    if (!ValidLabel(event.id)) {
      Add(report, "label", event.id,
          "event id '" + event.id + "' is empty or uses a reserved character");
      structurally_sound = false;
    }
    if (!ids.insert(event.id).second) {
      Add(report, "duplicate-event", event.id,
          "event id '" + event.id + "' used twice");
      structurally_sound = false;
    }
    if (event.agent < 0 || event.agent >= num_agents) {
      Add(report, "unknown-agent", event.id,
          "event '" + event.id + "' is owned by an unknown agent");
      structurally_sound = false;
    }
  }
  for (int e = 0; e < static_cast<int>(spec.events.size()); ++e) {
    const DecisionEvent& event = spec.events[e];
    std::set<std::string> acausal;  // one report per offending cause
    if (event.menus.empty()) {
      Add(report, "empty-menu", event.id,
          "event '" + event.id + "' has no menu");
    }
    for (std::size_t m = 0; m < event.menus.size(); ++m) {
      const Menu& menu = event.menus[m];
      if (menu.actions.empty()) {
        Add(report, "empty-menu", event.id,
            "event '" + event.id + "' menu " + std::to_string(m) +
                " offers no action");
      }
      std::set<std::string> labels;
      for (const std::string& a : menu.actions) {
        if (!ValidLabel(a)) {
          Add(report, "label", event.id,
              "action label '" + a + "' is empty or uses a reserved character");
          structurally_sound = false;
        }
        if (!labels.insert(a).second) {
          Add(report, "duplicate-action", event.id,
              "event '" + event.id + "' menu " + std::to_string(m) +
                  " lists '" + a + "' twice");
        }
      }
      std::set<std::string> constrained;
      for (const ActionConstraint& c : menu.when) {
        std::optional<int> f = spec.FindEvent(c.event);
        if (!f) {
          Add(report, "unknown-event", event.id,
              "event '" + event.id + "' conditions on unknown event '" +
                  c.event + "'");
          structurally_sound = false;
          continue;
        }
        if (!constrained.insert(c.event).second) {
          Add(report, "condition", event.id,
              "event '" + event.id + "' constrains '" + c.event + "' twice");
        }
        const DecisionEvent& cause = spec.events[*f];
        if (!InPastLightcone(cause.coord, event.coord)) {
          structurally_sound = false;
          if (!acausal.insert(c.event).second) continue;
          CausalRelation r = Classify(cause.coord, event.coord);
          std::string how = r == CausalRelation::kSpacelike ||
                                    r == CausalRelation::kIdentical
                                ? std::string(ToString(r))
                                : "in the future";
          Add(report, "causality", event.id,
              "event '" + event.id + "' depends on '" + c.event +
                  "', which is " + how +
                  " and not in its past lightcone");
        }
        bool offered = false;
        for (const Menu& other : cause.menus) {
          offered |= std::find(other.actions.begin(), other.actions.end(),
                               c.action) != other.actions.end();
        }
        if (!offered) {
          Add(report, "unknown-action", event.id,
              "event '" + event.id + "' conditions on '" + c.event + "=" +
                  c.action + "', which '" + c.event + "' never offers");
        }
      }
    }
    // Menus must be mutually exclusive: some event constrained to two
    // different actions.
    for (std::size_t m1 = 0; m1 < event.menus.size(); ++m1) {
      for (std::size_t m2 = m1 + 1; m2 < event.menus.size(); ++m2) {
        bool exclusive = false;
        for (const ActionConstraint& c1 : event.menus[m1].when) {
          for (const ActionConstraint& c2 : event.menus[m2].when) {
            exclusive |= c1.event == c2.event && c1.action != c2.action;
          }
        }
        if (!exclusive) {
          Add(report, "menu-overlap", event.id,
              "event '" + event.id + "' menus " + std::to_string(m1) +
                  " and " + std::to_string(m2) +
                  " are not mutually exclusive");
          structurally_sound = false;
        }
      }
    }
  }

  std::map<std::string, std::size_t> table;
  for (std::size_t i = 0; i < spec.payoffs.size(); ++i) {
    const PayoffEntry& entry = spec.payoffs[i];
    std::string key = AssignmentKey(entry.assignment);
    if (static_cast<int>(entry.payoffs.size()) != num_agents) {
      Add(report, "payoff-arity", key,
          "payoff entry '" + key + "' has the wrong number of payoffs");
    }
    if (!table.emplace(key, i).second) {
      Add(report, "duplicate-payoff", key,
          "payoff entry '" + key + "' given twice");
    }
  }
  if (!structurally_sound) return report;

  std::set<std::string> realizable;
  for (const Assignment& a : RealizableAssignments(spec)) {
    std::string key = AssignmentKey(a);
    realizable.insert(key);
    if (!table.count(key)) {
      Add(report, "payoff-missing", key,
          "no payoff entry for realizable assignment '" + key + "'");
    }
  }
  for (const auto& [key, index] : table) {
    if (!realizable.count(key)) {
      Add(report, "payoff-extra", key,
          "payoff entry '" + key + "' is not a realizable assignment");
    }
  }
  return report;
}

}  // namespace ptesolve
