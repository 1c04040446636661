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

#include "ptesolve/model.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ptesolve {

GameTree::GameTree(std::vector<std::string> agents, std::vector<Node> nodes,
                   NodeIndex root, std::vector<InformationSet> infosets)
    : agents_(std::move(agents)),
      nodes_(std::move(nodes)),
      root_(root),
      infosets_(std::move(infosets)),
      parents_(nodes_.size(), kNoNode) {
  const int n = num_nodes();
  for (Node& node : nodes_) node.infoset = kNoInfoset;
  for (InfosetIndex i = 0; i < num_infosets(); ++i) {
    for (NodeIndex m : infosets_[i].members) {
      if (m >= 0 && m < n && nodes_[m].infoset == kNoInfoset) {
        nodes_[m].infoset = i;
      }
    }
  }
  for (NodeIndex p = 0; p < n; ++p) {
    for (NodeIndex c : nodes_[p].children) {
      if (c >= 0 && c < n && parents_[c] == kNoNode && c != root_) {
        parents_[c] = p;
      }
    }
  }
}

std::optional<AgentIndex> GameTree::FindAgent(std::string_view name) const {
  auto it = std::find(agents_.begin(), agents_.end(), name);
  if (it == agents_.end()) return std::nullopt;
  return static_cast<AgentIndex>(it - agents_.begin());
}

std::optional<NodeIndex> GameTree::FindNode(std::string_view id) const {
  for (NodeIndex n = 0; n < num_nodes(); ++n) {
    if (nodes_[n].id == id) return n;
  }
  return std::nullopt;
}

std::optional<InfosetIndex> GameTree::FindInfoset(std::string_view id) const {
  for (InfosetIndex i = 0; i < num_infosets(); ++i) {
    if (infosets_[i].id == id) return i;
  }
  return std::nullopt;
}

bool GameTree::IsPerfectInformation() const {
  return std::all_of(infosets_.begin(), infosets_.end(),
                     [](const InformationSet& s) {
                       return s.members.size() == 1;
                     });
}

bool GameTree::operator==(const GameTree& other) const {
  return agents_ == other.agents_ && nodes_ == other.nodes_ &&
         root_ == other.root_ && infosets_ == other.infosets_;
}

GameTreeBuilder::GameTreeBuilder(std::vector<std::string> agents)
    : agents_(std::move(agents)) {}

NodeIndex GameTreeBuilder::AddDecision(std::string id, AgentIndex agent,
                                       std::vector<std::string> actions) {
  Node node;
  node.id = std::move(id);
  node.agent = agent;
  node.children.assign(actions.size(), kNoNode);
  node.actions = std::move(actions);
  nodes_.push_back(std::move(node));
  return static_cast<NodeIndex>(nodes_.size() - 1);
}

NodeIndex GameTreeBuilder::AddLeaf(std::string id, PayoffVector payoffs) {
  Node node;
  node.id = std::move(id);
  node.is_leaf = true;
  node.payoffs = std::move(payoffs);
  nodes_.push_back(std::move(node));
  return static_cast<NodeIndex>(nodes_.size() - 1);
}

void GameTreeBuilder::SetChild(NodeIndex parent, int action,
                               NodeIndex child) {
  nodes_.at(parent).children.at(action) = child;
}

InfosetIndex GameTreeBuilder::AddInfoset(std::string id,
                                         std::vector<NodeIndex> members) {
  InformationSet set;
  set.id = std::move(id);
  if (!members.empty() && members.front() >= 0 &&
      members.front() < static_cast<NodeIndex>(nodes_.size())) {
    set.owner = nodes_[members.front()].agent;
    set.menu = nodes_[members.front()].actions;
  }
  set.members = std::move(members);
  infosets_.push_back(std::move(set));
  return static_cast<InfosetIndex>(infosets_.size() - 1);
}

GameTree GameTreeBuilder::Build(bool add_singletons) && {
  if (add_singletons) {
    std::vector<bool> covered(nodes_.size(), false);
    for (const InformationSet& s : infosets_) {
      for (NodeIndex m : s.members) {
        if (m >= 0 && m < static_cast<NodeIndex>(covered.size())) {
          covered[m] = true;
        }
      }
    }
    for (NodeIndex n = 0; n < static_cast<NodeIndex>(nodes_.size()); ++n) {
      if (!nodes_[n].is_leaf && !covered[n]) AddInfoset(nodes_[n].id, {n});
    }
  }
  return GameTree(std::move(agents_), std::move(nodes_), root_,
                  std::move(infosets_));
}

namespace {

void Add(ValidationReport& report, std::string code, std::string subject,
         std::string message) {
  report.push_back(
      {std::move(code), std::move(subject), std::move(message)});
}

std::string Join(const std::vector<std::string>& items) {
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + ")";
}

}  // namespace

ValidationReport ValidateGame(const GameTree& tree) {
  ValidationReport report;
  const int n = tree.num_nodes();
  const int num_agents = tree.num_agents();

  if (num_agents == 0) Add(report, "no-agents", "", "game has no agents");
  {
    std::unordered_set<std::string> seen;
    for (const std::string& a : tree.agents()) {
      if (a.empty()) Add(report, "agent-name", a, "empty agent name");
      if (!seen.insert(a).second) {
        Add(report, "duplicate-agent", a, "agent '" + a + "' declared twice");
      }
    }
  }
  {
    std::unordered_set<std::string> seen;
    for (const Node& node : tree.nodes()) {
      if (!seen.insert(node.id).second) {
        Add(report, "duplicate-id", node.id,
            "node id '" + node.id + "' used twice");
      }
    }
  }
  if (tree.root() < 0 || tree.root() >= n) {
    Add(report, "no-root", "", "root does not name a node");
    return report;
  }

  std::vector<int> parent_count(n, 0);
  for (const Node& node : tree.nodes()) {
    if (node.is_leaf) {
      if (static_cast<int>(node.payoffs.size()) != num_agents) {
        Add(report, "payoff-arity", node.id,
            "leaf '" + node.id + "' has " +
                std::to_string(node.payoffs.size()) + " payoffs for " +
                std::to_string(num_agents) + " agents");
      }
      continue;
    }
    if (node.agent < 0 || node.agent >= num_agents) {
      Add(report, "unknown-agent", node.id,
          "node '" + node.id + "' is owned by an unknown agent");
    }
    if (node.actions.empty()) {
      Add(report, "empty-menu", node.id,
          "decision node '" + node.id + "' offers no action");
    }
    std::set<std::string> labels(node.actions.begin(), node.actions.end());
    if (labels.size() != node.actions.size()) {
      Add(report, "duplicate-action", node.id,
          "node '" + node.id + "' lists an action label twice");
    }
    if (node.children.size() != node.actions.size()) {
      Add(report, "dangling-child", node.id,
          "node '" + node.id + "' has a child count different from its menu");
    }
    for (std::size_t a = 0; a < node.children.size(); ++a) {
      NodeIndex c = node.children[a];
      if (c < 0 || c >= n) {
        Add(report, "dangling-child", node.id,
            "action '" + (a < node.actions.size() ? node.actions[a] : "?") +
                "' of node '" + node.id + "' points nowhere");
        continue;
      }
      ++parent_count[c];
    }
  }

  // Reachability from the root; nodes seen twice mean a shared child or a
  // cycle and are reported through parent counts.
  std::vector<bool> reached(n, false);
  std::vector<NodeIndex> stack = {tree.root()};
  while (!stack.empty()) {
    NodeIndex cur = stack.back();
    stack.pop_back();
    if (reached[cur]) continue;
    reached[cur] = true;
    for (NodeIndex c : tree.node(cur).children) {
      if (c >= 0 && c < n && !reached[c]) stack.push_back(c);
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    const std::string& id = tree.node(v).id;
    if (v == tree.root()) {
      if (parent_count[v] > 0) {
        Add(report, "root-has-parent", id, "root '" + id + "' has a parent");
      }
    } else if (parent_count[v] > 1) {
      Add(report, "multiple-parents", id,
          "node '" + id + "' has " + std::to_string(parent_count[v]) +
              " parents");
    } else if (!reached[v]) {
      Add(report, "orphan-node", id,
          "node '" + id + "' is not reachable from the root");
    }
  }

  std::vector<int> membership(n, 0);
  {
    std::unordered_set<std::string> seen;
    for (const InformationSet& s : tree.infosets()) {
      if (!seen.insert(s.id).second) {
        Add(report, "duplicate-infoset", s.id,
            "infoset id '" + s.id + "' used twice");
      }
    }
  }
  for (InfosetIndex i = 0; i < tree.num_infosets(); ++i) {
    const InformationSet& s = tree.infoset(i);
    if (s.members.empty()) {
      Add(report, "empty-infoset", s.id, "infoset '" + s.id + "' is empty");
      continue;
    }
    for (NodeIndex m : s.members) {
      if (m < 0 || m >= n) {
        Add(report, "infoset-member", s.id,
            "infoset '" + s.id + "' lists an unknown node");
        continue;
      }
      ++membership[m];
      const Node& node = tree.node(m);
      if (node.is_leaf) {
        Add(report, "infoset-member", s.id,
            "infoset '" + s.id + "' contains leaf '" + node.id + "'");
        continue;
      }
      if (node.agent != s.owner) {
        Add(report, "owner-mismatch", s.id,
            "node '" + node.id + "' is not owned by the owner of infoset '" +
                s.id + "'");
      }
      if (node.actions != s.menu) {
        Add(report, "menu-mismatch", s.id,
            "node '" + node.id + "' offers " + Join(node.actions) +
                " but infoset '" + s.id + "' offers " + Join(s.menu));
      }
      // No member may lie below another member.
      for (NodeIndex up = tree.parent(m), guard = 0; up != kNoNode && guard < n;
           up = tree.parent(up), ++guard) {
        if (tree.node(up).infoset == i &&
            std::find(s.members.begin(), s.members.end(), up) !=
                s.members.end()) {
          Add(report, "infoset-ancestor", s.id,
              "node '" + tree.node(up).id + "' is an ancestor of '" +
                  node.id + "' in infoset '" + s.id + "'");
          break;
        }
      }
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    const Node& node = tree.node(v);
    if (node.is_leaf) continue;
    if (membership[v] == 0) {
      Add(report, "infoset-missing", node.id,
          "decision node '" + node.id + "' belongs to no infoset");
    } else if (membership[v] > 1) {
      Add(report, "infoset-overlap", node.id,
          "decision node '" + node.id + "' belongs to several infosets");
    }
  }
  return report;
}

std::string FormatViolation(const Violation& v) {
  std::string out = v.code;
  if (!v.subject.empty()) out += " [" + v.subject + "]";
  return out + ": " + v.message;
}

void RequireValid(const GameTree& tree) {
  ValidationReport report = ValidateGame(tree);
  if (report.empty()) return;
  std::string msg = "invalid game:";
  for (const Violation& v : report) msg += "\n  " + FormatViolation(v);
  throw GameError(msg);
}

std::vector<Outcome> Outcomes(const GameTree& tree) {
  RequireValid(tree);
  std::vector<Outcome> out;
  std::vector<PathStep> path;
  // Explicit stack of (node, next action to explore).
  std::vector<std::pair<NodeIndex, int>> stack = {{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [node_index, next] = stack.back();
    const Node& node = tree.node(node_index);
    if (node.is_leaf) {
      Outcome o;
      o.index = static_cast<OutcomeIndex>(out.size());
      o.leaf = node_index;
      o.id = node.id;
      o.payoffs = node.payoffs;
      o.path = path;
      out.push_back(std::move(o));
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    if (next == static_cast<int>(node.children.size())) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    int action = next++;
    path.push_back({node_index, action});
    stack.push_back({node.children[action], 0});
  }
  return out;
}

int ActionAt(const GameTree& tree, const Outcome& outcome,
             InfosetIndex infoset) {
  for (const PathStep& step : outcome.path) {
    if (tree.node(step.node).infoset == infoset) return step.action;
  }
  return -1;
}

std::vector<Outcome> OutcomesThrough(const GameTree& tree,
                                     InfosetIndex infoset, int action,
                                     std::span<const Outcome> surviving) {
  std::vector<Outcome> out;
  for (const Outcome& o : surviving) {
    if (ActionAt(tree, o, infoset) == action) out.push_back(o);
  }
  return out;
}

std::vector<std::vector<PayoffCollision>> GeneralPositionCheck(
    const GameTree& tree) {
  std::vector<Outcome> all = Outcomes(tree);
  std::vector<std::vector<PayoffCollision>> result(tree.num_agents());
  std::vector<OutcomeIndex> order(all.size());
  for (AgentIndex a = 0; a < tree.num_agents(); ++a) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](OutcomeIndex l, OutcomeIndex r) {
                       return all[l].payoffs[a] < all[r].payoffs[a];
                     });
    std::size_t begin = 0;
    while (begin < order.size()) {
      std::size_t end = begin + 1;
      while (end < order.size() && all[order[end]].payoffs[a] ==
                                       all[order[begin]].payoffs[a]) {
        ++end;
      }
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < end; ++j) {
          result[a].push_back({std::min(order[i], order[j]),
                               std::max(order[i], order[j]),
                               all[order[i]].payoffs[a]});
        }
      }
      begin = end;
    }
    std::sort(result[a].begin(), result[a].end(),
              [](const PayoffCollision& l, const PayoffCollision& r) {
                return std::pair(l.first, l.second) <
                       std::pair(r.first, r.second);
              });
  }
  return result;
}

bool InGeneralPosition(const GameTree& tree) {
  for (const auto& list : GeneralPositionCheck(tree)) {
    if (!list.empty()) return false;
  }
  return true;
}

NormalFormGame::NormalFormGame(std::vector<std::string> agents,
                               std::vector<std::vector<std::string>> strategies,
                               std::vector<PayoffVector> table)
    : agents_(std::move(agents)),
      strategies_(std::move(strategies)),
      table_(std::move(table)) {
  if (strategies_.size() != agents_.size()) {
    throw GameError("normal form: one strategy list per agent expected");
  }
  std::size_t expected = agents_.empty() ? 0 : 1;
  for (const auto& s : strategies_) expected *= s.size();
  if (expected != table_.size()) {
    throw GameError("normal form: table has " + std::to_string(table_.size()) +
                    " entries, expected " + std::to_string(expected));
  }
}

std::size_t NormalFormGame::ProfileIndex(std::span<const int> choice) const {
  std::size_t index = 0;
  for (std::size_t a = 0; a < strategies_.size(); ++a) {
    index = index * strategies_[a].size() + static_cast<std::size_t>(choice[a]);
  }
  return index;
}

std::vector<int> NormalFormGame::ProfileChoice(std::size_t index) const {
  std::vector<int> choice(strategies_.size());
  for (std::size_t a = strategies_.size(); a-- > 0;) {
    choice[a] = static_cast<int>(index % strategies_[a].size());
    index /= strategies_[a].size();
  }
  return choice;
}

std::string NormalFormGame::ProfileKey(std::span<const int> choice) const {
  std::string key;
  for (std::size_t a = 0; a < strategies_.size(); ++a) {
    if (a) key += "/";
    key += strategies_[a][choice[a]];
  }
  return key;
}

ValidationReport ValidateNormalForm(const NormalFormGame& nf) {
  ValidationReport report;
  if (nf.num_agents() == 0) Add(report, "no-agents", "", "game has no agents");
  std::unordered_set<std::string> seen;
  for (int a = 0; a < nf.num_agents(); ++a) {
    const std::string& name = nf.agents()[a];
    if (name.empty()) Add(report, "agent-name", name, "empty agent name");
    if (!seen.insert(name).second) {
      Add(report, "duplicate-agent", name,
          "agent '" + name + "' declared twice");
    }
    const auto& labels = nf.strategies()[a];
    if (labels.empty()) {
      Add(report, "empty-menu", name, "agent '" + name + "' has no strategy");
    }
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != labels.size()) {
      Add(report, "duplicate-action", name,
          "agent '" + name + "' lists a strategy twice");
    }
    for (const std::string& l : labels) {
      if (l.empty() || l.find('/') != std::string::npos) {
        Add(report, "strategy-label", name,
            "strategy label '" + l + "' is empty or contains '/'");
      }
    }
  }
  for (const PayoffVector& p : nf.table()) {
    if (static_cast<int>(p.size()) != nf.num_agents()) {
      Add(report, "payoff-arity", "", "table entry with wrong payoff count");
      break;
    }
  }
  return report;
}

GameTree ToTree(const NormalFormGame& nf, std::span<const AgentIndex> order) {
  const int n = nf.num_agents();
  {
    std::vector<AgentIndex> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<AgentIndex> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    if (sorted != identity) {
      throw GameError("agent order is not a permutation of the game's agents");
    }
  }
  GameTreeBuilder builder(nf.agents());
  std::vector<std::vector<NodeIndex>> depth_members(n);
  std::vector<int> choice(n, 0);

  // Depth-first so node indices follow preorder.
  auto build = [&](auto&& self, int depth, const std::string& prefix)
      -> NodeIndex {
    if (depth == n) {
      return builder.AddLeaf(nf.ProfileKey(choice), nf.payoff(choice));
    }
    AgentIndex agent = order[depth];
    NodeIndex node = builder.AddDecision(nf.agents()[agent] + "@" + prefix,
                                         agent, nf.strategies()[agent]);
    depth_members[depth].push_back(node);
    for (int s = 0; s < static_cast<int>(nf.strategies()[agent].size());
         ++s) {
      choice[agent] = s;
      std::string next = prefix.empty()
                             ? nf.strategies()[agent][s]
                             : prefix + "/" + nf.strategies()[agent][s];
      builder.SetChild(node, s, self(self, depth + 1, next));
    }
    return node;
  };
  builder.SetRoot(build(build, 0, ""));
  for (int d = 0; d < n; ++d) {
    builder.AddInfoset(nf.agents()[order[d]], depth_members[d]);
  }
  return std::move(builder).Build();
}

GameTree ToTree(const NormalFormGame& nf) {
  std::vector<AgentIndex> order(nf.num_agents());
  std::iota(order.begin(), order.end(), 0);
  return ToTree(nf, order);
}

std::string FormatPayoffs(std::span<const Payoff> payoffs) {
  std::string out = "(";
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(payoffs[i]);
  }
  return out + ")";
}

}  // namespace ptesolve
