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

#ifndef PTESOLVE_MODEL_H_
#define PTESOLVE_MODEL_H_

// Game representations: extensive form with imperfect information and
// normal form. Payoffs are ordinal integer ranks. Everything in here is an
// immutable value once built; all free functions are pure.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptesolve {

using AgentIndex = int;
using NodeIndex = int;
using InfosetIndex = int;
using OutcomeIndex = int;
using Payoff = std::int64_t;

// One entry per agent, indexed by AgentIndex.
using PayoffVector = std::vector<Payoff>;

inline constexpr NodeIndex kNoNode = -1;
inline constexpr AgentIndex kNoAgent = -1;
inline constexpr InfosetIndex kNoInfoset = -1;

// Thrown when an operation is handed a game that violates its preconditions.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A decision node carries an owner, a menu and one child per action; a leaf
// carries a payoff vector. `infoset` is kNoInfoset for leaves.
struct Node {
  std::string id;
  bool is_leaf = false;
  AgentIndex agent = kNoAgent;
  std::vector<std::string> actions;
  std::vector<NodeIndex> children;
  InfosetIndex infoset = kNoInfoset;
  PayoffVector payoffs;

  bool operator==(const Node&) const = default;
};

struct InformationSet {
  std::string id;
  AgentIndex owner = kNoAgent;
  std::vector<NodeIndex> members;
  std::vector<std::string> menu;

  bool operator==(const InformationSet&) const = default;
};

// Rooted game tree partitioned into information sets.
//
// Construction does not validate: a GameTree may hold a malformed game so
// that ValidateGame can report what is wrong with it. Solvers reject invalid
// trees up front.
class GameTree {
 public:
  GameTree() = default;
  GameTree(std::vector<std::string> agents, std::vector<Node> nodes,
           NodeIndex root, std::vector<InformationSet> infosets);

  const std::vector<std::string>& agents() const { return agents_; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeIndex n) const { return nodes_.at(n); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  NodeIndex root() const { return root_; }
  const std::vector<InformationSet>& infosets() const { return infosets_; }
  const InformationSet& infoset(InfosetIndex i) const {
    return infosets_.at(i);
  }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }

  // Parent of `n` (first one found, for malformed trees); kNoNode for the
  // root and for unreachable nodes.
  NodeIndex parent(NodeIndex n) const { return parents_.at(n); }

  std::optional<AgentIndex> FindAgent(std::string_view name) const;
  std::optional<NodeIndex> FindNode(std::string_view id) const;
  std::optional<InfosetIndex> FindInfoset(std::string_view id) const;

  bool IsPerfectInformation() const;

  bool operator==(const GameTree& other) const;

 private:
  std::vector<std::string> agents_;
  std::vector<Node> nodes_;
  NodeIndex root_ = kNoNode;
  std::vector<InformationSet> infosets_;
  std::vector<NodeIndex> parents_;
};

// Incremental construction helper. Infosets added with AddInfoset take their
// owner and menu from the first member; decision nodes left uncovered when
// Build() is called get a singleton infoset named after the node.
class GameTreeBuilder {
 public:
  explicit GameTreeBuilder(std::vector<std::string> agents);

  NodeIndex AddDecision(std::string id, AgentIndex agent,
                        std::vector<std::string> actions);
  NodeIndex AddLeaf(std::string id, PayoffVector payoffs);
  void SetChild(NodeIndex parent, int action, NodeIndex child);
  void SetRoot(NodeIndex root) { root_ = root; }
  InfosetIndex AddInfoset(std::string id, std::vector<NodeIndex> members);

  GameTree Build(bool add_singletons = true) &&;

 private:
  std::vector<std::string> agents_;
  std::vector<Node> nodes_;
  std::vector<InformationSet> infosets_;
  NodeIndex root_ = kNoNode;
};

struct PathStep {
  NodeIndex node = kNoNode;
  int action = -1;

  bool operator==(const PathStep&) const = default;
};

// A leaf together with its payoff and the root-to-leaf path.
struct Outcome {
  OutcomeIndex index = -1;
  NodeIndex leaf = kNoNode;
  std::string id;
  PayoffVector payoffs;
  std::vector<PathStep> path;

  bool operator==(const Outcome&) const = default;
};

// Action index per information set, indexed by InfosetIndex.
using StrategyProfile = std::vector<int>;

struct Violation {
  std::string code;     // e.g. "menu-mismatch", "orphan-node"
  std::string subject;  // offending node or infoset id
  std::string message;

  bool operator==(const Violation&) const = default;
};
using ValidationReport = std::vector<Violation>;

ValidationReport ValidateGame(const GameTree& tree);

// Throws GameError carrying every violation when the tree is invalid.
void RequireValid(const GameTree& tree);

std::string FormatViolation(const Violation& v);

struct PayoffCollision {
  OutcomeIndex first = -1;
  OutcomeIndex second = -1;
  Payoff value = 0;

  bool operator==(const PayoffCollision&) const = default;
};

// Per agent, every pair of outcomes with the same payoff for that agent.
// All lists empty means the game is in general position.
std::vector<std::vector<PayoffCollision>> GeneralPositionCheck(
    const GameTree& tree);
bool InGeneralPosition(const GameTree& tree);

// Depth-first, menu order. Requires a valid tree.
std::vector<Outcome> Outcomes(const GameTree& tree);

// The members of `surviving` whose path crosses `infoset` taking `action`.
std::vector<Outcome> OutcomesThrough(const GameTree& tree,
                                     InfosetIndex infoset, int action,
                                     std::span<const Outcome> surviving);

// Action taken at `infoset` along `outcome`, or -1 if the path does not
// cross it.
int ActionAt(const GameTree& tree, const Outcome& outcome,
             InfosetIndex infoset);

// Strategic form. Profiles are keyed by strategy labels joined with "/" in
// agent declaration order.
class NormalFormGame {
 public:
  NormalFormGame() = default;
  NormalFormGame(std::vector<std::string> agents,
                 std::vector<std::vector<std::string>> strategies,
                 std::vector<PayoffVector> table);

  const std::vector<std::string>& agents() const { return agents_; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  const std::vector<std::vector<std::string>>& strategies() const {
    return strategies_;
  }
  // Row-major over agents in declaration order: the last agent's strategy
  // varies fastest.
  const std::vector<PayoffVector>& table() const { return table_; }
  std::size_t num_profiles() const { return table_.size(); }

  std::size_t ProfileIndex(std::span<const int> choice) const;
  std::vector<int> ProfileChoice(std::size_t index) const;
  std::string ProfileKey(std::span<const int> choice) const;
  const PayoffVector& payoff(std::span<const int> choice) const {
    return table_.at(ProfileIndex(choice));
  }

  bool operator==(const NormalFormGame&) const = default;

 private:
  std::vector<std::string> agents_;
  std::vector<std::vector<std::string>> strategies_;
  std::vector<PayoffVector> table_;
};

ValidationReport ValidateNormalForm(const NormalFormGame& nf);

// Sequential tree in which agent order[k] moves at depth k and all its nodes
// form one information set. Leaves are named by profile key. Throws
// GameError when `order` is not a permutation of the agents.
GameTree ToTree(const NormalFormGame& nf, std::span<const AgentIndex> order);
GameTree ToTree(const NormalFormGame& nf);

// "(a,b,c)" in agent order.
std::string FormatPayoffs(std::span<const Payoff> payoffs);

}  // namespace ptesolve

#endif  // PTESOLVE_MODEL_H_
