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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json_reader.h"

namespace ptesolve {

using json::Document;
using json::EscapePointerToken;
using json::Json;

std::string Diagnostic::ToString() const {
  std::string out = std::to_string(line) + ":" + std::to_string(column) + ": ";
  if (!pointer.empty()) out += pointer + ": ";
  return out + message;
}

namespace {

std::string JoinDiagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const Diagnostic& d : diagnostics) {
    if (!out.empty()) out += "\n";
    out += d.ToString();
  }
  return out;
}

}  // namespace

FormatError::FormatError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(JoinDiagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

Diagnostic::Kind FormatError::kind() const {
  for (const Diagnostic& d : diagnostics_) {
    if (d.kind == Diagnostic::Kind::kSyntax) return Diagnostic::Kind::kSyntax;
  }
  return Diagnostic::Kind::kSemantic;
}

std::string_view ToString(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::kExtensive:
      return "extensive";
    case DocumentKind::kNormal:
      return "normal";
    case DocumentKind::kSpacetime:
      return "spacetime";
  }
  return "?";
}

namespace {

std::string Item(const std::string& base, std::size_t i) {
  return base + "/" + std::to_string(i);
}

std::string Member(const std::string& base, std::string_view key) {
  return base + "/" + EscapePointerToken(key);
}

std::vector<std::string> ReadAgents(const Document& doc, const Json& root) {
  const Json& list = doc.Array(root.at("agents"), "/agents");
  std::vector<std::string> agents;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string& name = doc.String(list[i], Item("/agents", i));
    if (name.empty()) doc.Fail(Item("/agents", i), "empty agent name");
    if (!seen.insert(name).second) {
      doc.Fail(Item("/agents", i), "agent '" + name + "' declared twice");
    }
    agents.push_back(name);
  }
  if (agents.empty()) doc.Fail("/agents", "at least one agent is required");
  return agents;
}

AgentIndex ResolveAgent(const Document& doc,
                        const std::vector<std::string>& agents,
                        const std::string& name, const std::string& pointer) {
  auto it = std::find(agents.begin(), agents.end(), name);
  if (it == agents.end()) doc.Fail(pointer, "unknown agent '" + name + "'");
  return static_cast<AgentIndex>(it - agents.begin());
}

// Payoff object keyed by agent name; must name every agent exactly once.
PayoffVector ReadPayoffs(const Document& doc,
                         const std::vector<std::string>& agents,
                         const Json& value, const std::string& pointer) {
  if (!value.is_object()) doc.Fail(pointer, "expected an object of payoffs");
  PayoffVector payoffs(agents.size());
  std::vector<bool> given(agents.size(), false);
  for (const auto& [name, v] : value.items()) {
    std::string at = Member(pointer, name);
    AgentIndex a = ResolveAgent(doc, agents, name, at);
    payoffs[a] = doc.Integer(v, at);
    given[a] = true;
  }
  for (std::size_t a = 0; a < agents.size(); ++a) {
    if (!given[a]) {
      doc.Fail(pointer, "missing payoff for agent '" + agents[a] + "'");
    }
  }
  return payoffs;
}

Json WritePayoffs(const std::vector<std::string>& agents,
                  const PayoffVector& payoffs) {
  Json out = Json::object();
  for (std::size_t a = 0; a < agents.size(); ++a) out[agents[a]] = payoffs[a];
  return out;
}

[[noreturn]] void FailWithViolations(
    const Document& doc, const ValidationReport& report,
    const std::function<std::string(const Violation&)>& locate) {
  std::vector<Diagnostic> diagnostics;
  for (const Violation& v : report) {
    diagnostics.push_back(doc.At(locate(v), Diagnostic::Kind::kSemantic,
                                 FormatViolation(v)));
  }
  throw FormatError(std::move(diagnostics));
}

GameTree ReadExtensive(const Document& doc) {
  const Json& root =
      doc.Object(doc.root(), "", {"version", "kind", "agents", "root", "nodes"},
                 {"infosets"});
  std::vector<std::string> agents = ReadAgents(doc, root);
  const Json& nodes = doc.Array(root.at("nodes"), "/nodes");

  std::unordered_map<std::string, NodeIndex> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string at = Item("/nodes", i);
    const Json& node = doc.Object(nodes[i], at, {"id"},
                                  {"agent", "actions", "payoffs"});
    const std::string& id = doc.String(node.at("id"), at + "/id");
    if (id.empty()) doc.Fail(at + "/id", "empty node id");
    if (!index.emplace(id, static_cast<NodeIndex>(i)).second) {
      doc.Fail(at + "/id", "node id '" + id + "' used twice");
    }
  }

  GameTreeBuilder builder(agents);
  std::vector<std::vector<std::pair<int, NodeIndex>>> links(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string at = Item("/nodes", i);
    const Json& node = nodes[i];
    const std::string& id = node.at("id").get_ref<const std::string&>();
    if (node.contains("payoffs")) {
      if (node.contains("agent") || node.contains("actions")) {
        doc.Fail(at, "a node has either 'payoffs' or 'agent' and 'actions'");
      }
      builder.AddLeaf(id, ReadPayoffs(doc, agents, node.at("payoffs"),
                                      at + "/payoffs"));
      continue;
    }
    if (!node.contains("agent") || !node.contains("actions")) {
      doc.Fail(at, "decision node needs 'agent' and 'actions'");
    }
    AgentIndex agent = ResolveAgent(
        doc, agents, doc.String(node.at("agent"), at + "/agent"),
        at + "/agent");
    const Json& actions = node.at("actions");
    if (!actions.is_object()) {
      doc.Fail(at + "/actions", "expected an object mapping labels to ids");
    }
    if (actions.empty()) doc.Fail(at + "/actions", "empty action menu");
    std::vector<std::string> labels;
    for (const auto& [label, child] : actions.items()) {
      std::string child_at = Member(at + "/actions", label);
      if (label.empty()) doc.Fail(child_at, "empty action label");
      const std::string& child_id = doc.String(child, child_at);
      auto it = index.find(child_id);
      if (it == index.end()) {
        doc.Fail(child_at, "dangling child '" + child_id + "'");
      }
      links[i].push_back({static_cast<int>(labels.size()), it->second});
      labels.push_back(label);
    }
    builder.AddDecision(id, agent, std::move(labels));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto [action, child] : links[i]) {
      builder.SetChild(static_cast<NodeIndex>(i), action, child);
    }
  }

  const std::string& root_id = doc.String(root.at("root"), "/root");
  auto root_it = index.find(root_id);
  if (root_it == index.end()) {
    doc.Fail("/root", "root '" + root_id + "' names no node");
  }
  builder.SetRoot(root_it->second);

  std::unordered_map<std::string, std::string> infoset_pointer;
  const bool explicit_infosets = root.contains("infosets");
  if (explicit_infosets) {
    const Json& sets = doc.Array(root.at("infosets"), "/infosets");
    for (std::size_t j = 0; j < sets.size(); ++j) {
      std::string at = Item("/infosets", j);
      const Json& set = doc.Object(sets[j], at, {"id", "members"}, {});
      const std::string& id = doc.String(set.at("id"), at + "/id");
      if (id.empty()) doc.Fail(at + "/id", "empty infoset id");
      const Json& members = doc.Array(set.at("members"), at + "/members");
      std::vector<NodeIndex> resolved;
      for (std::size_t k = 0; k < members.size(); ++k) {
        std::string m_at = Item(at + "/members", k);
        const std::string& m = doc.String(members[k], m_at);
        auto it = index.find(m);
        if (it == index.end()) doc.Fail(m_at, "unknown node '" + m + "'");
        resolved.push_back(it->second);
      }
      infoset_pointer.emplace(id, at);
      builder.AddInfoset(id, std::move(resolved));
    }
  }

  GameTree tree = std::move(builder).Build(!explicit_infosets);
  ValidationReport report = ValidateGame(tree);
  if (!report.empty()) {
    static const std::set<std::string> kInfosetCodes = {
        "menu-mismatch",  "owner-mismatch",  "infoset-ancestor",
        "empty-infoset",  "infoset-member",  "duplicate-infoset"};
    FailWithViolations(doc, report, [&](const Violation& v) -> std::string {
      if (kInfosetCodes.count(v.code)) {
        auto it = infoset_pointer.find(v.subject);
        if (it != infoset_pointer.end()) return it->second;
      }
      auto it = index.find(v.subject);
      if (it != index.end()) return Item("/nodes", it->second);
      if (v.code == "duplicate-agent" || v.code == "agent-name") {
        return "/agents";
      }
      return "";
    });
  }
  return tree;
}

Json WriteExtensive(const GameTree& tree) {
  Json out = Json::object();
  out["version"] = kFormatVersion;
  out["kind"] = "extensive";
  out["agents"] = tree.agents();
  out["root"] = tree.node(tree.root()).id;
  Json nodes = Json::array();
  for (const Node& node : tree.nodes()) {
    Json n = Json::object();
    n["id"] = node.id;
    if (node.is_leaf) {
      n["payoffs"] = WritePayoffs(tree.agents(), node.payoffs);
    } else {
      n["agent"] = tree.agents()[node.agent];
      Json actions = Json::object();
      for (std::size_t a = 0; a < node.actions.size(); ++a) {
        actions[node.actions[a]] = tree.node(node.children[a]).id;
      }
      n["actions"] = std::move(actions);
    }
    nodes.push_back(std::move(n));
  }
  out["nodes"] = std::move(nodes);
  Json sets = Json::array();
  for (const InformationSet& set : tree.infosets()) {
    Json s = Json::object();
    s["id"] = set.id;
    Json members = Json::array();
    for (NodeIndex m : set.members) members.push_back(tree.node(m).id);
    s["members"] = std::move(members);
    sets.push_back(std::move(s));
  }
  out["infosets"] = std::move(sets);
  return out;
}

NormalFormGame ReadNormal(const Document& doc) {
  const Json& root = doc.Object(
      doc.root(), "", {"version", "kind", "agents", "strategies", "table"}, {});
  std::vector<std::string> agents = ReadAgents(doc, root);
  const Json& strategies = root.at("strategies");
  if (!strategies.is_object()) {
    doc.Fail("/strategies", "expected an object keyed by agent");
  }
  std::vector<std::vector<std::string>> lists(agents.size());
  std::vector<bool> given(agents.size(), false);
  for (const auto& [name, list] : strategies.items()) {
    std::string at = Member("/strategies", name);
    AgentIndex a = ResolveAgent(doc, agents, name, at);
    doc.Array(list, at);
    std::set<std::string> seen;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string& label = doc.String(list[k], Item(at, k));
      if (label.empty() || label.find('/') != std::string::npos) {
        doc.Fail(Item(at, k), "strategy label is empty or contains '/'");
      }
      if (!seen.insert(label).second) {
        doc.Fail(Item(at, k), "strategy '" + label + "' listed twice");
      }
      lists[a].push_back(label);
    }
    if (lists[a].empty()) doc.Fail(at, "agent '" + name + "' has no strategy");
    given[a] = true;
  }
  for (std::size_t a = 0; a < agents.size(); ++a) {
    if (!given[a]) {
      doc.Fail("/strategies", "no strategies for agent '" + agents[a] + "'");
    }
  }

  std::size_t total = 1;
  for (const auto& l : lists) {
    total *= l.size();
    if (total > (std::size_t{1} << 24)) doc.Fail("/strategies", "table too large");
  }
  const Json& table = root.at("table");
  if (!table.is_object()) doc.Fail("/table", "expected an object keyed by profile");

  std::vector<PayoffVector> entries(total);
  std::vector<bool> filled(total, false);
  NormalFormGame shape(agents, lists, std::vector<PayoffVector>(total));
  for (const auto& [key, value] : table.items()) {
    std::string at = Member("/table", key);
    std::vector<int> choice;
    std::size_t begin = 0;
    for (std::size_t a = 0; a < agents.size(); ++a) {
      std::size_t slash = key.find('/', begin);
      bool last = a + 1 == agents.size();
      if (last != (slash == std::string::npos)) {
        doc.Fail(at, "profile key must name one strategy per agent");
      }
      std::string label = key.substr(
          begin, last ? std::string::npos : slash - begin);
      auto it = std::find(lists[a].begin(), lists[a].end(), label);
      if (it == lists[a].end()) {
        doc.Fail(at, "unknown strategy '" + label + "' for agent '" +
                         agents[a] + "'");
      }
      choice.push_back(static_cast<int>(it - lists[a].begin()));
      begin = slash + 1;
    }
    std::size_t p = shape.ProfileIndex(choice);
    entries[p] = ReadPayoffs(doc, agents, value, at);
    filled[p] = true;
  }
  for (std::size_t p = 0; p < total; ++p) {
    if (!filled[p]) {
      doc.Fail("/table", "missing table entry '" +
                             shape.ProfileKey(shape.ProfileChoice(p)) + "'");
    }
  }
  return NormalFormGame(std::move(agents), std::move(lists),
                        std::move(entries));
}

Json WriteNormal(const NormalFormGame& nf) {
  Json out = Json::object();
  out["version"] = kFormatVersion;
  out["kind"] = "normal";
  out["agents"] = nf.agents();
  Json strategies = Json::object();
  for (int a = 0; a < nf.num_agents(); ++a) {
    strategies[nf.agents()[a]] = nf.strategies()[a];
  }
  out["strategies"] = std::move(strategies);
  Json table = Json::object();
  for (std::size_t p = 0; p < nf.num_profiles(); ++p) {
    std::vector<int> choice = nf.ProfileChoice(p);
    table[nf.ProfileKey(choice)] = WritePayoffs(nf.agents(), nf.table()[p]);
  }
  out["table"] = std::move(table);
  return out;
}

Rational ReadCoordinate(const Document& doc, const Json& value,
                        const std::string& pointer) {
  if (value.is_number_integer()) return Rational(doc.Integer(value, pointer));
  if (value.is_string()) {
    auto r = ParseRational(value.get_ref<const std::string&>());
    if (!r) doc.Fail(pointer, "expected a rational like \"3/2\"");
    return *r;
  }
  doc.Fail(pointer, "coordinate must be an integer or a \"p/q\" string");
}

Json WriteCoordinate(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    const auto num = boost::multiprecision::numerator(r);
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max()) {
      return Json(num.convert_to<std::int64_t>());
    }
  }
  return Json(ToString(r));
}

SpacetimeSpec ReadSpacetime(const Document& doc) {
  const Json& root = doc.Object(
      doc.root(), "", {"version", "kind", "agents", "events", "payoffs"}, {});
  SpacetimeSpec spec;
  spec.agents = ReadAgents(doc, root);
  const Json& events = doc.Array(root.at("events"), "/events");
  std::unordered_map<std::string, std::size_t> event_index;
  for (std::size_t i = 0; i < events.size(); ++i) {
    std::string at = Item("/events", i);
    const Json& e = doc.Object(events[i], at, {"id", "agent", "at", "menus"}, {});
    DecisionEvent event;
    event.id = doc.String(e.at("id"), at + "/id");
    if (!event_index.emplace(event.id, i).second) {
      doc.Fail(at + "/id", "event id '" + event.id + "' used twice");
    }
    event.agent = ResolveAgent(doc, spec.agents,
                               doc.String(e.at("agent"), at + "/agent"),
                               at + "/agent");
    const Json& coord = doc.Object(e.at("at"), at + "/at", {"t", "x"}, {"y", "z"});
    event.coord.t = ReadCoordinate(doc, coord.at("t"), at + "/at/t");
    event.coord.x = ReadCoordinate(doc, coord.at("x"), at + "/at/x");
    if (coord.contains("y")) {
      event.coord.y = ReadCoordinate(doc, coord.at("y"), at + "/at/y");
    }
    if (coord.contains("z")) {
      event.coord.z = ReadCoordinate(doc, coord.at("z"), at + "/at/z");
    }
    const Json& menus = doc.Array(e.at("menus"), at + "/menus");
    for (std::size_t m = 0; m < menus.size(); ++m) {
      std::string m_at = Item(at + "/menus", m);
      const Json& menu = doc.Object(menus[m], m_at, {"actions"}, {"when"});
      Menu parsed;
      if (menu.contains("when")) {
        const Json& when = menu.at("when");
        if (!when.is_object()) {
          doc.Fail(m_at + "/when", "expected an object mapping events to actions");
        }
        for (const auto& [ev, action] : when.items()) {
          parsed.when.push_back(
              {ev, doc.String(action, Member(m_at + "/when", ev))});
        }
      }
      const Json& actions = doc.Array(menu.at("actions"), m_at + "/actions");
      for (std::size_t k = 0; k < actions.size(); ++k) {
        parsed.actions.push_back(
            doc.String(actions[k], Item(m_at + "/actions", k)));
      }
      event.menus.push_back(std::move(parsed));
    }
    spec.events.push_back(std::move(event));
  }

  const Json& payoffs = root.at("payoffs");
  if (!payoffs.is_object()) {
    doc.Fail("/payoffs", "expected an object keyed by assignment");
  }
  std::unordered_map<std::string, std::string> payoff_pointer;
  for (const auto& [key, value] : payoffs.items()) {
    std::string at = Member("/payoffs", key);
    std::optional<Assignment> assignment = ParseAssignmentKey(key);
    if (!assignment) doc.Fail(at, "malformed assignment key '" + key + "'");
    for (const ActionConstraint& c : *assignment) {
      if (!event_index.count(c.event)) {
        doc.Fail(at, "unknown event '" + c.event + "' in assignment");
      }
    }
    std::stable_sort(assignment->begin(), assignment->end(),
                     [&](const ActionConstraint& l, const ActionConstraint& r) {
                       return event_index[l.event] < event_index[r.event];
                     });
    for (std::size_t k = 1; k < assignment->size(); ++k) {
      if ((*assignment)[k].event == (*assignment)[k - 1].event) {
        doc.Fail(at, "event '" + (*assignment)[k].event + "' assigned twice");
      }
    }
    std::string canonical = AssignmentKey(*assignment);
    if (!payoff_pointer.emplace(canonical, at).second) {
      doc.Fail(at, "assignment '" + canonical + "' given twice");
    }
    spec.payoffs.push_back(
        {std::move(*assignment), ReadPayoffs(doc, spec.agents, value, at)});
  }

  ValidationReport report = ValidateSpec(spec);
  if (!report.empty()) {
    FailWithViolations(doc, report, [&](const Violation& v) -> std::string {
      auto e = event_index.find(v.subject);
      if (e != event_index.end()) return Item("/events", e->second);
      auto p = payoff_pointer.find(v.subject);
      if (p != payoff_pointer.end()) return p->second;
      if (v.code.rfind("payoff", 0) == 0) return "/payoffs";
      return "/agents";
    });
  }
  return spec;
}

Json WriteSpacetime(const SpacetimeSpec& spec) {
  Json out = Json::object();
  out["version"] = kFormatVersion;
  out["kind"] = "spacetime";
  out["agents"] = spec.agents;
  Json events = Json::array();
  for (const DecisionEvent& event : spec.events) {
    Json e = Json::object();
    e["id"] = event.id;
    e["agent"] = spec.agents[event.agent];
    Json at = Json::object();
    at["t"] = WriteCoordinate(event.coord.t);
    at["x"] = WriteCoordinate(event.coord.x);
    at["y"] = WriteCoordinate(event.coord.y);
    at["z"] = WriteCoordinate(event.coord.z);
    e["at"] = std::move(at);
    Json menus = Json::array();
    for (const Menu& menu : event.menus) {
      Json m = Json::object();
      Json when = Json::object();
      for (const ActionConstraint& c : menu.when) when[c.event] = c.action;
      m["when"] = std::move(when);
      m["actions"] = menu.actions;
      menus.push_back(std::move(m));
    }
    e["menus"] = std::move(menus);
    events.push_back(std::move(e));
  }
  out["events"] = std::move(events);
  Json payoffs = Json::object();
  for (const PayoffEntry& entry : spec.payoffs) {
    payoffs[AssignmentKey(entry.assignment)] =
        WritePayoffs(spec.agents, entry.payoffs);
  }
  out["payoffs"] = std::move(payoffs);
  return out;
}

}  // namespace

GameDocument ParseGameDocument(std::string_view text) {
  Document doc = Document::Parse(text);
  const Json& root = doc.root();
  if (!root.is_object()) doc.Fail("", "expected a JSON object");
  if (!root.contains("version")) doc.Fail("", "missing required key 'version'");
  if (!root.contains("kind")) doc.Fail("", "missing required key 'kind'");
  std::int64_t version = doc.Integer(root.at("version"), "/version");
  if (version != kFormatVersion) {
    doc.Fail("/version", "unsupported format version " + std::to_string(version));
  }
  const std::string& kind = doc.String(root.at("kind"), "/kind");
  GameDocument out;
  if (kind == "extensive") {
    out.body = ReadExtensive(doc);
  } else if (kind == "normal") {
    out.body = ReadNormal(doc);
  } else if (kind == "spacetime") {
    out.body = ReadSpacetime(doc);
  } else {
    doc.Fail("/kind", "unknown kind '" + kind +
                          "' (expected extensive, normal or spacetime)");
  }
  return out;
}

std::string Serialize(const GameDocument& doc) {
  switch (doc.kind()) {
    case DocumentKind::kExtensive:
      return json::Dump(WriteExtensive(std::get<GameTree>(doc.body)));
    case DocumentKind::kNormal:
      return json::Dump(WriteNormal(std::get<NormalFormGame>(doc.body)));
    case DocumentKind::kSpacetime:
      return json::Dump(WriteSpacetime(std::get<SpacetimeSpec>(doc.body)));
  }
  return "";
}

TraceDocument MakeTraceDocument(const GameTree& tree,
                                const SolveResult& result) {
  if (!result.trace) throw GameError("solve result carries no trace");
  const EliminationTrace& trace = *result.trace;
  const auto& all = result.all_outcomes;
  auto owner = [&](InfosetIndex i) {
    return tree.agents()[tree.infoset(i).owner];
  };

  TraceDocument doc;
  doc.solution_concept = std::string(ToString(result.solution_concept));
  doc.agents = tree.agents();
  for (const EliminationRound& round : trace.rounds) {
    TraceDocument::Round r;
    r.index = round.index;
    for (InfosetIndex i : round.certain) r.certain.push_back(tree.infoset(i).id);
    for (const Guarantee& g : round.guarantees) {
      TraceDocument::Guarantee out;
      out.infoset = tree.infoset(g.infoset).id;
      out.owner = owner(g.infoset);
      for (const ActionGuarantee& a : g.per_action) {
        out.actions.push_back({tree.infoset(g.infoset).menu[a.action],
                               a.minimum});
      }
      out.maximin = g.maximin;
      r.guarantees.push_back(std::move(out));
    }
    for (const Elimination& e : round.eliminated) {
      TraceDocument::Eliminated out;
      out.outcome = all[e.outcome].id;
      out.payoffs = all[e.outcome].payoffs;
      for (const EliminationReason& reason : e.reasons) {
        out.reasons.push_back({tree.infoset(reason.infoset).id,
                               owner(reason.infoset), reason.payoff,
                               reason.maximin});
      }
      r.eliminated.push_back(std::move(out));
    }
    doc.rounds.push_back(std::move(r));
  }
  for (OutcomeIndex o : trace.surviving) {
    doc.surviving.push_back({all[o].id, all[o].payoffs});
  }
  for (const PinnedDecision& p : trace.pinned) {
    doc.pinned.push_back(
        {tree.infoset(p.infoset).id, tree.infoset(p.infoset).menu[p.action]});
  }
  for (InfosetIndex i : trace.undefined) {
    doc.undefined.push_back(tree.infoset(i).id);
  }
  return doc;
}

namespace {

PayoffVector ReadPayoffArray(const Document& doc, const Json& value,
                             const std::string& pointer, std::size_t arity) {
  doc.Array(value, pointer);
  if (value.size() != arity) {
    doc.Fail(pointer, "expected " + std::to_string(arity) + " payoffs");
  }
  PayoffVector out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(doc.Integer(value[i], Item(pointer, i)));
  }
  return out;
}

std::vector<std::string> ReadStrings(const Document& doc, const Json& value,
                                     const std::string& pointer) {
  doc.Array(value, pointer);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(doc.String(value[i], Item(pointer, i)));
  }
  return out;
}

}  // namespace

TraceDocument ParseTraceDocument(std::string_view text) {
  Document doc = Document::Parse(text);
  const Json& root = doc.Object(
      doc.root(), "",
      {"version", "kind", "concept", "agents", "rounds", "surviving", "pinned",
       "undefined"},
      {});
  doc.ExpectHeader(root, "trace");
  TraceDocument out;
  out.solution_concept = doc.String(root.at("concept"), "/concept");
  out.agents = ReadAgents(doc, root);
  const std::size_t arity = out.agents.size();
  auto check_agent = [&](const std::string& name, const std::string& at) {
    ResolveAgent(doc, out.agents, name, at);
  };

  const Json& rounds = doc.Array(root.at("rounds"), "/rounds");
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    std::string at = Item("/rounds", i);
    const Json& r = doc.Object(rounds[i], at,
                               {"index", "certain", "guarantees", "eliminated"},
                               {});
    TraceDocument::Round round;
    round.index = static_cast<int>(doc.Integer(r.at("index"), at + "/index"));
    if (round.index != static_cast<int>(i) + 1) {
      doc.Fail(at + "/index", "round indices must increase from 1 by 1");
    }
    round.certain = ReadStrings(doc, r.at("certain"), at + "/certain");
    const Json& gs = doc.Array(r.at("guarantees"), at + "/guarantees");
    for (std::size_t k = 0; k < gs.size(); ++k) {
      std::string g_at = Item(at + "/guarantees", k);
      const Json& g = doc.Object(gs[k], g_at,
                                 {"infoset", "owner", "actions", "maximin"}, {});
      TraceDocument::Guarantee guarantee;
      guarantee.infoset = doc.String(g.at("infoset"), g_at + "/infoset");
      guarantee.owner = doc.String(g.at("owner"), g_at + "/owner");
      check_agent(guarantee.owner, g_at + "/owner");
      const Json& actions = g.at("actions");
      if (!actions.is_object()) doc.Fail(g_at + "/actions", "expected an object");
      for (const auto& [label, v] : actions.items()) {
        guarantee.actions.push_back(
            {label, doc.Integer(v, Member(g_at + "/actions", label))});
      }
      guarantee.maximin = doc.Integer(g.at("maximin"), g_at + "/maximin");
      round.guarantees.push_back(std::move(guarantee));
    }
    const Json& es = doc.Array(r.at("eliminated"), at + "/eliminated");
    for (std::size_t k = 0; k < es.size(); ++k) {
      std::string e_at = Item(at + "/eliminated", k);
      const Json& e = doc.Object(es[k], e_at,
                                 {"outcome", "payoffs", "reasons"}, {});
      TraceDocument::Eliminated elim;
      elim.outcome = doc.String(e.at("outcome"), e_at + "/outcome");
      elim.payoffs =
          ReadPayoffArray(doc, e.at("payoffs"), e_at + "/payoffs", arity);
      const Json& reasons = doc.Array(e.at("reasons"), e_at + "/reasons");
      for (std::size_t q = 0; q < reasons.size(); ++q) {
        std::string r_at = Item(e_at + "/reasons", q);
        const Json& reason = doc.Object(
            reasons[q], r_at, {"infoset", "owner", "payoff", "maximin"}, {});
        TraceDocument::Reason parsed;
        parsed.infoset = doc.String(reason.at("infoset"), r_at + "/infoset");
        parsed.owner = doc.String(reason.at("owner"), r_at + "/owner");
        check_agent(parsed.owner, r_at + "/owner");
        parsed.payoff = doc.Integer(reason.at("payoff"), r_at + "/payoff");
        parsed.maximin = doc.Integer(reason.at("maximin"), r_at + "/maximin");
        elim.reasons.push_back(std::move(parsed));
      }
      round.eliminated.push_back(std::move(elim));
    }
    out.rounds.push_back(std::move(round));
  }

  const Json& surviving = doc.Array(root.at("surviving"), "/surviving");
  for (std::size_t i = 0; i < surviving.size(); ++i) {
    std::string at = Item("/surviving", i);
    const Json& s = doc.Object(surviving[i], at, {"outcome", "payoffs"}, {});
    out.surviving.push_back(
        {doc.String(s.at("outcome"), at + "/outcome"),
         ReadPayoffArray(doc, s.at("payoffs"), at + "/payoffs", arity)});
  }
  const Json& pinned = root.at("pinned");
  if (!pinned.is_object()) doc.Fail("/pinned", "expected an object");
  for (const auto& [infoset, action] : pinned.items()) {
    out.pinned.push_back(
        {infoset, doc.String(action, Member("/pinned", infoset))});
  }
  out.undefined = ReadStrings(doc, root.at("undefined"), "/undefined");
  return out;
}

std::string Serialize(const TraceDocument& doc) {
  Json out = Json::object();
  out["version"] = kFormatVersion;
  out["kind"] = "trace";
  out["concept"] = doc.solution_concept;
  out["agents"] = doc.agents;
  Json rounds = Json::array();
  for (const TraceDocument::Round& round : doc.rounds) {
    Json r = Json::object();
    r["index"] = round.index;
    r["certain"] = round.certain;
    Json gs = Json::array();
    for (const TraceDocument::Guarantee& g : round.guarantees) {
      Json j = Json::object();
      j["infoset"] = g.infoset;
      j["owner"] = g.owner;
      Json actions = Json::object();
      for (const auto& a : g.actions) actions[a.action] = a.minimum;
      j["actions"] = std::move(actions);
      j["maximin"] = g.maximin;
      gs.push_back(std::move(j));
    }
    r["guarantees"] = std::move(gs);
    Json es = Json::array();
    for (const TraceDocument::Eliminated& e : round.eliminated) {
      Json j = Json::object();
      j["outcome"] = e.outcome;
      j["payoffs"] = e.payoffs;
      Json reasons = Json::array();
      for (const TraceDocument::Reason& reason : e.reasons) {
        Json q = Json::object();
        q["infoset"] = reason.infoset;
        q["owner"] = reason.owner;
        q["payoff"] = reason.payoff;
        q["maximin"] = reason.maximin;
        reasons.push_back(std::move(q));
      }
      j["reasons"] = std::move(reasons);
      es.push_back(std::move(j));
    }
    r["eliminated"] = std::move(es);
    rounds.push_back(std::move(r));
  }
  out["rounds"] = std::move(rounds);
  Json surviving = Json::array();
  for (const auto& s : doc.surviving) {
    Json j = Json::object();
    j["outcome"] = s.id;
    j["payoffs"] = s.payoffs;
    surviving.push_back(std::move(j));
  }
  out["surviving"] = std::move(surviving);
  Json pinned = Json::object();
  for (const auto& p : doc.pinned) pinned[p.infoset] = p.action;
  out["pinned"] = std::move(pinned);
  out["undefined"] = doc.undefined;
  return json::Dump(out);
}

std::string RenderTrace(const TraceDocument& doc) {
  std::ostringstream out;
  out << "Elimination trace (" << doc.solution_concept << "), agents:";
  for (const std::string& a : doc.agents) out << " " << a;
  out << "\n";
  for (const TraceDocument::Round& round : doc.rounds) {
    out << "Round " << round.index << "\n";
    out << "  certain to decide:";
    for (const TraceDocument::Guarantee& g : round.guarantees) {
      out << " " << g.owner << " at " << g.infoset;
      if (&g != &round.guarantees.back()) out << ",";
    }
    out << "\n";
    for (const TraceDocument::Guarantee& g : round.guarantees) {
      out << "  " << g.owner << " at " << g.infoset << " guarantees";
      for (std::size_t k = 0; k < g.actions.size(); ++k) {
        out << (k ? ", " : " ") << g.actions[k].action << " -> "
            << g.actions[k].minimum;
      }
      out << "; maximin " << g.maximin << "\n";
    }
    out << "  eliminated " << round.eliminated.size() << ":\n";
    for (const TraceDocument::Eliminated& e : round.eliminated) {
      out << "    " << FormatPayoffs(e.payoffs) << " " << e.outcome << ":";
      for (std::size_t k = 0; k < e.reasons.size(); ++k) {
        const auto& r = e.reasons[k];
        out << (k ? ";" : "") << " " << r.owner << " would deviate at "
            << r.infoset << " (" << r.payoff << " < " << r.maximin << ")";
      }
      out << "\n";
    }
  }
  if (doc.surviving.size() == 1) {
    out << "Result: " << FormatPayoffs(doc.surviving.front().payoffs) << " "
        << doc.surviving.front().id << "\n";
  } else {
    out << "Result: no PTE (" << doc.surviving.size()
        << " outcomes survive)\n";
    for (const auto& s : doc.surviving) {
      out << "  " << FormatPayoffs(s.payoffs) << " " << s.id << "\n";
    }
  }
  out << "Pinned:";
  if (doc.pinned.empty()) out << " none";
  for (const auto& p : doc.pinned) out << " " << p.infoset << "=" << p.action;
  out << "\nUndefined:";
  if (doc.undefined.empty()) out << " none";
  for (const auto& u : doc.undefined) out << " " << u;
  out << "\n";
  return out.str();
}

}  // namespace ptesolve
