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

#include "ptesolve/epr.h"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json_reader.h"
#include "ptesolve/format.h"
#include "ptesolve/rng.h"

namespace ptesolve {
namespace {

using json::Document;
using json::Json;

constexpr std::array<const char*, kEprAgents> kAgentNames = {"A", "B", "U",
                                                             "V"};
constexpr std::array<const char*, 2> kAxesA = {"a", "b"};
constexpr std::array<const char*, 2> kAxesB = {"c", "d"};

EventCoord At(int t, int x) {
  EventCoord c;
  c.t = t;
  c.x = x;
  return c;
}

Menu MakeMenu(const std::string& event, const std::string& action,
              std::vector<std::string> actions) {
  Menu m;
  m.when = {{event, action}};
  m.actions = std::move(actions);
  return m;
}

Assignment OutcomeAssignment(const EprOutcome& o) {
  return {{"A", kAxesA[o.ia]},
          {"B", kAxesB[o.ib]},
          {"U", std::to_string(o.u_label())},
          {"V", std::to_string(o.v_label())}};
}

Ranking IdentityRanking() {
  Ranking r;
  std::iota(r.begin(), r.end(), 1);
  return r;
}

struct Template {
  GameTree tree;
  // Leaf node of each outcome index.
  std::array<NodeIndex, kEprOutcomes> leaf{};
};

const Template& EprTemplate() {
  static const Template kTemplate = [] {
    EprUtilities u;
    u.rankings.fill(IdentityRanking());
    Template t;
    t.tree = Compile(BuildEprGame(u));
    std::vector<Outcome> outcomes = Outcomes(t.tree);
    for (const Outcome& o : outcomes) t.leaf[o.index] = o.leaf;
    return t;
  }();
  return kTemplate;
}

std::string OutcomePairKey(int ia, int ib, int ux, int vy) {
  return std::to_string(ia * 2 + ux) + "," + std::to_string(ib * 2 + vy);
}

std::optional<Rational> Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return Rational(num) / Rational(den);
}

Json RationalOrNull(const std::optional<Rational>& r) {
  return r ? Json(ToString(*r)) : Json(nullptr);
}

}  // namespace

EprOutcome EprOutcome::FromIndex(int index) {
  EprOutcome o;
  o.vy = index & 1;
  o.ux = (index >> 1) & 1;
  o.ib = (index >> 2) & 1;
  o.ia = (index >> 3) & 1;
  return o;
}

std::string EprOutcome::Key() const {
  return AssignmentKey(OutcomeAssignment(*this));
}

bool IsPermutationRanking(const Ranking& ranking) {
  std::array<bool, kEprOutcomes + 1> seen{};
  for (Payoff p : ranking) {
    if (p < 1 || p > kEprOutcomes || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

void CheckUtilities(const EprUtilities& u) {
  for (int k = 0; k < kEprAgents; ++k) {
    if (!IsPermutationRanking(u.rankings[k])) {
      throw EprError(std::string("ranking for ") + kAgentNames[k] +
                     " is not a permutation of 1..16");
    }
  }
  if (u.shared_universe && u.rankings[2] != u.rankings[3]) {
    throw EprError("shared universe requires identical U and V rankings");
  }
}

SpacetimeSpec BuildEprGame(const EprUtilities& u) {
  CheckUtilities(u);
  SpacetimeSpec spec;
  spec.agents = {"A", "B", "U", "V"};
  spec.events.push_back({"A", 0, At(0, -10), {{{}, {"a", "b"}}}});
  spec.events.push_back({"B", 1, At(0, 10), {{{}, {"c", "d"}}}});
  spec.events.push_back({"U", 2, At(1, -10),
                         {MakeMenu("A", "a", {"0", "1"}),
                          MakeMenu("A", "b", {"2", "3"})}});
  spec.events.push_back({"V", 3, At(1, 10),
                         {MakeMenu("B", "c", {"0", "1"}),
                          MakeMenu("B", "d", {"2", "3"})}});
  for (int i = 0; i < kEprOutcomes; ++i) {
    PayoffVector payoffs(kEprAgents);
    for (int k = 0; k < kEprAgents; ++k) payoffs[k] = u.rankings[k][i];
    spec.payoffs.push_back(
        {OutcomeAssignment(EprOutcome::FromIndex(i)), std::move(payoffs)});
  }
  return spec;
}

GameTree BuildEprTree(const EprUtilities& u) {
  CheckUtilities(u);
  const Template& t = EprTemplate();
  std::vector<Node> nodes = t.tree.nodes();
  for (int i = 0; i < kEprOutcomes; ++i) {
    for (int k = 0; k < kEprAgents; ++k) {
      nodes[t.leaf[i]].payoffs[k] = u.rankings[k][i];
    }
  }
  return GameTree(t.tree.agents(), std::move(nodes), t.tree.root(),
                  t.tree.infosets());
}

UtilityModel UtilityModel::Uniform(bool shared_universe) {
  UtilityModel m;
  m.shared_universe = shared_universe;
  return m;
}

UtilityModel UtilityModel::FromUtilitiesText(std::string_view text,
                                             std::string descriptor,
                                             bool shared_universe) {
  Document doc = Document::Parse(text);
  const Json& root = doc.Object(doc.root(), "", {"version", "kind", "rankings"},
                                {"shared_universe"});
  doc.ExpectHeader(root, "epr-utilities");
  UtilityModel m;
  m.descriptor = std::move(descriptor);
  m.shared_universe = shared_universe;
  if (root.contains("shared_universe") &&
      doc.Boolean(root.at("shared_universe"), "/shared_universe")) {
    m.shared_universe = true;
  }
  const Json& rankings = root.at("rankings");
  if (!rankings.is_object()) doc.Fail("/rankings", "expected an object");
  for (const auto& [agent, table] : rankings.items()) {
    std::string at = "/rankings/" + json::EscapePointerToken(agent);
    auto it = std::find(kAgentNames.begin(), kAgentNames.end(), agent);
    if (it == kAgentNames.end()) {
      doc.Fail(at, "unknown agent '" + agent + "' (expected A, B, U or V)");
    }
    if (!table.is_object()) doc.Fail(at, "expected an object keyed by outcome");
    Ranking ranking{};
    std::array<bool, kEprOutcomes> given{};
    for (const auto& [key, value] : table.items()) {
      std::string v_at = at + "/" + json::EscapePointerToken(key);
      int index = -1;
      for (int i = 0; i < kEprOutcomes; ++i) {
        if (EprOutcome::FromIndex(i).Key() == key) index = i;
      }
      if (index < 0) doc.Fail(v_at, "not an EPR outcome '" + key + "'");
      ranking[index] = doc.Integer(value, v_at);
      given[index] = true;
    }
    for (int i = 0; i < kEprOutcomes; ++i) {
      if (!given[i]) {
        doc.Fail(at, "missing rank for " + EprOutcome::FromIndex(i).Key());
      }
    }
    if (!IsPermutationRanking(ranking)) {
      doc.Fail(at, "ranks must be a permutation of 1..16");
    }
    m.fixed[it - kAgentNames.begin()] = ranking;
  }
  if (m.shared_universe) {
    if (m.fixed[2] && m.fixed[3] && *m.fixed[2] != *m.fixed[3]) {
      doc.Fail("/rankings", "shared universe but U and V rankings differ");
    }
    if (!m.fixed[2]) m.fixed[2] = m.fixed[3];
    m.fixed[3] = m.fixed[2];
  }
  return m;
}

EprUtilities DrawUtilities(std::uint64_t seed, std::uint64_t index,
                           const UtilityModel& model) {
  SampleRng rng(DeriveSeed(seed, index));
  EprUtilities u;
  u.shared_universe = model.shared_universe;
  for (int k = 0; k < kEprAgents; ++k) {
    if (model.fixed[k]) {
      u.rankings[k] = *model.fixed[k];
    } else if (k == 3 && model.shared_universe) {
      u.rankings[3] = u.rankings[2];
    } else {
      u.rankings[k] = IdentityRanking();
      rng.Shuffle(std::span<Payoff>(u.rankings[k]));
    }
  }
  return u;
}

std::uint64_t EnsembleReport::PairCount(int ia, int ib) const {
  std::uint64_t total = 0;
  for (const auto& row : counts[ia][ib]) {
    for (std::uint64_t c : row) total += c;
  }
  return total;
}

std::optional<Rational> EnsembleReport::Conditional(const EprOutcome& o) const {
  return Ratio(count(o), PairCount(o.ia, o.ib));
}

std::optional<Rational> EnsembleReport::AxisFrequency(int ia, int ib) const {
  return Ratio(PairCount(ia, ib), pte_exists);
}

void EnsembleReport::Merge(const EnsembleReport& other) {
  if (seed != other.seed || model != other.model ||
      shared_universe != other.shared_universe) {
    throw EprError("cannot merge reports of different runs");
  }
  samples += other.samples;
  for (int i = 0; i < kEprOutcomes; ++i) {
    EprOutcome o = EprOutcome::FromIndex(i);
    counts[o.ia][o.ib][o.ux][o.vy] += other.count(o);
  }
  pte_exists += other.pte_exists;
  no_pte += other.no_pte;
  multiple_survivors += other.multiple_survivors;
}

std::optional<SignMap> ParseSignMap(std::string_view text) {
  if (text.size() != 4) return std::nullopt;
  SignMap signs;
  for (int i = 0; i < 4; ++i) {
    if (text[i] == '+') {
      signs[i] = +1;
    } else if (text[i] == '-') {
      signs[i] = -1;
    } else {
      return std::nullopt;
    }
  }
  return signs;
}

std::string ToString(const SignMap& signs) {
  std::string out;
  for (int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

std::string AxisPairName(int ia, int ib) {
  return std::string(kAxesA[ia]) + "," + kAxesB[ib];
}

ChshResult Chsh(const EnsembleReport& report, const SignMap& signs) {
  ChshResult result;
  constexpr std::array<std::pair<int, int>, 4> kPairs = {
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  for (int p = 0; p < 4; ++p) {
    auto [ia, ib] = kPairs[p];
    const std::uint64_t total = report.PairCount(ia, ib);
    if (total == 0) {
      result.undefined_pairs.push_back(AxisPairName(ia, ib));
      continue;
    }
    Rational sum = 0;
    for (int ux = 0; ux < 2; ++ux) {
      for (int vy = 0; vy < 2; ++vy) {
        const int sign = signs[ia * 2 + ux] * signs[ib * 2 + vy];
        sum += Rational(sign) * Rational(report.counts[ia][ib][ux][vy]);
      }
    }
    result.correlators[p] = sum / Rational(total);
  }
  if (result.undefined_pairs.empty()) {
    result.s = *result.correlators[0] + *result.correlators[1] +
               *result.correlators[2] - *result.correlators[3];
  }
  return result;
}

SolveResult SolveSample(std::uint64_t seed, std::uint64_t index,
                        const UtilityModel& model) {
  return SolvePte(BuildEprTree(DrawUtilities(seed, index, model)));
}

namespace {

void Tally(const SolveResult& result, EnsembleReport& report) {
  ++report.samples;
  if (result.outcomes.size() == 1) {
    ++report.pte_exists;
    EprOutcome o = EprOutcome::FromIndex(result.outcomes.front());
    ++report.counts[o.ia][o.ib][o.ux][o.vy];
    return;
  }
  ++report.no_pte;
  if (result.outcomes.size() > 1) ++report.multiple_survivors;
}

}  // namespace

EnsembleReport SampleEnsemble(std::uint64_t n, std::uint64_t seed,
                              const UtilityModel& model,
                              const EnsembleOptions& options) {
  if (n == 0) throw EprError("sample count must be at least 1");
  EnsembleReport report;
  report.seed = seed;
  report.model = model.descriptor;
  report.shared_universe = model.shared_universe;
  EprTemplate();  // build once before any thread needs it

  if (options.execution == Execution::kSerial) {
    for (std::uint64_t i = 0; i < n; ++i) {
      Tally(SolveSample(seed, i, model), report);
    }
    return report;
  }

  const int threads =
      options.threads > 0 ? options.threads : omp_get_max_threads();
  // One partial report per thread, merged in thread order. Counter addition
  // is commutative, so the result does not depend on the schedule.
  std::vector<EnsembleReport> partial(threads, report);
  const std::int64_t total = static_cast<std::int64_t>(n);
#pragma omp parallel num_threads(threads)
  {
    EnsembleReport& mine = partial[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < total; ++i) {
      Tally(SolveSample(seed, static_cast<std::uint64_t>(i), model), mine);
    }
  }
  for (const EnsembleReport& part : partial) report.Merge(part);
  return report;
}

std::string SerializeReport(const EnsembleReport& report,
                            const SignMap& signs) {
  Json out = Json::object();
  out["version"] = kFormatVersion;
  out["kind"] = "epr-report";
  out["samples"] = report.samples;
  out["seed"] = report.seed;
  out["model"] = report.model;
  out["shared_universe"] = report.shared_universe;
  Json pte = Json::object();
  pte["exists"] = report.pte_exists;
  pte["none"] = report.no_pte;
  pte["multiple_survivors"] = report.multiple_survivors;
  out["pte"] = std::move(pte);
  Json pairs = Json::array();
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      Json pair = Json::object();
      pair["axes"] = AxisPairName(ia, ib);
      pair["count"] = report.PairCount(ia, ib);
      pair["frequency"] = RationalOrNull(report.AxisFrequency(ia, ib));
      Json outcomes = Json::object();
      Json conditional = Json::object();
      for (int ux = 0; ux < 2; ++ux) {
        for (int vy = 0; vy < 2; ++vy) {
          std::string key = OutcomePairKey(ia, ib, ux, vy);
          outcomes[key] = report.counts[ia][ib][ux][vy];
          conditional[key] =
              RationalOrNull(report.Conditional({ia, ib, ux, vy}));
        }
      }
      pair["outcomes"] = std::move(outcomes);
      pair["conditional"] = std::move(conditional);
      pairs.push_back(std::move(pair));
    }
  }
  out["pairs"] = std::move(pairs);
  ChshResult chsh = Chsh(report, signs);
  Json c = Json::object();
  c["signs"] = ToString(signs);
  Json correlators = Json::object();
  for (int p = 0; p < 4; ++p) {
    correlators[AxisPairName(p / 2, p % 2)] =
        RationalOrNull(chsh.correlators[p]);
  }
  c["correlators"] = std::move(correlators);
  c["S"] = RationalOrNull(chsh.s);
  c["undefined"] = chsh.undefined_pairs;
  out["chsh"] = std::move(c);
  return json::Dump(out);
}

EnsembleReport ParseReport(std::string_view text) {
  Document doc = Document::Parse(text);
  const Json& root = doc.Object(
      doc.root(), "",
      {"version", "kind", "samples", "seed", "model", "shared_universe", "pte",
       "pairs"},
      {"chsh"});
  doc.ExpectHeader(root, "epr-report");
  EnsembleReport report;
  report.samples = doc.Unsigned(root.at("samples"), "/samples");
  report.seed = doc.Unsigned(root.at("seed"), "/seed");
  report.model = doc.String(root.at("model"), "/model");
  report.shared_universe =
      doc.Boolean(root.at("shared_universe"), "/shared_universe");
  const Json& pte = doc.Object(root.at("pte"), "/pte",
                               {"exists", "none", "multiple_survivors"}, {});
  report.pte_exists = doc.Unsigned(pte.at("exists"), "/pte/exists");
  report.no_pte = doc.Unsigned(pte.at("none"), "/pte/none");
  report.multiple_survivors =
      doc.Unsigned(pte.at("multiple_survivors"), "/pte/multiple_survivors");

  const Json& pairs = doc.Array(root.at("pairs"), "/pairs");
  if (pairs.size() != 4) doc.Fail("/pairs", "expected 4 axis pairs");
  std::uint64_t tallied = 0;
  for (int p = 0; p < 4; ++p) {
    const int ia = p / 2, ib = p % 2;
    const std::string at = "/pairs/" + std::to_string(p);
    const Json& pair = doc.Object(pairs[p], at, {"axes", "outcomes"},
                                  {"count", "frequency", "conditional"});
    if (doc.String(pair.at("axes"), at + "/axes") != AxisPairName(ia, ib)) {
      doc.Fail(at + "/axes", "expected axes '" + AxisPairName(ia, ib) + "'");
    }
    const Json& outcomes = pair.at("outcomes");
    if (!outcomes.is_object() || outcomes.size() != 4) {
      doc.Fail(at + "/outcomes", "expected 4 outcome counts");
    }
    for (int ux = 0; ux < 2; ++ux) {
      for (int vy = 0; vy < 2; ++vy) {
        std::string key = OutcomePairKey(ia, ib, ux, vy);
        if (!outcomes.contains(key)) {
          doc.Fail(at + "/outcomes", "missing outcome '" + key + "'");
        }
        report.counts[ia][ib][ux][vy] = doc.Unsigned(
            outcomes.at(key), at + "/outcomes/" + key);
        tallied += report.counts[ia][ib][ux][vy];
      }
    }
    // Derived fields must agree with the counts when given.
    if (pair.contains("count") &&
        doc.Unsigned(pair.at("count"), at + "/count") !=
            report.PairCount(ia, ib)) {
      doc.Fail(at + "/count", "does not match the outcome counts");
    }
    if (pair.contains("frequency") &&
        pair.at("frequency") != RationalOrNull(report.AxisFrequency(ia, ib))) {
      doc.Fail(at + "/frequency", "does not match the counts");
    }
    if (pair.contains("conditional")) {
      Json expected = Json::object();
      for (int ux = 0; ux < 2; ++ux) {
        for (int vy = 0; vy < 2; ++vy) {
          expected[OutcomePairKey(ia, ib, ux, vy)] =
              RationalOrNull(report.Conditional({ia, ib, ux, vy}));
        }
      }
      if (pair.at("conditional") != expected) {
        doc.Fail(at + "/conditional", "does not match the counts");
      }
    }
  }
  if (tallied != report.pte_exists) {
    doc.Fail("/pte/exists", "does not equal the sum of outcome counts");
  }
  if (report.pte_exists + report.no_pte != report.samples) {
    doc.Fail("/samples", "PTE and no-PTE counters must sum to samples");
  }
  if (report.multiple_survivors > report.no_pte) {
    doc.Fail("/pte/multiple_survivors", "exceeds the no-PTE counter");
  }
  if (root.contains("chsh")) {
    const Json& chsh = root.at("chsh");
    if (!chsh.is_object() || !chsh.contains("signs")) {
      doc.Fail("/chsh", "expected an object with 'signs'");
    }
    auto signs = ParseSignMap(doc.String(chsh.at("signs"), "/chsh/signs"));
    if (!signs) doc.Fail("/chsh/signs", "expected four of '+' or '-'");
    Json expected = Json::parse(SerializeReport(report, *signs))["chsh"];
    if (chsh != expected) doc.Fail("/chsh", "does not match the counts");
  }
  return report;
}

std::string ReportCsv(const EnsembleReport& report) {
  std::ostringstream out;
  out << "a_axis,b_axis,u,v,count,probability,probability_decimal\n";
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      for (int ux = 0; ux < 2; ++ux) {
        for (int vy = 0; vy < 2; ++vy) {
          EprOutcome o{ia, ib, ux, vy};
          out << kAxesA[ia] << "," << kAxesB[ib] << "," << o.u_label() << ","
              << o.v_label() << "," << report.count(o) << ",";
          if (auto p = report.Conditional(o)) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", ToDouble(*p));
            out << ToString(*p) << "," << buf;
          } else {
            out << ",";
          }
          out << "\n";
        }
      }
    }
  }
  return out.str();
}

std::string ReportSummary(const EnsembleReport& report, const SignMap& signs) {
  std::ostringstream out;
  out << "samples " << report.samples << ", PTE " << report.pte_exists
      << ", no PTE " << report.no_pte;
  if (report.multiple_survivors > 0) {
    out << " (" << report.multiple_survivors << " with several survivors)";
  }
  ChshResult chsh = Chsh(report, signs);
  if (chsh.s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", ToDouble(*chsh.s));
    out << ", S = " << ToString(*chsh.s) << " (" << buf << ")";
  } else {
    out << ", S undefined (no samples on";
    for (const std::string& p : chsh.undefined_pairs) out << " " << p;
    out << ")";
  }
  return out.str();
}

}  // namespace ptesolve
