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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ptesolve/epr.h"
#include "ptesolve/format.h"
#include "ptesolve/model.h"
#include "ptesolve/solvers.h"
#include "ptesolve/spacetime.h"

namespace ptesolve::cli {
namespace {

// Carries an exit code out of a command after the message has been printed.
struct Exit {
  int code;
};

std::string ReadFile(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": cannot read file\n";
    throw Exit{kIoOrSyntax};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& text,
               std::ostream& err) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    err << path << ": cannot write file\n";
    throw Exit{kIoOrSyntax};
  }
}

[[noreturn]] void ReportFormatError(const std::string& path,
                                    const FormatError& e, std::ostream& err) {
  for (const Diagnostic& d : e.diagnostics()) {
    err << path << ":" << d.ToString() << "\n";
  }
  throw Exit{e.kind() == Diagnostic::Kind::kSyntax ? kIoOrSyntax : kInvalid};
}

GameDocument LoadGame(const std::string& path, std::ostream& err) {
  std::string text = ReadFile(path, err);
  try {
    return ParseGameDocument(text);
  } catch (const FormatError& e) {
    ReportFormatError(path, e, err);
  }
}

GameTree TreeOf(const GameDocument& doc, const std::string& path,
                std::ostream& err) {
  try {
    switch (doc.kind()) {
      case DocumentKind::kExtensive:
        return std::get<GameTree>(doc.body);
      case DocumentKind::kNormal:
        return ToTree(std::get<NormalFormGame>(doc.body));
      case DocumentKind::kSpacetime:
        return Compile(std::get<SpacetimeSpec>(doc.body));
    }
  } catch (const GameError& e) {
    err << path << ": " << e.what() << "\n";
    throw Exit{kInvalid};
  }
  return GameTree();
}

std::string DescribeOutcome(const Outcome& o) {
  return FormatPayoffs(o.payoffs) + " " + o.id;
}

std::string DescribeProfile(const GameTree& tree,
                            const StrategyProfile& profile) {
  std::string out;
  for (InfosetIndex i = 0; i < tree.num_infosets(); ++i) {
    if (!out.empty()) out += ", ";
    out += tree.infoset(i).id + "=" + tree.infoset(i).menu[profile[i]];
  }
  return out;
}

// "games/pd.game.json" -> "pd.trace.json"
std::string DefaultTracePath(const std::string& input) {
  std::string name = std::filesystem::path(input).filename().string();
  for (std::string_view suffix : {".game.json", ".spacetime.json", ".json"}) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) ==
            0) {
      name.resize(name.size() - suffix.size());
      break;
    }
  }
  return name + ".trace.json";
}

int Validate(const std::string& path, std::ostream& out, std::ostream& err) {
  GameDocument doc = LoadGame(path, err);
  if (doc.kind() == DocumentKind::kNormal) {
    ValidationReport report =
        ValidateNormalForm(std::get<NormalFormGame>(doc.body));
    if (!report.empty()) {
      for (const Violation& v : report) {
        err << path << ": " << FormatViolation(v) << "\n";
      }
      return kInvalid;
    }
  }
  GameTree tree = TreeOf(doc, path, err);
  const std::size_t outcomes = Outcomes(tree).size();
  out << path << ": valid " << ToString(doc.kind()) << " game ("
      << tree.num_agents() << " agents, " << tree.num_infosets()
      << " infosets, " << outcomes << " outcomes)\n";
  auto collisions = GeneralPositionCheck(tree);
  std::size_t total = 0;
  for (const auto& list : collisions) total += list.size();
  if (total == 0) {
    out << "general position: yes\n";
  } else {
    out << "general position: no\n";
    std::vector<Outcome> all = Outcomes(tree);
    for (AgentIndex a = 0; a < tree.num_agents(); ++a) {
      for (const PayoffCollision& c : collisions[a]) {
        out << "  " << tree.agents()[a] << " ranks " << all[c.first].id
            << " and " << all[c.second].id << " equally (" << c.value
            << ")\n";
      }
    }
  }
  return kOk;
}

int CompileSpacetime(const std::string& path, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
  GameDocument doc = LoadGame(path, err);
  if (doc.kind() != DocumentKind::kSpacetime) {
    err << path << ": expected a spacetime file, found a "
        << ToString(doc.kind()) << " game\n";
    return kInvalid;
  }
  GameTree tree = TreeOf(doc, path, err);
  const std::size_t leaves = Outcomes(tree).size();
  out << tree.num_infosets() << " infosets, " << leaves << " leaves\n";
  if (tree.IsPerfectInformation()) out << "all infosets singleton\n";
  if (!out_path.empty()) {
    WriteFile(out_path, Serialize(GameDocument{kFormatVersion, tree}), err);
  }
  return kOk;
}

struct SolveFlags {
  std::string path;
  std::string concept_name = "pte";
  bool trace = false;
  std::string trace_out;
  bool strict = false;
  bool sequential = false;
};

int Solve(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  std::optional<Concept> concept_kind = ParseConcept(flags.concept_name);
  if (!concept_kind) {
    err << "unknown concept '" << flags.concept_name
        << "' (expected spe, nash or pte)\n";
    return kUsage;
  }
  if ((flags.trace || !flags.trace_out.empty()) &&
      *concept_kind != Concept::kPte) {
    err << "--trace applies to --concept pte only\n";
    return kUsage;
  }
  if (flags.sequential && *concept_kind != Concept::kPte) {
    err << "--sequential applies to --concept pte only\n";
    return kUsage;
  }
  GameDocument doc = LoadGame(flags.path, err);
  GameTree tree = TreeOf(doc, flags.path, err);

  SolveResult result;
  try {
    switch (*concept_kind) {
      case Concept::kSpe:
        result = SolveSpe(tree);
        break;
      case Concept::kNash:
        result = EnumerateNash(tree, Execution::kParallel);
        break;
      case Concept::kPte: {
        PteOptions options;
        if (flags.sequential) options.order = EliminationOrder::kSequential;
        result = SolvePte(tree, options);
        break;
      }
    }
  } catch (const SolveError& e) {
    err << flags.path << ": " << e.what() << "\n";
    return kInvalid;
  }

  const auto& all = result.all_outcomes;
  switch (*concept_kind) {
    case Concept::kSpe:
      out << "SPE: " << DescribeOutcome(all[result.outcomes.front()]) << "\n";
      out << "strategy: " << DescribeProfile(tree, result.profiles.front())
          << "\n";
      break;
    case Concept::kNash:
      if (result.outcomes.empty()) {
        out << "no pure Nash\n";
        break;
      }
      out << result.outcomes.size() << " pure Nash equilibri"
          << (result.outcomes.size() == 1 ? "um" : "a") << "\n";
      for (std::size_t k = 0; k < result.outcomes.size(); ++k) {
        out << "  " << DescribeOutcome(all[result.outcomes[k]]) << " ["
            << DescribeProfile(tree, result.profiles[k]) << "]\n";
      }
      break;
    case Concept::kPte:
      if (result.HasEquilibrium()) {
        out << "PTE: " << DescribeOutcome(all[result.outcomes.front()])
            << "\n";
      } else {
        out << "no PTE (" << result.outcomes.size() << " outcome"
            << (result.outcomes.size() == 1 ? "" : "s") << " survive)\n";
        for (OutcomeIndex o : result.outcomes) {
          out << "  " << DescribeOutcome(all[o]) << "\n";
        }
      }
      if (flags.trace || !flags.trace_out.empty()) {
        TraceDocument trace = MakeTraceDocument(tree, result);
        if (flags.trace) out << RenderTrace(trace);
        std::string path = flags.trace_out.empty()
                               ? DefaultTracePath(flags.path)
                               : flags.trace_out;
        WriteFile(path, Serialize(trace), err);
      }
      break;
  }
  if (flags.strict && !result.HasEquilibrium()) return kNoEquilibrium;
  return kOk;
}

struct EnsembleFlags {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string model = "uniform";
  bool shared_universe = false;
  std::string out_path;
  std::string csv_path;
  std::string signs = ToString(kDefaultSigns);
  bool serial = false;
  int threads = 0;
};

int EprEnsemble(const EnsembleFlags& flags, std::ostream& out,
                std::ostream& err) {
  if (flags.samples == 0) {
    err << "--samples must be at least 1\n";
    return kUsage;
  }
  std::optional<SignMap> signs = ParseSignMap(flags.signs);
  if (!signs) {
    err << "--signs expects four of '+' or '-' (labels 0 to 3)\n";
    return kUsage;
  }
  if (flags.threads < 0) {
    err << "--threads must be non-negative\n";
    return kUsage;
  }
  UtilityModel model;
  if (flags.model == "uniform") {
    model = UtilityModel::Uniform(flags.shared_universe);
  } else if (flags.model.rfind("fixed:", 0) == 0) {
    std::string path = flags.model.substr(6);
    std::string text = ReadFile(path, err);
    try {
      model = UtilityModel::FromUtilitiesText(text, flags.model,
                                              flags.shared_universe);
    } catch (const FormatError& e) {
      ReportFormatError(path, e, err);
    }
  } else {
    err << "unknown model '" << flags.model
        << "' (expected uniform or fixed:<path>)\n";
    return kUsage;
  }

  EnsembleOptions options;
  options.execution = flags.serial ? Execution::kSerial : Execution::kParallel;
  options.threads = flags.threads;
  EnsembleReport report =
      SampleEnsemble(flags.samples, flags.seed, model, options);
  out << ReportSummary(report, *signs) << "\n";
  if (!flags.out_path.empty()) {
    WriteFile(flags.out_path, SerializeReport(report, *signs), err);
  }
  if (!flags.csv_path.empty()) {
    WriteFile(flags.csv_path, ReportCsv(report), err);
  }
  return kOk;
}

int Explain(const std::string& path, std::ostream& out, std::ostream& err) {
  std::string text = ReadFile(path, err);
  try {
    out << RenderTrace(ParseTraceDocument(text));
  } catch (const FormatError& e) {
    ReportFormatError(path, e, err);
  }
  return kOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Equilibrium solver for games in spacetime", "ptesolve"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "Parse and validate a game file");
  validate->add_option("path", validate_path, "Game or spacetime file")
      ->required();

  std::string compile_path, compile_out;
  CLI::App* compile = app.add_subcommand(
      "compile-spacetime", "Compile a spacetime spec into a game tree");
  compile->add_option("path", compile_path, "Spacetime file")->required();
  compile->add_option("--out", compile_out, "Write the .game.json here");

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "Solve a game");
  solve->add_option("path", solve_flags.path, "Game or spacetime file")
      ->required();
  solve->add_option("--concept", solve_flags.concept_name,
                    "spe, nash or pte")
      ->capture_default_str();
  solve->add_flag("--trace", solve_flags.trace,
                  "Print the elimination rounds and write a .trace.json");
  solve->add_option("--trace-out", solve_flags.trace_out,
                    "Where to write the .trace.json");
  solve->add_flag("--strict", solve_flags.strict,
                  "Exit 1 when no equilibrium exists");
  solve->add_flag("--sequential", solve_flags.sequential,
                  "Eliminate one certain infoset at a time");

  EnsembleFlags ensemble_flags;
  CLI::App* ensemble = app.add_subcommand(
      "epr-ensemble", "Solve random-utility EPR games and aggregate");
  ensemble->add_option("--samples", ensemble_flags.samples, "Sample count")
      ->required();
  ensemble->add_option("--seed", ensemble_flags.seed, "64-bit seed")
      ->capture_default_str();
  ensemble->add_option("--model", ensemble_flags.model,
                       "uniform or fixed:<path>")
      ->capture_default_str();
  ensemble->add_flag("--shared-universe", ensemble_flags.shared_universe,
                     "U and V share one ranking");
  ensemble->add_option("--out", ensemble_flags.out_path,
                       "Write the report JSON here");
  ensemble->add_option("--csv", ensemble_flags.csv_path,
                       "Write conditional tables as CSV here");
  ensemble->add_option("--signs", ensemble_flags.signs,
                       "Sign of outcome labels 0..3 for CHSH")
      ->capture_default_str();
  ensemble->add_flag("--serial", ensemble_flags.serial,
                     "Use the single-threaded reference path");
  ensemble->add_option("--threads", ensemble_flags.threads,
                       "OpenMP threads (0: default)");

  std::string explain_path;
  CLI::App* explain =
      app.add_subcommand("explain", "Pretty-print an existing trace");
  explain->add_option("path", explain_path, "Trace file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return Validate(validate_path, out, err);
    if (compile->parsed()) {
      return CompileSpacetime(compile_path, compile_out, out, err);
    }
    if (solve->parsed()) return Solve(solve_flags, out, err);
    if (ensemble->parsed()) return EprEnsemble(ensemble_flags, out, err);
    if (explain->parsed()) return Explain(explain_path, out, err);
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsage;
}

}  // namespace ptesolve::cli
