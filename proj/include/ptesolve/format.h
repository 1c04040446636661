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

#ifndef PTESOLVE_FORMAT_H_
#define PTESOLVE_FORMAT_H_

// Text formats for games (.game.json), spacetime specs (.spacetime.json) and
// elimination traces (.trace.json). See docs/formats.md for the schemas.
//
// Parsing is strict: unknown keys, duplicate keys and non-integer payoffs are
// rejected. A parse either yields a valid document or throws FormatError;
// every diagnostic carries a 1-based line and column and a JSON pointer.
// Serialization is canonical (fixed key order, 2-space indent, declaration
// order for agents and actions, trailing newline).

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ptesolve/model.h"
#include "ptesolve/solvers.h"
#include "ptesolve/spacetime.h"

namespace ptesolve {

inline constexpr int kFormatVersion = 1;

struct Diagnostic {
  enum class Kind { kSyntax, kSemantic };

  Kind kind = Kind::kSyntax;
  int line = 0;
  int column = 0;
  std::string pointer;
  std::string message;

  // "line:column: pointer: message"
  std::string ToString() const;
};

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  // kSyntax if any diagnostic is a syntax error.
  Diagnostic::Kind kind() const;

 private:
  std::vector<Diagnostic> diagnostics_;
};

enum class DocumentKind { kExtensive, kNormal, kSpacetime };

std::string_view ToString(DocumentKind kind);

struct GameDocument {
  int version = kFormatVersion;
  std::variant<GameTree, NormalFormGame, SpacetimeSpec> body;

  DocumentKind kind() const {
    return static_cast<DocumentKind>(body.index());
  }
  bool operator==(const GameDocument&) const = default;
};

GameDocument ParseGameDocument(std::string_view text);
std::string Serialize(const GameDocument& doc);

// Name-based record of a PTE solve, independent of the game it came from.
struct TraceDocument {
  struct ActionValue {
    std::string action;
    Payoff minimum = 0;
    bool operator==(const ActionValue&) const = default;
  };
  struct Guarantee {
    std::string infoset;
    std::string owner;
    std::vector<ActionValue> actions;
    Payoff maximin = 0;
    bool operator==(const Guarantee&) const = default;
  };
  struct Reason {
    std::string infoset;
    std::string owner;
    Payoff payoff = 0;
    Payoff maximin = 0;
    bool operator==(const Reason&) const = default;
  };
  struct Eliminated {
    std::string outcome;
    PayoffVector payoffs;
    std::vector<Reason> reasons;
    bool operator==(const Eliminated&) const = default;
  };
  struct Round {
    int index = 0;
    std::vector<std::string> certain;
    std::vector<Guarantee> guarantees;
    std::vector<Eliminated> eliminated;
    bool operator==(const Round&) const = default;
  };
  struct OutcomeRef {
    std::string id;
    PayoffVector payoffs;
    bool operator==(const OutcomeRef&) const = default;
  };
  struct Pin {
    std::string infoset;
    std::string action;
    bool operator==(const Pin&) const = default;
  };

  int version = kFormatVersion;
  std::string solution_concept = "pte";
  std::vector<std::string> agents;
  std::vector<Round> rounds;
  std::vector<OutcomeRef> surviving;
  std::vector<Pin> pinned;
  std::vector<std::string> undefined;

  bool operator==(const TraceDocument&) const = default;
};

// `result` must come from SolvePte on `tree`.
TraceDocument MakeTraceDocument(const GameTree& tree, const SolveResult& result);
TraceDocument ParseTraceDocument(std::string_view text);
std::string Serialize(const TraceDocument& doc);

// Round-by-round narrative: deciding agents, their guarantees, and the
// outcomes they rule out.
std::string RenderTrace(const TraceDocument& doc);

}  // namespace ptesolve

#endif  // PTESOLVE_FORMAT_H_
