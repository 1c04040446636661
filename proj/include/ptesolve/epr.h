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

#ifndef PTESOLVE_EPR_H_
#define PTESOLVE_EPR_H_

// The EPR setup as a spacetime game: physicists A and B pick measurement
// axes (a/b and c/d) at spacelike separation, and the universe picks the
// outcomes U (after A) and V (after B). U chooses from {0,1} when A=a and
// from {2,3} when A=b; V chooses from {0,1} when B=c and from {2,3} when
// B=d.
//
// The 16 outcomes are indexed ((ia * 2 + ib) * 2 + ux) * 2 + vy, where ia,
// ib are the axis indices and ux, vy the position within the offered
// two-action menu. This is also the depth-first order of the compiled tree.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptesolve/model.h"
#include "ptesolve/rational.h"
#include "ptesolve/solvers.h"
#include "ptesolve/spacetime.h"

namespace ptesolve {

inline constexpr int kEprOutcomes = 16;
inline constexpr int kEprAgents = 4;  // A, B, U, V

class EprError : public GameError {
 public:
  using GameError::GameError;
};

struct EprOutcome {
  int ia = 0;  // 0: a, 1: b
  int ib = 0;  // 0: c, 1: d
  int ux = 0;  // position in U's menu
  int vy = 0;  // position in V's menu

  int index() const { return ((ia * 2 + ib) * 2 + ux) * 2 + vy; }
  static EprOutcome FromIndex(int index);
  // Labels as the universe reports them: U in {0..3}, V in {0..3}.
  int u_label() const { return ia * 2 + ux; }
  int v_label() const { return ib * 2 + vy; }
  // "A=a,B=c,U=0,V=1"
  std::string Key() const;

  bool operator==(const EprOutcome&) const = default;
};

// rank[outcome index]; a valid ranking is a permutation of 1..16.
using Ranking = std::array<Payoff, kEprOutcomes>;

bool IsPermutationRanking(const Ranking& ranking);

struct EprUtilities {
  std::array<Ranking, kEprAgents> rankings;  // A, B, U, V
  // U and V share one preference order (rankings[3] == rankings[2]).
  bool shared_universe = false;

  bool operator==(const EprUtilities&) const = default;
};

// Throws EprError unless every ranking is a permutation and the shared flag
// is honored.
void CheckUtilities(const EprUtilities& u);

SpacetimeSpec BuildEprGame(const EprUtilities& u);

// Same tree as Compile(BuildEprGame(u)), without recompiling per call.
GameTree BuildEprTree(const EprUtilities& u);

// How per-sample utilities are drawn. Agents without a fixed ranking get an
// independent uniform permutation; with shared_universe, V copies U.
struct UtilityModel {
  std::string descriptor = "uniform";
  bool shared_universe = false;
  std::array<std::optional<Ranking>, kEprAgents> fixed;

  static UtilityModel Uniform(bool shared_universe = false);
  // Parses the contents of an epr-utilities file ("fixed:<path>" models).
  // Throws FormatError.
  static UtilityModel FromUtilitiesText(std::string_view text,
                                        std::string descriptor,
                                        bool shared_universe);
};

EprUtilities DrawUtilities(std::uint64_t seed, std::uint64_t index,
                           const UtilityModel& model);

struct EnsembleReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string model = "uniform";
  bool shared_universe = false;
  // counts[ia][ib][ux][vy]: samples whose PTE realizes that outcome.
  std::array<std::array<std::array<std::array<std::uint64_t, 2>, 2>, 2>, 2>
      counts{};
  std::uint64_t pte_exists = 0;
  // Samples without a PTE; includes multiple_survivors.
  std::uint64_t no_pte = 0;
  std::uint64_t multiple_survivors = 0;

  std::uint64_t count(const EprOutcome& o) const {
    return counts[o.ia][o.ib][o.ux][o.vy];
  }
  std::uint64_t PairCount(int ia, int ib) const;
  // P(ux, vy | ia, ib); nullopt without support.
  std::optional<Rational> Conditional(const EprOutcome& o) const;
  // Fraction of PTE samples measured on (ia, ib); nullopt if none exist.
  std::optional<Rational> AxisFrequency(int ia, int ib) const;

  // Adds counters; run metadata must agree.
  void Merge(const EnsembleReport& other);

  bool operator==(const EnsembleReport&) const = default;
};

// Outcome label (0..3) to +1 or -1.
using SignMap = std::array<int, 4>;
inline constexpr SignMap kDefaultSigns = {+1, -1, +1, -1};

// "+-+-" style, one sign per label 0..3.
std::optional<SignMap> ParseSignMap(std::string_view text);
std::string ToString(const SignMap& signs);

// "a,c" etc.
std::string AxisPairName(int ia, int ib);

struct ChshResult {
  // Order: (a,c), (a,d), (b,c), (b,d).
  std::array<std::optional<Rational>, 4> correlators;
  std::optional<Rational> s;
  std::vector<std::string> undefined_pairs;
};

ChshResult Chsh(const EnsembleReport& report, const SignMap& signs);

struct EnsembleOptions {
  Execution execution = Execution::kParallel;
  int threads = 0;  // 0: OpenMP default
};

// Throws EprError if n == 0.
EnsembleReport SampleEnsemble(std::uint64_t n, std::uint64_t seed,
                              const UtilityModel& model,
                              const EnsembleOptions& options = {});

// One sample's contribution, exposed for testing and benchmarks.
SolveResult SolveSample(std::uint64_t seed, std::uint64_t index,
                        const UtilityModel& model);

// Canonical JSON ("kind": "epr-report"), including derived conditional
// distributions and the CHSH block computed with `signs`.
std::string SerializeReport(const EnsembleReport& report,
                            const SignMap& signs = kDefaultSigns);
// Derived blocks are optional on input; when present they must agree with
// the counts. Throws FormatError.
EnsembleReport ParseReport(std::string_view text);

// One row per (axis pair, outcome pair) with count and exact probability.
std::string ReportCsv(const EnsembleReport& report);

// One-line human summary.
std::string ReportSummary(const EnsembleReport& report, const SignMap& signs);

}  // namespace ptesolve

#endif  // PTESOLVE_EPR_H_
