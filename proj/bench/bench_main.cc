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

// Serial reference versus OpenMP paths for the two parallel kernels: the EPR
// ensemble and pure Nash enumeration.

#include <vector>

#include "benchmark/benchmark.h"
#include "ptesolve/epr.h"
#include "ptesolve/model.h"
#include "ptesolve/solvers.h"

namespace ptesolve {
namespace {

void BM_Ensemble(benchmark::State& state, Execution execution) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  UtilityModel model = UtilityModel::Uniform(false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleEnsemble(n, 1, model, {execution, 0}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Agents with `strategies` strategies each and payoffs from a fixed mixing
// function, so every run sees the same table.
NormalFormGame MixedTable(int agents, int strategies) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels;
  for (int a = 0; a < agents; ++a) {
    names.push_back("p" + std::to_string(a));
    std::vector<std::string> menu;
    for (int s = 0; s < strategies; ++s) menu.push_back("s" + std::to_string(s));
    labels.push_back(menu);
  }
  std::size_t profiles = 1;
  for (int a = 0; a < agents; ++a) profiles *= strategies;
  std::vector<PayoffVector> table(profiles, PayoffVector(agents));
  for (std::size_t p = 0; p < profiles; ++p) {
    for (int a = 0; a < agents; ++a) {
      table[p][a] = static_cast<Payoff>((p * 2654435761u + a * 40503u) % 997);
    }
  }
  return NormalFormGame(names, labels, table);
}

void BM_Nash(benchmark::State& state, Execution execution) {
  GameTree tree = ToTree(MixedTable(static_cast<int>(state.range(0)), 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateNash(tree, execution));
  }
}

BENCHMARK_CAPTURE(BM_Ensemble, serial, Execution::kSerial)
    ->Arg(1000)
    ->Arg(10000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Ensemble, parallel, Execution::kParallel)
    ->Arg(1000)
    ->Arg(10000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Nash, serial, Execution::kSerial)
    ->DenseRange(4, 6)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Nash, parallel, Execution::kParallel)
    ->DenseRange(4, 6)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ptesolve

BENCHMARK_MAIN();
