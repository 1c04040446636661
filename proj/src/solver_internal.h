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

#ifndef PTESOLVE_SRC_SOLVER_INTERNAL_H_
#define PTESOLVE_SRC_SOLVER_INTERNAL_H_

#include <vector>

#include "ptesolve/model.h"

namespace ptesolve::internal {

// Outcomes(tree), with invalid games reported as SolveError::kInvalidGame.
std::vector<Outcome> CheckedOutcomes(const GameTree& tree);

// Row-major [outcome][infoset] -> action taken, or -1 when not crossed.
std::vector<int> CrossingMatrix(const GameTree& tree,
                                const std::vector<Outcome>& outcomes);

}  // namespace ptesolve::internal

#endif  // PTESOLVE_SRC_SOLVER_INTERNAL_H_
