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

#ifndef PTESOLVE_RNG_H_
#define PTESOLVE_RNG_H_

// Seedable, splittable randomness with a bit-exact definition. Each ensemble
// sample gets its own generator derived from (seed, sample index), so the
// order in which samples are evaluated cannot change what they draw.
//
// std::mt19937_64 is fully specified by the standard; the distributions in
// <random> are not, so bounded draws and shuffles are defined here.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ptesolve {

// The SplitMix64 finalizer applied to `state` after one increment.
std::uint64_t SplitMix64(std::uint64_t& state);

// Seed for sample `index` of a run seeded with `seed`.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform on [0, bound); bound > 0. Unbiased by rejection.
  std::uint64_t Below(std::uint64_t bound);

  // Fisher-Yates, last position first.
  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ptesolve

#endif  // PTESOLVE_RNG_H_
