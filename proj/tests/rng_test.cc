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

#include "ptesolve/rng.h"

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace ptesolve {
namespace {

TEST(SplitMix64Test, ReferenceSequenceFromZero) {
  std::uint64_t state = 0;
  EXPECT_EQ(SplitMix64(state), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(SplitMix64(state), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(SplitMix64(state), 0x06C45D188009454FULL);
}

// Values computed with an independent Python transcription.
TEST(DeriveSeedTest, ReferenceValues) {
  EXPECT_EQ(DeriveSeed(0, 0), 12935080325729570654ULL);
  EXPECT_EQ(DeriveSeed(42, 7), 11142522390641652277ULL);
  EXPECT_EQ(DeriveSeed(2019, 123456), 14433732535945267506ULL);
  EXPECT_EQ(DeriveSeed(~0ULL, ~0ULL), 8596798006689295917ULL);
}

TEST(DeriveSeedTest, DistinctAcrossIndicesAndSeeds) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t i = 0; i < 500; ++i) seen.insert(DeriveSeed(seed, i));
  }
  EXPECT_EQ(seen.size(), 20u * 500u);
}

TEST(SampleRngTest, EngineIsStandardMersenneTwister) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  SampleRng rng(5489);
  std::uint64_t value = 0;
  for (int i = 0; i < 10000; ++i) value = rng.Next();
  EXPECT_EQ(value, 9981545732273789042ULL);
}

TEST(SampleRngTest, SameSeedSameStream) {
  SampleRng a(DeriveSeed(9, 3));
  SampleRng b(DeriveSeed(9, 3));
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Below(1000), b.Below(1000));
}

TEST(SampleRngTest, BelowStaysInRange) {
  SampleRng rng(1);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, ~0ULL}) {
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.Below(bound), bound);
  }
  EXPECT_EQ(rng.Below(1), 0u);
}

TEST(SampleRngTest, BelowIsRoughlyUniform) {
  SampleRng rng(2);
  constexpr int kBins = 6;
  constexpr int kDraws = 60000;
  std::array<int, kBins> hist{};
  for (int i = 0; i < kDraws; ++i) ++hist[rng.Below(kBins)];
  double chi2 = 0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int h : hist) chi2 += (h - expected) * (h - expected) / expected;
  // 5 degrees of freedom; 20.5 is the 0.999 quantile.
  EXPECT_LT(chi2, 20.5);
}

TEST(SampleRngTest, ShuffleIsPermutationAndUniform) {
  SampleRng rng(3);
  std::map<std::vector<int>, int> seen;
  constexpr int kDraws = 24000;
  for (int i = 0; i < kDraws; ++i) {
    std::vector<int> v = {0, 1, 2, 3};
    rng.Shuffle(std::span<int>(v));
    ++seen[v];
  }
  ASSERT_EQ(seen.size(), 24u);
  double chi2 = 0;
  const double expected = kDraws / 24.0;
  for (const auto& [perm, n] : seen) {
    chi2 += (n - expected) * (n - expected) / expected;
  }
  // 23 degrees of freedom; 49.7 is the 0.999 quantile.
  EXPECT_LT(chi2, 49.7);
}

TEST(SampleRngTest, ShuffleHandlesTinySpans) {
  SampleRng rng(4);
  std::vector<int> empty;
  rng.Shuffle(std::span<int>(empty));
  std::vector<int> one = {5};
  rng.Shuffle(std::span<int>(one));
  EXPECT_EQ(one, std::vector<int>{5});
}

}  // namespace
}  // namespace ptesolve
