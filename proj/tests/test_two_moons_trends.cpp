// Copyright 2026 The curlab Authors.
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

#include <gtest/gtest.h>

#include "curlab/config.hpp"
#include "curlab/run.hpp"

namespace curlab {
namespace {

// Default two-moons setting: 6 labels per class, delta 20, five seeds.
struct Runs {
  std::vector<CurriculumResult> curriculum;
  std::vector<CurriculumResult> fixed_high;
};

const Runs& runs() {
  static const Runs r = [] {
    Runs out;
    RunConfig c = parse_config("");
    for (int rep = 0; rep < 5; ++rep) {
      SslSplit s = make_split(c, repetition_seed(c.seed, rep));
      CurriculumConfig cc = c.curriculum;
      cc.seed = repetition_seed(c.seed, rep);
      out.curriculum.push_back(run_curriculum(s, cc));
      out.fixed_high.push_back(run_vanilla_pl(s, cc, 0.9, 5));
    }
    return out;
  }();
  return r;
}

TEST(TwoMoonsTrend, CurriculumErrorMostlyFallsRoundOverRound) {
  // At least 3 of the 5 round-over-round transitions improve, per seed.
  for (std::size_t seed = 0; seed < runs().curriculum.size(); ++seed) {
    const auto& rounds = runs().curriculum[seed].rounds;
    ASSERT_EQ(rounds.size(), 6u);
    int improvements = 0;
    std::string trace;
    for (std::size_t t = 0; t < rounds.size(); ++t) {
      trace += " " + std::to_string(rounds[t].test_error);
      if (t > 0 && rounds[t].test_error < rounds[t - 1].test_error) ++improvements;
    }
    EXPECT_GE(improvements, 3) << "seed " << seed << ":" << trace;
  }
}

TEST(TwoMoonsTrend, HighFixedThresholdPlateausAfterFirstRound) {
  for (const auto& r : runs().fixed_high) {
    ASSERT_EQ(r.rounds.size(), 6u);
    EXPECT_LE(std::abs(r.rounds[5].test_error - r.rounds[1].test_error), 0.025);
    // Most of the pool clears the threshold at once, then little changes.
    EXPECT_GT(r.rounds[1].selected.size(), r.rounds[1].train_size / 2);
  }
}

}  // namespace
}  // namespace curlab
