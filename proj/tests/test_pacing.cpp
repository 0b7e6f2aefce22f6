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

#include <algorithm>
#include <cmath>
#include <random>

#include "curlab/error.hpp"
#include "curlab/pacing.hpp"

namespace curlab {
namespace {

// Full sort, then the 1-based nearest rank.
double oracle_percentile(std::vector<double> v, double r) {
  std::sort(v.begin(), v.end());
  long k = static_cast<long>(std::ceil(r / 100.0 * static_cast<double>(v.size())));
  k = std::clamp(k, 1L, static_cast<long>(v.size()));
  return v[static_cast<std::size_t>(k - 1)];
}

ConfidenceScores make_scores(std::vector<double> values) {
  ConfidenceScores s;
  for (std::size_t i = 0; i < values.size(); ++i) s.ids.push_back(100 + i);
  s.values = std::move(values);
  return s;
}

std::vector<double> random_scores(std::mt19937_64& rng, std::size_t n, bool ties) {
  std::uniform_real_distribution<double> u(0.5, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = ties ? 0.5 + 0.05 * static_cast<double>(rng() % 10) : u(rng);
  return v;
}

TEST(Percentile, Examples) {
  std::vector<double> v = {0.9, 0.6, 0.8, 0.7, 0.5};
  EXPECT_EQ(percentile(v, 0.0), 0.5);
  EXPECT_EQ(percentile(v, 20.0), 0.5);
  EXPECT_EQ(percentile(v, 21.0), 0.6);
  EXPECT_EQ(percentile(v, 80.0), 0.8);
  EXPECT_EQ(percentile(v, 100.0), 0.9);
  EXPECT_THROW(percentile(std::vector<double>{}, 10.0), InvalidArgument);
  EXPECT_THROW(percentile(v, 101.0), InvalidArgument);
}

TEST(Percentile, MatchesSortOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v = random_scores(rng, 1 + rng() % 60, trial % 2 == 0);
    double r = static_cast<double>(rng() % 1001) / 10.0;
    double got = percentile(v, r);
    EXPECT_EQ(got, oracle_percentile(v, r));
    EXPECT_NE(std::find(v.begin(), v.end(), got), v.end());
  }
}

TEST(Schedule, DeltaTwenty) {
  EXPECT_EQ(schedule_percentiles(20.0), (std::vector<double>{80, 60, 40, 20, 0}));
  EXPECT_EQ(schedule_percentiles(100.0), (std::vector<double>{0}));
  EXPECT_EQ(schedule_percentiles(30.0), (std::vector<double>{70, 40, 10, 0}));
  EXPECT_THROW(schedule_percentiles(0.0), InvalidArgument);
  EXPECT_THROW(schedule_percentiles(101.0), InvalidArgument);
}

TEST(Schedule, StrictlyDecreasingWithSingleZero) {
  for (double delta : {0.5, 1.0, 3.0, 7.5, 12.5, 33.0, 49.9, 99.0}) {
    auto s = schedule_percentiles(delta);
    EXPECT_EQ(s.back(), 0.0);
    EXPECT_EQ(std::count(s.begin(), s.end(), 0.0), 1);
    for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i], s[i - 1]);
    EXPECT_EQ(s.size(), static_cast<std::size_t>(std::ceil(100.0 / delta)));
  }
}

TEST(Select, TiesAtThresholdAreExcludedAtInteriorRanks) {
  ConfidenceScores s = make_scores({0.9, 0.9, 0.9, 0.9});
  Selection sel = select(s, 50.0);
  EXPECT_TRUE(sel.positions.empty());
  EXPECT_TRUE(sel.stalled);
  EXPECT_EQ(sel.threshold, 0.9);
  Selection all = select(s, 0.0);
  EXPECT_EQ(all.positions.size(), 4u);
  EXPECT_FALSE(all.stalled);
}

TEST(Select, TopFractionOfDistinctScores) {
  ConfidenceScores s = make_scores({0.55, 0.95, 0.75, 0.65, 0.85});
  Selection sel = select(s, 60.0);
  EXPECT_EQ(sel.threshold, 0.75);
  EXPECT_EQ(sel.positions, (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(sel.ids, (std::vector<SampleId>{101, 104}));
}

TEST(SelectFixed, KeepsStrictlyAboveTau) {
  ConfidenceScores s = make_scores({0.5, 0.9, 0.95});
  EXPECT_EQ(select_fixed(s, 0.9).positions, (std::vector<std::size_t>{2}));
  EXPECT_EQ(select_fixed(s, 0.0).positions.size(), 3u);
  EXPECT_THROW(select_fixed(s, 1.0), InvalidArgument);
}

TEST(Select, Properties) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    ConfidenceScores s = make_scores(random_scores(rng, n, trial % 3 == 0));
    double hi = static_cast<double>(rng() % 101), lo = static_cast<double>(rng() % 101);
    if (lo > hi) std::swap(lo, hi);
    Selection a = select(s, hi), b = select(s, lo);
    // Monotone: a higher rank never selects more, and nests inside the lower.
    EXPECT_TRUE(std::includes(b.positions.begin(), b.positions.end(), a.positions.begin(),
                              a.positions.end()));
    // Size bound from the nearest rank.
    if (hi > 0.0) {
      auto rank = static_cast<std::size_t>(std::ceil(hi / 100.0 * static_cast<double>(n)));
      EXPECT_LE(a.positions.size(), n - std::max<std::size_t>(rank, 1));
    } else {
      EXPECT_EQ(a.positions.size(), n);
    }
    // Invariant under a strictly increasing transform of the scores.
    ConfidenceScores t = s;
    for (auto& v : t.values) v = std::exp(3.0 * v) - 7.0;
    EXPECT_EQ(select(t, hi).positions, a.positions);
  }
}

TEST(Confidence, Kinds) {
  Vector p(3);
  p << 0.2, 0.5, 0.3;
  EXPECT_DOUBLE_EQ(confidence(p), 0.5);
  EXPECT_DOUBLE_EQ(confidence(p, ScoreKind::kMargin), 0.2);
  Vector u = Vector::Constant(4, 0.25);
  EXPECT_NEAR(confidence(u, ScoreKind::kNegEntropy), 0.0, 1e-15);
  Vector one = Vector::Zero(4);
  one(2) = 1.0;
  EXPECT_DOUBLE_EQ(confidence(one, ScoreKind::kNegEntropy), 1.0);
}

}  // namespace
}  // namespace curlab
