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

#include <cmath>
#include <random>

#include "curlab/error.hpp"
#include "curlab/theory.hpp"

namespace curlab::theory {
namespace {

TEST(Utility, Examples) {
  EXPECT_EQ(utility(0.0), 1.0);
  EXPECT_DOUBLE_EQ(utility(std::log(2.0)), 0.5);
  EXPECT_LT(utility(50.0), 1e-21);
}

TEST(UnlabeledLoss, SoftTargetCrossEntropy) {
  Vector cur(2), prev(2);
  cur << 0.8, 0.2;
  prev << 0.5, 0.5;
  EXPECT_DOUBLE_EQ(unlabeled_loss(cur, prev), -0.5 * std::log(0.8) - 0.5 * std::log(0.2));
  // Identical uniform models: the loss is log K.
  ModelParams z = zero_params(Architecture::softmax_regression(3, 4));
  EXPECT_NEAR(unlabeled_loss(z, z, Vector::Ones(3)), std::log(4.0), 1e-15);
}

TEST(RegularizedLoss, SumOfMeans) {
  std::vector<double> a = {1.0, 3.0}, b = {0.5, 0.5, 2.0};
  EXPECT_DOUBLE_EQ(regularized_empirical_loss(a, b), 2.0 + 1.0);
  EXPECT_THROW(regularized_empirical_loss(a, {}), InvalidArgument);
}

TEST(PacingPrior, Cases) {
  std::vector<double> s = {0.1, 0.9, 0.5, 0.7, 0.3};
  auto full = pacing_prior(s, 100.0);
  for (double v : full) EXPECT_DOUBLE_EQ(v, 0.2);
  auto top40 = pacing_prior(s, 40.0);
  EXPECT_EQ(top40, (std::vector<double>{0, 0.2, 0, 0.2, 0}));
  auto none = pacing_prior(s, 0.0);
  for (double v : none) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(pacing_prior(s, 120.0), InvalidArgument);
  EXPECT_TRUE(pacing_prior(std::vector<double>{}, 50.0).empty());
}

TEST(PacingPrior, MassNeverExceedsOne) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> s(1 + rng() % 300);
    for (auto& v : s) v = u(rng);
    double mu = static_cast<double>(rng() % 101);
    double mass = 0.0;
    for (double v : pacing_prior(s, mu)) mass += v;
    EXPECT_LE(mass, 1.0 + 1e-12);
    EXPECT_GE(mass, mu / 100.0 - 1.0 / static_cast<double>(s.size()) - 1e-12);
  }
}

TEST(Identity, HoldsAtTenThousandEntries) {
  std::mt19937_64 rng(20200827);
  std::normal_distribution<double> g;
  const std::size_t m = 10000;
  std::vector<double> u(m), p(m);
  for (std::size_t j = 0; j < m; ++j) u[j] = g(rng), p[j] = 3.0 + g(rng);
  IdentitySides s = covariance_identity(u, p);
  // Extended-precision oracle for the left side.
  long double lhs = 0.0L;
  for (std::size_t j = 0; j < m; ++j) lhs += static_cast<long double>(u[j]) * p[j];
  EXPECT_NEAR(s.lhs, static_cast<double>(lhs), 1e-9 * std::max(1.0, std::abs(s.lhs)));
  EXPECT_LE(s.relative_residual(), kIdentityTolerance);
}

TEST(Identity, ConstantVectorsHaveZeroCovariance) {
  std::vector<double> u = {0.1, 0.1, 0.1}, p = {2.0, -1.0, 5.0};
  EXPECT_EQ(covariance(u, p), 0.0);
  EXPECT_EQ(mean(u), 0.1);
  EXPECT_THROW(covariance_identity(std::vector<double>{}, std::vector<double>{}), InvalidArgument);
}

TEST(GainSign, TopUtilityPriorIsNonNegative) {
  std::vector<double> u = {0.9, 0.2, 0.6, 0.4};
  std::vector<double> neg = {-0.9, -0.2, -0.6, -0.4};
  EXPECT_EQ(utility_gain_check(u, u, 50.0).sign, 1);
  EXPECT_EQ(utility_gain_check(u, neg, 50.0).sign, -1);
  EXPECT_EQ(utility_gain_check(u, u, 100.0).sign, 0);
}

TEST(RunChecks, DefaultsPass) {
  CheckOptions opt;
  opt.draws = 200;
  auto results = run_checks(opt);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << " " << r.residual;
  std::string report = format_report(results);
  EXPECT_NE(report.find("PASS"), std::string::npos);
}

TEST(RunChecks, InjectedFaultFails) {
  CheckOptions opt;
  opt.draws = 20;
  opt.inject_fault = true;
  bool any_failed = false;
  for (const auto& r : run_checks(opt)) any_failed = any_failed || !r.passed;
  EXPECT_TRUE(any_failed);
  EXPECT_NE(format_report(run_checks(opt)).find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace curlab::theory
