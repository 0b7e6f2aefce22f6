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
#include <numbers>

#include "curlab/error.hpp"
#include "curlab/optim.hpp"

namespace curlab {
namespace {

ModelParams scalar_model(double w, double b) {
  ModelParams m = zero_params(Architecture{{1, 1}});
  m.values.weights[0](0, 0) = w;
  m.values.biases[0](0) = b;
  return m;
}

ParamSet scalar_grad(double gw, double gb) {
  ParamSet g = ParamSet::zeros(Architecture{{1, 1}});
  g.weights[0](0, 0) = gw;
  g.biases[0](0) = gb;
  return g;
}

TEST(Sgd, PlainStepWithoutMomentumOrDecay) {
  ModelParams m = scalar_model(1.0, -2.0);
  auto st = OptimizerState::for_params(m, 0.0, 0.0, 0.1);
  sgd_step(m, scalar_grad(3.0, -1.0), st, 0.1);
  EXPECT_DOUBLE_EQ(m.values.weights[0](0, 0), 1.0 - 0.3);
  EXPECT_DOUBLE_EQ(m.values.biases[0](0), -2.0 + 0.1);
}

TEST(Sgd, DecayAloneShrinks) {
  ModelParams m = scalar_model(2.0, -4.0);
  auto st = OptimizerState::for_params(m, 0.0, 0.5, 0.1);
  sgd_step(m, scalar_grad(0.0, 0.0), st, 0.1);
  EXPECT_DOUBLE_EQ(m.values.weights[0](0, 0), 2.0 * (1.0 - 0.05));
  EXPECT_DOUBLE_EQ(m.values.biases[0](0), -4.0 * (1.0 - 0.05));
}

TEST(Sgd, NesterovRecurrenceTwoSteps) {
  const double mu = 0.9, wd = 0.01, lr = 0.05;
  ModelParams m = scalar_model(1.5, 0.0);
  auto st = OptimizerState::for_params(m, mu, wd, lr);
  double theta = 1.5, v = 0.0;
  const double grads[2] = {0.7, -0.4};
  for (double g : grads) {
    sgd_step(m, scalar_grad(g, 0.0), st, lr);
    double d = g + wd * theta;
    v = mu * v - lr * d;
    theta = theta + mu * v - lr * d;
    EXPECT_NEAR(m.values.weights[0](0, 0), theta, 1e-15);
    EXPECT_NEAR(st.velocity.weights[0](0, 0), v, 1e-15);
  }
}

TEST(Sgd, NonFiniteGradientIsDivergence) {
  ModelParams m = scalar_model(1.0, 0.0);
  auto st = OptimizerState::for_params(m, 0.9, 0.0, 0.1);
  EXPECT_THROW(sgd_step(m, scalar_grad(NAN, 0.0), st, 0.1), DivergenceError);
}

TEST(Sgd, RejectsMomentumOutOfRange) {
  ModelParams m = scalar_model(1.0, 0.0);
  EXPECT_THROW(OptimizerState::for_params(m, 1.0, 0.0, 0.1), InvalidArgument);
  EXPECT_THROW(OptimizerState::for_params(m, 0.5, -1.0, 0.1), InvalidArgument);
}

TEST(Cosine, Examples) {
  EXPECT_DOUBLE_EQ(cosine_lr(0, 200, 0.1, 0.0), 0.1);
  EXPECT_NEAR(cosine_lr(100, 200, 0.1, 0.0), 0.05, 1e-15);
  EXPECT_DOUBLE_EQ(cosine_lr(200, 200, 0.1, 0.0), 0.0);
  EXPECT_NEAR(cosine_lr(50, 200, 0.1, 0.01), 0.01 + 0.045 * (1.0 + std::cos(std::numbers::pi / 4)),
              1e-15);
  EXPECT_THROW(cosine_lr(201, 200, 0.1, 0.0), InvalidArgument);
}

TEST(Cosine, MonotoneNonIncreasing) {
  double prev = cosine_lr(0, 37, 0.3, 0.001);
  for (int e = 1; e <= 37; ++e) {
    double cur = cosine_lr(e, 37, 0.3, 0.001);
    EXPECT_LE(cur, prev);
    EXPECT_GE(cur, 0.001);
    prev = cur;
  }
}

TEST(Swa, RunningMeanOfSnapshots) {
  SwaState swa;
  const double values[3] = {1.0, 2.0, 6.0};
  for (double v : values) swa_update(swa, scalar_model(v, -v).values);
  EXPECT_EQ(swa.count, 3);
  EXPECT_DOUBLE_EQ(swa.average.weights[0](0, 0), 3.0);
  EXPECT_DOUBLE_EQ(swa.average.biases[0](0), -3.0);
}

TEST(Swa, DueSchedule) {
  SwaState swa;
  swa.start_epoch = 120;
  swa.cycle = 5;
  int count = 0;
  for (int e = 1; e <= 200; ++e) count += swa.due(e) ? 1 : 0;
  EXPECT_EQ(count, 17);  // 120, 125, ..., 200
  EXPECT_FALSE(swa.due(119));
  EXPECT_TRUE(swa.due(120));
  EXPECT_FALSE(swa.due(121));
}

}  // namespace
}  // namespace curlab
