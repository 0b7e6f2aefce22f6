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

#include "curlab/optim.hpp"

#include <cmath>
#include <numbers>

#include "curlab/error.hpp"

namespace curlab {

OptimizerState OptimizerState::for_params(const ModelParams& params, double momentum,
                                          double weight_decay, double base_lr) {
  if (!(momentum >= 0.0 && momentum < 1.0))
    throw InvalidArgument("momentum must lie in [0, 1)");
  if (!(weight_decay >= 0.0)) throw InvalidArgument("weight decay must be >= 0");
  return {ParamSet::zeros(params.arch), momentum, weight_decay, base_lr, 0};
}

void sgd_step(ModelParams& params, const ParamSet& grads, OptimizerState& state, double lr) {
  ParamSet& theta = params.values;
  if (!theta.same_shape(grads) || !theta.same_shape(state.velocity))
    throw InvalidArgument("sgd_step: parameter, gradient and velocity shapes disagree");
  if (!grads.all_finite()) throw DivergenceError("sgd_step: non-finite gradient");
  const double mu = state.momentum;
  const double wd = state.weight_decay;
  for (std::size_t l = 0; l < theta.weights.size(); ++l) {
    Matrix dw = grads.weights[l] + wd * theta.weights[l];
    state.velocity.weights[l] = mu * state.velocity.weights[l] - lr * dw;
    theta.weights[l] += mu * state.velocity.weights[l] - lr * dw;

    Vector db = grads.biases[l] + wd * theta.biases[l];
    state.velocity.biases[l] = mu * state.velocity.biases[l] - lr * db;
    theta.biases[l] += mu * state.velocity.biases[l] - lr * db;
  }
}

double cosine_lr(int epoch, int total_epochs, double lr0, double lr_min) {
  if (total_epochs <= 0 || epoch < 0 || epoch > total_epochs)
    throw InvalidArgument("cosine_lr: epoch must lie in [0, total_epochs]");
  if (epoch == total_epochs) return lr_min;
  double phase = std::numbers::pi * static_cast<double>(epoch) / static_cast<double>(total_epochs);
  return lr_min + 0.5 * (lr0 - lr_min) * (1.0 + std::cos(phase));
}

void swa_update(SwaState& swa, const ParamSet& params) {
  if (swa.count == 0) {
    swa.average = params;
    swa.count = 1;
    return;
  }
  if (!swa.average.same_shape(params)) throw InvalidArgument("swa_update: shape mismatch");
  const double n = static_cast<double>(swa.count);
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    swa.average.weights[l] = (swa.average.weights[l] * n + params.weights[l]) / (n + 1.0);
    swa.average.biases[l] = (swa.average.biases[l] * n + params.biases[l]) / (n + 1.0);
  }
  ++swa.count;
}

}  // namespace curlab
