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

#pragma once

#include "curlab/model.hpp"

namespace curlab {

struct OptimizerState {
  ParamSet velocity;
  double momentum = 0.9;
  double weight_decay = 5e-4;
  double base_lr = 0.1;
  int epoch = 0;

  static OptimizerState for_params(const ModelParams& params, double momentum,
                                   double weight_decay, double base_lr);
};

// Nesterov momentum with coupled weight decay:
//   d = g + wd * theta
//   v = mu * v - lr * d
//   theta = theta + mu * v - lr * d
// Throws DivergenceError on non-finite gradients.
void sgd_step(ModelParams& params, const ParamSet& grads, OptimizerState& state, double lr);

// Cosine annealing from lr0 at epoch 0 to lr_min at epoch == total_epochs.
double cosine_lr(int epoch, int total_epochs, double lr0, double lr_min);

/// Running mean of parameter snapshots.
struct SwaState {
  ParamSet average;
  int count = 0;
  int start_epoch = 120;
  int cycle = 5;

  // True when a snapshot is due after finishing `epoch` (1-based).
  bool due(int epoch) const {
    return cycle > 0 && epoch >= start_epoch && (epoch - start_epoch) % cycle == 0;
  }
};

void swa_update(SwaState& swa, const ParamSet& params);

}  // namespace curlab
