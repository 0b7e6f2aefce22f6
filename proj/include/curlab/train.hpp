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

#include <cstdint>
#include <span>
#include <vector>

#include "curlab/augment.hpp"
#include "curlab/model.hpp"

namespace curlab {

struct TrainConfig {
  int epochs = 200;
  int batch_size = 64;
  double lr = 0.1;
  double lr_min = 0.0;
  double momentum = 0.9;
  double weight_decay = 5e-4;
  bool swa = true;
  int swa_start = 120;
  int swa_cycle = 5;
  AugmentConfig augment;

  void validate() const;  // throws InvalidArgument
};

struct EpochLog {
  int epoch = 0;  // 1-based
  double lr = 0.0;
  double loss = 0.0;
};

struct TrainResult {
  ModelParams params;  // SWA average when snapshots were taken
  std::vector<EpochLog> log;
  int swa_snapshots = 0;
};

// Shuffled mini-batch SGD under the cosine schedule. `seed` drives the batch
// order and augmentation noise; `initial` is consumed as the starting point.
// Throws DivergenceError (message carries the epoch) on a non-finite loss.
TrainResult train(const Matrix& x, std::span<const int> labels, const TrainConfig& config,
                  ModelParams initial, std::uint64_t seed);

inline TrainResult train(const Dataset& data, const TrainConfig& config, ModelParams initial,
                         std::uint64_t seed) {
  return train(data.features(), data.labels(), config, std::move(initial), seed);
}

}  // namespace curlab
