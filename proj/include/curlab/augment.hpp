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
#include <string>

#include "curlab/data.hpp"
#include "curlab/random.hpp"

namespace curlab {

// Feature-space augmentation tiers. `moderate` is Gaussian jitter;
// `moderate+mixup` is the heavy tier.
enum class AugmentMode { kNone, kModerate, kMixup, kModerateMixup };

std::string to_string(AugmentMode mode);
AugmentMode parse_augment_mode(const std::string& name);  // throws InvalidArgument

struct AugmentConfig {
  AugmentMode mode = AugmentMode::kModerate;
  double jitter_sigma = 0.1;
  double mixup_alpha = 1.0;
  std::uint64_t seed = 0;

  bool uses_jitter() const {
    return mode == AugmentMode::kModerate || mode == AugmentMode::kModerateMixup;
  }
  bool uses_mixup() const {
    return mode == AugmentMode::kMixup || mode == AugmentMode::kModerateMixup;
  }
  void validate() const;
};

// x + N(0, sigma^2) per coordinate.
Vector jitter(const Vector& x, double sigma, Rng& rng);

struct Mixed {
  Vector x;
  Vector y;
};

// Convex combination lambda * (x_i, y_i) + (1 - lambda) * (x_j, y_j).
Mixed mixup(const Vector& xi, const Vector& yi, const Vector& xj, const Vector& yj,
            double lambda);

// Beta(alpha, alpha) draw.
double sample_mixup_lambda(double alpha, Rng& rng);

// In-place batch augmentation: jitter every row, then mix the batch with a
// permutation of itself under one lambda.
void augment_batch(Matrix& x, Matrix& targets, const AugmentConfig& config, Rng& rng);

}  // namespace curlab
