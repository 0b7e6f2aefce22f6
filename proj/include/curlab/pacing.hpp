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

#include <span>
#include <string>
#include <vector>

#include "curlab/data.hpp"

namespace curlab {

enum class PacingMode { kPercentile, kFixed };

/// Percentile mode steps T_r = 100 - delta, 100 - 2 delta, ..., 0.
/// Fixed mode applies one confidence threshold tau every round.
struct PacingSchedule {
  PacingMode mode = PacingMode::kPercentile;
  double delta = 20.0;
  double tau = 0.9;

  void validate() const;  // throws InvalidArgument
};

// Strictly decreasing sequence ending in exactly one 0 entry.
std::vector<double> schedule_percentiles(double delta);

// Nearest-rank percentile: the ceil(r/100 * n)-th smallest value (1-based,
// clamped to [1, n]); r = 0 yields the minimum. Always an element of `values`.
double percentile(std::span<const double> values, double r);

/// Confidence per unlabeled sample; `ids[i]` pairs with `values[i]`.
struct ConfidenceScores {
  std::vector<SampleId> ids;
  std::vector<double> values;
  std::size_t size() const { return ids.size(); }
};

enum class ScoreKind { kMaxProbability, kMargin, kNegEntropy };

// Confidence of one predictive distribution. kMaxProbability is the default
// criterion; margin (top-1 minus top-2) and 1 - H(p)/log K are alternatives.
double confidence(const Vector& probs, ScoreKind kind = ScoreKind::kMaxProbability);

struct Selection {
  std::vector<std::size_t> positions;  // indices into the scored list, ascending
  std::vector<SampleId> ids;
  double threshold = 0.0;
  bool stalled = false;  // empty selection
};

// T = percentile(scores, t_r); keeps score > T, or score >= T when t_r == 0
// so the final round always takes the whole pool.
Selection select(const ConfidenceScores& scores, double t_r);

// Keeps score > tau. tau = 0 is vanilla pseudo-labeling (everything).
Selection select_fixed(const ConfidenceScores& scores, double tau);

}  // namespace curlab
