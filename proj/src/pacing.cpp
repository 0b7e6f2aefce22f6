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

#include "curlab/pacing.hpp"

#include <algorithm>
#include <cmath>

#include "curlab/error.hpp"

namespace curlab {

void PacingSchedule::validate() const {
  if (mode == PacingMode::kPercentile) {
    if (!(delta > 0.0 && delta <= 100.0)) throw InvalidArgument("delta must lie in (0, 100]");
  } else {
    if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in [0, 1)");
  }
}

std::vector<double> schedule_percentiles(double delta) {
  if (!(delta > 0.0 && delta <= 100.0))
    throw InvalidArgument("schedule step must lie in (0, 100], got " + std::to_string(delta));
  std::vector<double> out;
  // Multiplying rather than accumulating keeps entries like 100 - 3 * 20 exact.
  for (int i = 1;; ++i) {
    double t = 100.0 - static_cast<double>(i) * delta;
    if (t <= 0.0) break;
    out.push_back(t);
  }
  out.push_back(0.0);
  return out;
}

double percentile(std::span<const double> values, double r) {
  if (values.empty()) throw InvalidArgument("percentile of an empty score list");
  if (!(r >= 0.0 && r <= 100.0)) throw InvalidArgument("percentile rank must lie in [0, 100]");
  const auto n = values.size();
  double rank = std::ceil(r * static_cast<double>(n) / 100.0);
  std::size_t idx = rank <= 1.0 ? 0 : std::min(n - 1, static_cast<std::size_t>(rank) - 1);
  std::vector<double> sorted(values.begin(), values.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end());
  return sorted[idx];
}

double confidence(const Vector& probs, ScoreKind kind) {
  if (probs.size() == 0) throw InvalidArgument("confidence of an empty distribution");
  switch (kind) {
    case ScoreKind::kMaxProbability:
      return probs.maxCoeff();
    case ScoreKind::kMargin: {
      if (probs.size() == 1) return 1.0;
      double top = -1.0, second = -1.0;
      for (Eigen::Index k = 0; k < probs.size(); ++k) {
        double p = probs(k);
        if (p > top) {
          second = top;
          top = p;
        } else if (p > second) {
          second = p;
        }
      }
      return top - second;
    }
    case ScoreKind::kNegEntropy: {
      if (probs.size() == 1) return 1.0;
      double h = 0.0;
      for (Eigen::Index k = 0; k < probs.size(); ++k)
        if (probs(k) > 0.0) h -= probs(k) * std::log(probs(k));
      return 1.0 - h / std::log(static_cast<double>(probs.size()));
    }
  }
  return probs.maxCoeff();
}

namespace {

template <class Keep>
Selection collect(const ConfidenceScores& scores, double threshold, Keep keep) {
  Selection s;
  s.threshold = threshold;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (keep(scores.values[i])) {
      s.positions.push_back(i);
      s.ids.push_back(scores.ids[i]);
    }
  }
  s.stalled = s.positions.empty();
  return s;
}

}  // namespace

Selection select(const ConfidenceScores& scores, double t_r) {
  if (scores.ids.size() != scores.values.size())
    throw InvalidArgument("select: score ids and values disagree");
  const double t = percentile(scores.values, t_r);
  if (t_r == 0.0) return collect(scores, t, [t](double v) { return v >= t; });
  return collect(scores, t, [t](double v) { return v > t; });
}

Selection select_fixed(const ConfidenceScores& scores, double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("fixed threshold must lie in [0, 1)");
  if (scores.ids.size() != scores.values.size())
    throw InvalidArgument("select_fixed: score ids and values disagree");
  // tau = 0 must keep everything; confidences are strictly positive.
  return collect(scores, tau, [tau](double v) { return v > tau; });
}

}  // namespace curlab
