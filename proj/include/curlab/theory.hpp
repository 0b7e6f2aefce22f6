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
#include <string>
#include <vector>

#include "curlab/model.hpp"

namespace curlab::theory {

// exp(-loss).
double utility(double loss);

// Cross entropy of the current prediction against the previous round's
// predictive distribution used as a soft target.
double unlabeled_loss(const Vector& current_probs, const Vector& previous_probs);
double unlabeled_loss(const ModelParams& current, const ModelParams& previous, const Vector& x);

// Mean labeled loss plus mean unlabeled loss.
double regularized_empirical_loss(std::span<const double> labeled_losses,
                                  std::span<const double> unlabeled_losses);

// Mean that is exact for constant inputs.
double mean(std::span<const double> v);

// Sum over j of (u_j - mean u)(p_j - mean p), the unnormalized sample
// covariance appearing in the utility decomposition.
double covariance(std::span<const double> u, std::span<const double> p);

// 1/M on the samples whose scores fall in the top mu percent (nearest-rank,
// matching pacing::select at T_r = 100 - mu), 0 elsewhere.
std::vector<double> pacing_prior(std::span<const double> scores, double mu);

struct IdentitySides {
  double lhs = 0.0;         // sum_j u_j p_j
  double rhs = 0.0;         // covariance + M * mean(u) * mean(p)
  double covariance = 0.0;
  double mean_term = 0.0;   // M * mean(u) * mean(p)

  double relative_residual() const;
};

// Both sides of sum u p = sum (u - Eu)(p - Ep) + M Eu Ep. Exact for any reals.
IdentitySides covariance_identity(std::span<const double> u, std::span<const double> p);

struct UtilityGainReport {
  double mu = 0.0;
  double covariance = 0.0;
  int sign = 0;  // -1, 0, +1
};

UtilityGainReport utility_gain_check(std::span<const double> u, std::span<const double> scores,
                                     double mu);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 20200827;
  int draws = 1000;
  std::size_t max_m = 10000;
  // Test hook: corrupts the right-hand side so the identity check must fail.
  bool inject_fault = false;
};

inline constexpr double kIdentityTolerance = 1e-9;

std::vector<CheckResult> run_checks(const CheckOptions& options);

// Aligned pass/fail table.
std::string format_report(const std::vector<CheckResult>& results);

}  // namespace curlab::theory
