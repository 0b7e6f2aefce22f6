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

#include "curlab/augment.hpp"

#include <algorithm>
#include <numeric>

#include "curlab/error.hpp"

namespace curlab {

std::string to_string(AugmentMode mode) {
  switch (mode) {
    case AugmentMode::kNone: return "none";
    case AugmentMode::kModerate: return "moderate";
    case AugmentMode::kMixup: return "mixup";
    case AugmentMode::kModerateMixup: return "moderate+mixup";
  }
  return "none";
}

AugmentMode parse_augment_mode(const std::string& name) {
  if (name == "none") return AugmentMode::kNone;
  if (name == "moderate") return AugmentMode::kModerate;
  if (name == "mixup") return AugmentMode::kMixup;
  if (name == "moderate+mixup" || name == "heavy") return AugmentMode::kModerateMixup;
  throw InvalidArgument("unknown augmentation mode '" + name +
                        "' (expected none, moderate, mixup or moderate+mixup)");
}

void AugmentConfig::validate() const {
  if (!(jitter_sigma >= 0.0)) throw InvalidArgument("jitter sigma must be >= 0");
  if (!(mixup_alpha > 0.0)) throw InvalidArgument("mixup alpha must be > 0");
}

Vector jitter(const Vector& x, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw InvalidArgument("jitter: sigma must be >= 0");
  if (sigma == 0.0) return x;
  std::normal_distribution<double> noise(0.0, sigma);
  Vector out = x;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += noise(rng);
  return out;
}

Mixed mixup(const Vector& xi, const Vector& yi, const Vector& xj, const Vector& yj,
            double lambda) {
  if (xi.size() != xj.size() || yi.size() != yj.size())
    throw InvalidArgument("mixup: dimension mismatch");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("mixup: lambda outside [0, 1]");
  const double rest = 1.0 - lambda;
  Mixed m{Vector(xi.size()), Vector(yi.size())};
  for (Eigen::Index k = 0; k < xi.size(); ++k) m.x(k) = lambda * xi(k) + rest * xj(k);
  for (Eigen::Index k = 0; k < yi.size(); ++k) m.y(k) = lambda * yi(k) + rest * yj(k);
  return m;
}

double sample_mixup_lambda(double alpha, Rng& rng) {
  if (!(alpha > 0.0)) throw InvalidArgument("mixup alpha must be > 0");
  std::gamma_distribution<double> g(alpha, 1.0);
  double a = g(rng), b = g(rng);
  if (a + b == 0.0) return 0.5;
  return a / (a + b);
}

void augment_batch(Matrix& x, Matrix& targets, const AugmentConfig& config, Rng& rng) {
  if (config.uses_jitter() && config.jitter_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, config.jitter_sigma);
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) += noise(rng);
  }
  if (config.uses_mixup() && x.rows() > 1) {
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(x.rows()));
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const double lambda = sample_mixup_lambda(config.mixup_alpha, rng);
    Matrix xs = x, ys = targets;
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      Eigen::Index j = perm[static_cast<std::size_t>(r)];
      Mixed m = mixup(xs.row(r).transpose(), ys.row(r).transpose(), xs.row(j).transpose(),
                      ys.row(j).transpose(), lambda);
      x.row(r) = m.x.transpose();
      targets.row(r) = m.y.transpose();
    }
  }
}

}  // namespace curlab
