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

#include "curlab/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curlab/error.hpp"
#include "curlab/optim.hpp"

namespace curlab {

void TrainConfig::validate() const {
  if (epochs < 0) throw InvalidArgument("epochs must be >= 0");
  if (batch_size < 1) throw InvalidArgument("batch size must be >= 1");
  if (!(lr_min <= lr)) throw InvalidArgument("lr_min must not exceed lr");
  if (!(lr_min >= 0.0)) throw InvalidArgument("lr_min must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw InvalidArgument("momentum must lie in [0, 1)");
  if (!(weight_decay >= 0.0)) throw InvalidArgument("weight decay must be >= 0");
  if (swa && (swa_start < 1 || swa_cycle < 1))
    throw InvalidArgument("swa start and cycle must be >= 1");
  augment.validate();
}

TrainResult train(const Matrix& x, std::span<const int> labels, const TrainConfig& config,
                  ModelParams initial, std::uint64_t seed) {
  config.validate();
  if (static_cast<std::size_t>(x.rows()) != labels.size())
    throw InvalidArgument("train: feature rows and labels disagree");
  TrainResult result{std::move(initial), {}, 0};
  if (config.epochs == 0) return result;
  if (x.rows() == 0) throw InvalidArgument("train: empty training set");

  ModelParams& params = result.params;
  const int k = params.arch.classes();
  const Matrix targets = one_hot(labels, k);
  const auto n = static_cast<std::size_t>(x.rows());
  const auto batch = static_cast<std::size_t>(config.batch_size);

  auto opt = OptimizerState::for_params(params, config.momentum, config.weight_decay, config.lr);
  SwaState swa{{}, 0, config.swa_start, config.swa_cycle};
  Rng order_rng(derive_seed(seed, Stream::kTrain));
  Rng aug_rng(derive_seed(seed ^ config.augment.seed, Stream::kAugment));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  result.log.reserve(static_cast<std::size_t>(config.epochs));

  for (int e = 0; e < config.epochs; ++e) {
    const double lr = cosine_lr(e, config.epochs, config.lr, config.lr_min);
    std::shuffle(order.begin(), order.end(), order_rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t m = std::min(batch, n - start);
      Matrix xb(static_cast<Eigen::Index>(m), x.cols());
      Matrix yb(static_cast<Eigen::Index>(m), k);
      for (std::size_t i = 0; i < m; ++i) {
        xb.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(order[start + i]));
        yb.row(static_cast<Eigen::Index>(i)) =
            targets.row(static_cast<Eigen::Index>(order[start + i]));
      }
      augment_batch(xb, yb, config.augment, aug_rng);
      LossAndGrad lg = backward(params, xb, yb);
      if (!std::isfinite(lg.loss))
        throw DivergenceError("non-finite loss at epoch " + std::to_string(e + 1));
      try {
        sgd_step(params, lg.grads, opt, lr);
      } catch (const DivergenceError&) {
        throw DivergenceError("non-finite gradient at epoch " + std::to_string(e + 1));
      }
      loss_sum += lg.loss * static_cast<double>(m);
    }
    opt.epoch = e + 1;
    result.log.push_back({e + 1, lr, loss_sum / static_cast<double>(n)});
    if (config.swa && swa.due(e + 1)) swa_update(swa, params.values);
  }
  if (!params.values.all_finite())
    throw DivergenceError("non-finite parameters after epoch " + std::to_string(config.epochs));
  if (swa.count > 0) params.values = std::move(swa.average);
  result.swa_snapshots = swa.count;
  return result;
}

}  // namespace curlab
