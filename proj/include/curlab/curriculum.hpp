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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curlab/data.hpp"
#include "curlab/model.hpp"
#include "curlab/pacing.hpp"
#include "curlab/train.hpp"

namespace curlab {

enum class ReinitPolicy { kReinit, kFinetune };

std::string to_string(ReinitPolicy policy);

struct CurriculumConfig {
  PacingSchedule pacing;
  ReinitPolicy reinit = ReinitPolicy::kReinit;
  TrainConfig train;
  // Hidden widths; input and output widths come from the data. Empty is
  // softmax regression.
  std::vector<int> hidden = {16, 16};
  ScoreKind score = ScoreKind::kMaxProbability;
  bool keep_checkpoints = true;
  std::uint64_t seed = 0;

  void validate() const;
  Architecture architecture(int inputs, int classes) const;
};

// Fresh-initialization seed of round t. Round 0 is the supervised model.
std::uint64_t round_init_seed(std::uint64_t seed, int round);
std::uint64_t round_train_seed(std::uint64_t seed, int round);

// argmax class (lowest index on ties) and its probability.
PseudoLabelRecord pseudo_label(const ModelParams& model, const Vector& x, SampleId id = 0,
                               int round = 0);

struct ScoredPool {
  ConfidenceScores scores;
  std::vector<int> predicted;  // argmax class per pool row
};

// Scores every row of `pool` without augmentation.
ScoredPool score_unlabeled(const ModelParams& model, const Dataset& pool,
                           ScoreKind kind = ScoreKind::kMaxProbability);

/// Stateful driver of the self-training loop over one split.
///
/// `supervised()` must run first; each later round scores the whole unlabeled
/// pool with the current model, selects, rebuilds X_t = D_L ∪ selected and
/// trains a new model (fresh or finetuned, per the config).
class SelfTrainer {
 public:
  SelfTrainer(const SslSplit& split, CurriculumConfig config);

  const RoundRecord& supervised();
  RoundRecord run_round(double percentile_rank);
  RoundRecord run_fixed_round(double tau);

  const ModelParams& model() const { return model_; }
  int rounds_done() const { return round_; }
  const CurriculumConfig& config() const { return config_; }

 private:
  RoundRecord finish_round(std::optional<double> percentile, const Selection& selection,
                           const ScoredPool& scored, bool pool_empty);

  const SslSplit& split_;
  CurriculumConfig config_;
  Architecture arch_;
  ModelParams model_;
  std::optional<RoundRecord> supervised_;
  std::vector<SampleId> previous_selection_;
  int round_ = -1;
};

struct CurriculumResult {
  std::vector<RoundRecord> rounds;  // rounds[0] is the supervised model
  std::vector<ModelParams> checkpoints;  // per round, when kept
  ModelParams final_model;
  double final_test_error = 0.0;
  std::vector<std::string> warnings;
};

// Called after every round (including round 0) with the model it produced.
using RoundObserver = std::function<void(const RoundRecord&, const ModelParams&)>;

// Supervised round, then one round per schedule entry until T_r = 0 has
// pulled in the entire pool.
CurriculumResult run_curriculum(const SslSplit& split, const CurriculumConfig& config,
                                const RoundObserver& observer = {});

// Fixed-threshold pseudo-labeling for `n_rounds` rounds after the supervised one.
CurriculumResult run_vanilla_pl(const SslSplit& split, const CurriculumConfig& config,
                                double tau, int n_rounds, const RoundObserver& observer = {});

// Supervised-only baseline (round 0 alone).
CurriculumResult run_supervised(const SslSplit& split, const CurriculumConfig& config);

}  // namespace curlab
