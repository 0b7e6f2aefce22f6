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

#include "curlab/curriculum.hpp"

#include <algorithm>
#include <unordered_set>

#include "curlab/error.hpp"
#include "curlab/random.hpp"

namespace curlab {

std::string to_string(ReinitPolicy policy) {
  return policy == ReinitPolicy::kReinit ? "reinit" : "finetune";
}

void CurriculumConfig::validate() const {
  pacing.validate();
  train.validate();
  for (int w : hidden)
    if (w < 1) throw InvalidArgument("hidden layer width must be >= 1");
}

Architecture CurriculumConfig::architecture(int inputs, int classes) const {
  return Architecture::mlp(inputs, hidden, classes);
}

std::uint64_t round_init_seed(std::uint64_t seed, int round) {
  return derive_seed(seed, Stream::kInit, {static_cast<std::uint64_t>(round)});
}

std::uint64_t round_train_seed(std::uint64_t seed, int round) {
  return derive_seed(seed, Stream::kTrain, {static_cast<std::uint64_t>(round)});
}

PseudoLabelRecord pseudo_label(const ModelParams& model, const Vector& x, SampleId id, int round) {
  Vector p = forward_probs(model, x);
  int k = argmax(p);
  return {id, k, p(k), round};
}

ScoredPool score_unlabeled(const ModelParams& model, const Dataset& pool, ScoreKind kind) {
  ScoredPool out;
  if (pool.empty()) return out;
  Matrix probs = predict_probs(model, pool.features());
  out.scores.ids = pool.ids();
  out.scores.values.reserve(pool.size());
  out.predicted.reserve(pool.size());
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    Vector p = probs.row(r).transpose();
    out.predicted.push_back(argmax(p));
    out.scores.values.push_back(confidence(p, kind));
  }
  return out;
}

SelfTrainer::SelfTrainer(const SslSplit& split, CurriculumConfig config)
    : split_(split), config_(std::move(config)) {
  config_.validate();
  if (split_.labeled().empty()) throw DataError("self-training needs a nonempty labeled set");
  arch_ = config_.architecture(static_cast<int>(split_.num_features()), split_.num_classes());
}

const RoundRecord& SelfTrainer::supervised() {
  if (supervised_) return *supervised_;
  const Dataset& labeled = split_.labeled();
  auto result = train(labeled, config_.train, init_params(arch_, round_init_seed(config_.seed, 0)),
                      round_train_seed(config_.seed, 0));
  model_ = std::move(result.params);
  round_ = 0;
  RoundRecord rec;
  rec.round = 0;
  rec.train_size = labeled.size();
  rec.val_error = error_rate(model_, split_.validation());
  rec.test_error = error_rate(model_, split_.test());
  supervised_ = rec;
  return *supervised_;
}

RoundRecord SelfTrainer::run_round(double percentile_rank) {
  if (!supervised_) supervised();
  const Dataset& pool = split_.unlabeled();
  ScoredPool scored = score_unlabeled(model_, pool, config_.score);
  Selection sel;
  if (!pool.empty()) sel = select(scored.scores, percentile_rank);
  return finish_round(percentile_rank, sel, scored, pool.empty());
}

RoundRecord SelfTrainer::run_fixed_round(double tau) {
  if (!supervised_) supervised();
  const Dataset& pool = split_.unlabeled();
  ScoredPool scored = score_unlabeled(model_, pool, config_.score);
  Selection sel;
  sel.threshold = tau;
  if (!pool.empty()) sel = select_fixed(scored.scores, tau);
  return finish_round(std::nullopt, sel, scored, pool.empty());
}

RoundRecord SelfTrainer::finish_round(std::optional<double> percentile_rank,
                                      const Selection& sel, const ScoredPool& scored,
                                      bool pool_empty) {
  const int t = round_ + 1;
  const Dataset& labeled = split_.labeled();
  const Dataset& pool = split_.unlabeled();
  const auto& oracle = split_.oracle_labels();

  RoundRecord rec;
  rec.round = t;
  rec.percentile = percentile_rank;
  if (!pool_empty) rec.threshold = sel.threshold;
  rec.selected = sel.ids;
  rec.stalled = !pool_empty && sel.stalled;

  // X_t := D_L, then the selected pool rows with their pseudo-labels.
  const auto n_l = static_cast<Eigen::Index>(labeled.size());
  const auto n_s = static_cast<Eigen::Index>(sel.positions.size());
  Matrix x(n_l + n_s, labeled.num_features());
  x.topRows(n_l) = labeled.features();
  std::vector<int> y = labeled.labels();
  y.reserve(static_cast<std::size_t>(n_l + n_s));
  std::size_t correct = 0;
  rec.pseudo_labels.reserve(sel.positions.size());
  for (Eigen::Index i = 0; i < n_s; ++i) {
    std::size_t row = sel.positions[static_cast<std::size_t>(i)];
    x.row(n_l + i) = pool.features().row(static_cast<Eigen::Index>(row));
    int cls = scored.predicted[row];
    y.push_back(cls);
    rec.pseudo_labels.push_back({pool.ids()[row], cls, scored.scores.values[row], t});
    if (oracle[row] == cls) ++correct;
  }
  rec.train_size = static_cast<std::size_t>(n_l + n_s);
  if (n_s > 0) rec.pseudo_label_accuracy = static_cast<double>(correct) / static_cast<double>(n_s);
  if (!pool_empty) {
    std::size_t pool_correct = 0;
    for (std::size_t r = 0; r < pool.size(); ++r)
      if (oracle[r] == scored.predicted[r]) ++pool_correct;
    rec.pool_accuracy = static_cast<double>(pool_correct) / static_cast<double>(pool.size());
  }

  std::unordered_set<SampleId> now(sel.ids.begin(), sel.ids.end());
  rec.n_departed = static_cast<std::size_t>(std::count_if(
      previous_selection_.begin(), previous_selection_.end(),
      [&](SampleId id) { return !now.contains(id); }));

  ModelParams start = config_.reinit == ReinitPolicy::kReinit
                          ? init_params(arch_, round_init_seed(config_.seed, t))
                          : model_;
  try {
    auto result = train(x, y, config_.train, std::move(start), round_train_seed(config_.seed, t));
    model_ = std::move(result.params);
  } catch (const DivergenceError& e) {
    throw DivergenceError("round " + std::to_string(t) + ": " + e.what());
  }
  rec.val_error = error_rate(model_, split_.validation());
  rec.test_error = error_rate(model_, split_.test());

  previous_selection_ = sel.ids;
  round_ = t;
  return rec;
}

namespace {

void note_round(CurriculumResult& result, const RoundRecord& rec, const ModelParams& model,
                const CurriculumConfig& config, const RoundObserver& observer) {
  if (rec.stalled)
    result.warnings.push_back("round " + std::to_string(rec.round) +
                              ": empty selection; trained on the labeled set alone");
  result.rounds.push_back(rec);
  if (config.keep_checkpoints) result.checkpoints.push_back(model);
  if (observer) observer(rec, model);
}

void finalize(CurriculumResult& result, const SelfTrainer& trainer) {
  result.final_model = trainer.model();
  result.final_test_error = result.rounds.back().test_error;
}

}  // namespace

CurriculumResult run_curriculum(const SslSplit& split, const CurriculumConfig& config,
                                const RoundObserver& observer) {
  if (config.pacing.mode != PacingMode::kPercentile)
    throw InvalidArgument("run_curriculum needs a percentile schedule");
  SelfTrainer trainer(split, config);
  CurriculumResult result;
  note_round(result, trainer.supervised(), trainer.model(), config, observer);
  for (double t_r : schedule_percentiles(config.pacing.delta))
    note_round(result, trainer.run_round(t_r), trainer.model(), config, observer);

  const std::size_t full = split.labeled().size() + split.unlabeled().size();
  if (result.rounds.back().train_size != full)
    throw Error("curriculum ended with " + std::to_string(result.rounds.back().train_size) +
                " training samples; expected " + std::to_string(full));
  finalize(result, trainer);
  return result;
}

CurriculumResult run_vanilla_pl(const SslSplit& split, const CurriculumConfig& config,
                                double tau, int n_rounds, const RoundObserver& observer) {
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in [0, 1)");
  if (n_rounds < 1) throw InvalidArgument("vanilla pseudo-labeling needs at least one round");
  SelfTrainer trainer(split, config);
  CurriculumResult result;
  note_round(result, trainer.supervised(), trainer.model(), config, observer);
  for (int i = 0; i < n_rounds; ++i)
    note_round(result, trainer.run_fixed_round(tau), trainer.model(), config, observer);
  finalize(result, trainer);
  return result;
}

CurriculumResult run_supervised(const SslSplit& split, const CurriculumConfig& config) {
  SelfTrainer trainer(split, config);
  CurriculumResult result;
  note_round(result, trainer.supervised(), trainer.model(), config, {});
  finalize(result, trainer);
  return result;
}

}  // namespace curlab
