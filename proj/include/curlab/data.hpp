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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace curlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SampleId = std::uint64_t;

/// Feature matrix with optional class labels and stable per-row ids.
///
/// Immutable after construction. The constructor enforces the invariants:
/// finite features, labels in [0, num_classes), unique ids.
class Dataset {
 public:
  Dataset() = default;
  Dataset(Matrix features, std::vector<SampleId> ids,
          std::optional<std::vector<int>> labels, int num_classes);

  // Ids are assigned from the row index.
  static Dataset from_rows(Matrix features, std::optional<std::vector<int>> labels,
                           int num_classes);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  Eigen::Index num_features() const { return features_.cols(); }
  int num_classes() const { return num_classes_; }

  const Matrix& features() const { return features_; }
  const std::vector<SampleId>& ids() const { return ids_; }
  bool has_labels() const { return labels_.has_value(); }
  // Throws DataError when the dataset is unlabeled.
  const std::vector<int>& labels() const;

  Dataset subset(std::span<const std::size_t> rows) const;
  Dataset without_labels() const;
  Dataset with_features(Matrix features) const;

 private:
  Matrix features_;
  std::vector<SampleId> ids_;
  std::optional<std::vector<int>> labels_;
  int num_classes_ = 0;
};

/// Labeled / unlabeled / validation / test partition.
///
/// The unlabeled split carries no labels. Its ground truth is kept aside in
/// `oracle_labels()` for evaluation-only diagnostics (pseudo-label accuracy);
/// no training entry point accepts an SslSplit's oracle labels.
class SslSplit {
 public:
  SslSplit() = default;
  // `oracle_labels[i]` belongs to unlabeled row i; -1 marks a sample whose
  // true class lies outside the label space (out-of-distribution).
  SslSplit(Dataset labeled, Dataset unlabeled, std::vector<int> oracle_labels,
           Dataset validation, Dataset test);

  const Dataset& labeled() const { return labeled_; }
  const Dataset& unlabeled() const { return unlabeled_; }
  const Dataset& validation() const { return validation_; }
  const Dataset& test() const { return test_; }
  const std::vector<int>& oracle_labels() const { return oracle_labels_; }
  int num_classes() const { return labeled_.num_classes(); }
  Eigen::Index num_features() const { return labeled_.num_features(); }

  // Same partition with every feature matrix replaced through `fn`.
  template <class Fn>
  SslSplit map_features(Fn&& fn) const {
    return SslSplit(labeled_.with_features(fn(labeled_.features())),
                    unlabeled_.with_features(fn(unlabeled_.features())), oracle_labels_,
                    validation_.with_features(fn(validation_.features())),
                    test_.with_features(fn(test_.features())));
  }

 private:
  Dataset labeled_;
  Dataset unlabeled_;
  std::vector<int> oracle_labels_;
  Dataset validation_;
  Dataset test_;
};

// Stratified labeled split; the rest is shuffled into validation, test and
// the unlabeled pool, in that order. Deterministic in `seed`.
SslSplit split_ssl(const Dataset& dataset, std::size_t n_labeled, std::size_t n_val,
                   std::size_t n_test, std::uint64_t seed);

struct NormStats {
  Vector mean;
  Vector scale;  // stdev, or 1 for zero-variance columns

  Matrix apply(const Matrix& x) const;
};

struct Standardized {
  SslSplit split;
  NormStats stats;
};

// Statistics come from labeled ∪ unlabeled features only; validation and
// test are transformed but never inform the statistics.
Standardized standardize(const SslSplit& split);

struct CsvSchema {
  std::string label_column;                  // empty: no labels
  std::vector<std::string> feature_columns;  // empty: every non-label column
  // Fixed class-name order. When set, labels outside it are an error;
  // otherwise classes are numbered in first-seen order.
  std::optional<std::vector<std::string>> label_map;
};

struct CsvData {
  Dataset dataset;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;  // index -> original label text
};

CsvData load_csv(const std::filesystem::path& path, const CsvSchema& schema);

// Writes features with shortest round-trip formatting; the label column is
// written when the dataset is labeled.
void export_csv(const std::filesystem::path& path, const Dataset& dataset,
                std::span<const std::string> feature_names,
                std::span<const std::string> class_names,
                const std::string& label_column = "label");

// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

struct PseudoLabelRecord {
  SampleId sample_id = 0;
  int predicted_class = 0;
  double confidence = 0.0;
  int round = 0;
};

/// Provenance of one self-training round (round 0 is the supervised model).
struct RoundRecord {
  int round = 0;
  std::optional<double> percentile;  // T_r, curriculum rounds only
  std::optional<double> threshold;   // T (or the fixed tau)
  std::vector<SampleId> selected;
  std::vector<PseudoLabelRecord> pseudo_labels;
  std::size_t train_size = 0;
  std::size_t n_departed = 0;
  bool stalled = false;
  double val_error = 0.0;
  double test_error = 0.0;
  std::optional<double> pseudo_label_accuracy;  // over the selected set
  std::optional<double> pool_accuracy;          // over the whole unlabeled pool
};

}  // namespace curlab
