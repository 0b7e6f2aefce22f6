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

#include "curlab/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "curlab/error.hpp"
#include "curlab/random.hpp"

namespace curlab {

Dataset::Dataset(Matrix features, std::vector<SampleId> ids,
                 std::optional<std::vector<int>> labels, int num_classes)
    : features_(std::move(features)),
      ids_(std::move(ids)),
      labels_(std::move(labels)),
      num_classes_(num_classes) {
  if (static_cast<std::size_t>(features_.rows()) != ids_.size())
    throw DataError("dataset: " + std::to_string(features_.rows()) + " feature rows but " +
                    std::to_string(ids_.size()) + " sample ids");
  if (num_classes_ < 0) throw DataError("dataset: negative class count");
  if (!features_.allFinite()) {
    for (Eigen::Index r = 0; r < features_.rows(); ++r)
      for (Eigen::Index c = 0; c < features_.cols(); ++c)
        if (!std::isfinite(features_(r, c)))
          throw DataError("dataset: non-finite feature at row " + std::to_string(r) +
                          ", column " + std::to_string(c));
  }
  if (labels_) {
    if (labels_->size() != ids_.size())
      throw DataError("dataset: label count does not match row count");
    for (std::size_t i = 0; i < labels_->size(); ++i) {
      int y = (*labels_)[i];
      if (y < 0 || y >= num_classes_)
        throw DataError("dataset: label " + std::to_string(y) + " at row " +
                        std::to_string(i) + " outside [0, " + std::to_string(num_classes_) +
                        ")");
    }
  }
  std::unordered_set<SampleId> seen;
  seen.reserve(ids_.size());
  for (SampleId id : ids_)
    if (!seen.insert(id).second)
      throw DataError("dataset: duplicate sample id " + std::to_string(id));
}

Dataset Dataset::from_rows(Matrix features, std::optional<std::vector<int>> labels,
                           int num_classes) {
  std::vector<SampleId> ids(static_cast<std::size_t>(features.rows()));
  std::iota(ids.begin(), ids.end(), SampleId{0});
  return Dataset(std::move(features), std::move(ids), std::move(labels), num_classes);
}

const std::vector<int>& Dataset::labels() const {
  if (!labels_) throw DataError("dataset has no labels");
  return *labels_;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Matrix x(static_cast<Eigen::Index>(rows.size()), features_.cols());
  std::vector<SampleId> ids;
  ids.reserve(rows.size());
  std::optional<std::vector<int>> labels;
  if (labels_) labels.emplace().reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t r = rows[i];
    if (r >= size()) throw InvalidArgument("dataset subset: row index out of range");
    x.row(static_cast<Eigen::Index>(i)) = features_.row(static_cast<Eigen::Index>(r));
    ids.push_back(ids_[r]);
    if (labels_) labels->push_back((*labels_)[r]);
  }
  return Dataset(std::move(x), std::move(ids), std::move(labels), num_classes_);
}

Dataset Dataset::without_labels() const {
  return Dataset(features_, ids_, std::nullopt, num_classes_);
}

Dataset Dataset::with_features(Matrix features) const {
  return Dataset(std::move(features), ids_, labels_, num_classes_);
}

SslSplit::SslSplit(Dataset labeled, Dataset unlabeled, std::vector<int> oracle_labels,
                   Dataset validation, Dataset test)
    : labeled_(std::move(labeled)),
      unlabeled_(std::move(unlabeled)),
      oracle_labels_(std::move(oracle_labels)),
      validation_(std::move(validation)),
      test_(std::move(test)) {
  if (!labeled_.has_labels()) throw DataError("split: labeled set has no labels");
  if (unlabeled_.has_labels()) throw DataError("split: unlabeled set must not carry labels");
  if (!validation_.has_labels() || !test_.has_labels())
    throw DataError("split: validation and test sets need labels");
  if (oracle_labels_.size() != unlabeled_.size())
    throw DataError("split: oracle label count does not match the unlabeled pool");
  std::unordered_set<SampleId> seen;
  for (const Dataset* part : {&labeled_, &unlabeled_, &validation_, &test_})
    for (SampleId id : part->ids())
      if (!seen.insert(id).second)
        throw DataError("split: sample id " + std::to_string(id) + " appears in two splits");
}

SslSplit split_ssl(const Dataset& dataset, std::size_t n_labeled, std::size_t n_val,
                   std::size_t n_test, std::uint64_t seed) {
  const int k = dataset.num_classes();
  if (!dataset.has_labels()) throw DataError("split_ssl: dataset has no labels");
  if (n_labeled + n_val + n_test > dataset.size())
    throw DataError("split_ssl: requested " + std::to_string(n_labeled + n_val + n_test) +
                    " samples from a dataset of " + std::to_string(dataset.size()));
  if (k < 1) throw DataError("split_ssl: dataset has no classes");

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, Stream::kSplit));
  std::shuffle(order.begin(), order.end(), rng);

  const auto& y = dataset.labels();
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(k));
  for (std::size_t r : order) by_class[static_cast<std::size_t>(y[r])].push_back(r);

  std::vector<std::size_t> labeled_rows;
  std::vector<char> taken(dataset.size(), 0);
  const std::size_t base = n_labeled / static_cast<std::size_t>(k);
  const std::size_t extra = n_labeled % static_cast<std::size_t>(k);
  for (int c = 0; c < k; ++c) {
    std::size_t quota = base + (static_cast<std::size_t>(c) < extra ? 1 : 0);
    const auto& pool = by_class[static_cast<std::size_t>(c)];
    if (quota == 0)
      throw DataError("class " + std::to_string(c) + " has zero labeled samples");
    if (pool.size() < quota)
      throw DataError("class " + std::to_string(c) + " has only " +
                      std::to_string(pool.size()) + " samples; " + std::to_string(quota) +
                      " labeled samples requested");
    for (std::size_t i = 0; i < quota; ++i) {
      labeled_rows.push_back(pool[i]);
      taken[pool[i]] = 1;
    }
  }

  std::vector<std::size_t> rest;
  rest.reserve(dataset.size() - labeled_rows.size());
  for (std::size_t r : order)
    if (!taken[r]) rest.push_back(r);

  auto first = rest.begin();
  std::vector<std::size_t> val_rows(first, first + static_cast<std::ptrdiff_t>(n_val));
  first += static_cast<std::ptrdiff_t>(n_val);
  std::vector<std::size_t> test_rows(first, first + static_cast<std::ptrdiff_t>(n_test));
  first += static_cast<std::ptrdiff_t>(n_test);
  std::vector<std::size_t> pool_rows(first, rest.end());

  std::vector<int> oracle;
  oracle.reserve(pool_rows.size());
  for (std::size_t r : pool_rows) oracle.push_back(y[r]);

  return SslSplit(dataset.subset(labeled_rows), dataset.subset(pool_rows).without_labels(),
                  std::move(oracle), dataset.subset(val_rows), dataset.subset(test_rows));
}

Matrix NormStats::apply(const Matrix& x) const {
  if (x.cols() != mean.size()) throw InvalidArgument("normalize: feature dimension mismatch");
  Matrix out = x;
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    out.col(c) = (x.col(c).array() - mean(c)) / scale(c);
  return out;
}

Standardized standardize(const SslSplit& split) {
  const Matrix& a = split.labeled().features();
  const Matrix& b = split.unlabeled().features();
  if (a.rows() == 0) throw DataError("standardize: labeled split is empty");
  const Eigen::Index d = a.cols();
  const double n = static_cast<double>(a.rows() + b.rows());

  NormStats stats{Vector::Zero(d), Vector::Ones(d)};
  for (Eigen::Index c = 0; c < d; ++c) {
    double lo = a.col(c).minCoeff(), hi = a.col(c).maxCoeff();
    if (b.rows() > 0) {
      lo = std::min(lo, b.col(c).minCoeff());
      hi = std::max(hi, b.col(c).maxCoeff());
    }
    if (lo == hi) {
      stats.mean(c) = lo;
      continue;
    }
    double mean = (a.col(c).sum() + b.col(c).sum()) / n;
    double ss = (a.col(c).array() - mean).square().sum() + (b.col(c).array() - mean).square().sum();
    stats.mean(c) = mean;
    double sd = std::sqrt(ss / n);
    stats.scale(c) = sd > 0.0 ? sd : 1.0;
  }
  return {split.map_features([&](const Matrix& x) { return stats.apply(x); }), stats};
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

}  // namespace

CsvData load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_csv_line(line);

  auto column_of = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError(path.string() + ": no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  std::optional<std::size_t> label_col;
  if (!schema.label_column.empty()) label_col = column_of(schema.label_column);
  std::vector<std::size_t> feature_cols;
  if (schema.feature_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (!label_col || c != *label_col) feature_cols.push_back(c);
  } else {
    for (const auto& name : schema.feature_columns) feature_cols.push_back(column_of(name));
  }

  CsvData out;
  for (std::size_t c : feature_cols) out.feature_names.push_back(header[c]);
  std::unordered_map<std::string, int> class_index;
  if (schema.label_map) {
    out.class_names = *schema.label_map;
    for (std::size_t i = 0; i < out.class_names.size(); ++i)
      class_index.emplace(out.class_names[i], static_cast<int>(i));
  }

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw DataError(path.string() + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(header.size()));
    for (std::size_t c : feature_cols) {
      const std::string& cell = cells[c];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() ||
          !std::isfinite(v))
        throw DataError(path.string() + ": row " + std::to_string(line_no) + ", column '" +
                        header[c] + "': not a finite number: '" + cell + "'");
      values.push_back(v);
    }
    if (label_col) {
      const std::string& name = cells[*label_col];
      auto it = class_index.find(name);
      if (it == class_index.end()) {
        if (schema.label_map)
          throw DataError(path.string() + ": row " + std::to_string(line_no) +
                          ": unknown label '" + name + "'");
        it = class_index.emplace(name, static_cast<int>(out.class_names.size())).first;
        out.class_names.push_back(name);
      }
      labels.push_back(it->second);
    }
    ++rows;
  }

  const auto d = static_cast<Eigen::Index>(feature_cols.size());
  Matrix x(static_cast<Eigen::Index>(rows), d);
  for (std::size_t r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      x(static_cast<Eigen::Index>(r), c) = values[r * feature_cols.size() + static_cast<std::size_t>(c)];

  std::optional<std::vector<int>> y;
  if (label_col) y = std::move(labels);
  out.dataset = Dataset::from_rows(std::move(x), std::move(y),
                                   static_cast<int>(out.class_names.size()));
  return out;
}

std::string format_shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw InvalidArgument("format_shortest: conversion failed");
  return std::string(buf, ptr);
}

void export_csv(const std::filesystem::path& path, const Dataset& dataset,
                std::span<const std::string> feature_names,
                std::span<const std::string> class_names, const std::string& label_column) {
  if (feature_names.size() != static_cast<std::size_t>(dataset.num_features()))
    throw InvalidArgument("export_csv: feature name count does not match dataset");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t c = 0; c < feature_names.size(); ++c) out << (c ? "," : "") << feature_names[c];
  if (dataset.has_labels()) out << ',' << label_column;
  out << '\n';
  const Matrix& x = dataset.features();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) out << (c ? "," : "") << format_shortest(x(r, c));
    if (dataset.has_labels()) {
      int y = dataset.labels()[static_cast<std::size_t>(r)];
      out << ',';
      if (static_cast<std::size_t>(y) < class_names.size())
        out << class_names[static_cast<std::size_t>(y)];
      else
        out << y;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace curlab
