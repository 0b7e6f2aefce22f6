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
#include <span>
#include <string>
#include <vector>

#include "curlab/curriculum.hpp"
#include "curlab/data.hpp"
#include "curlab/report.hpp"

namespace curlab {

struct TwoMoonsSpec {
  std::size_t n_per_moon = 500;
  double noise = 0.15;
  std::size_t labeled_per_class = 6;
  std::uint64_t seed = 0;
};

// Class 0 is the upper unit half-circle; class 1 is the same arc reflected
// through the origin and shifted by (1, 0.5). Rows are class 0 first.
Dataset gen_two_moons(const TwoMoonsSpec& spec);

/// Gaussian-blob class-mismatch protocol. The labeled, validation and test
/// sets hold the in-distribution classes only. The unlabeled pool is drawn
/// from `unlabeled_classes` source classes, of which round(mismatch% * n)
/// are out-of-distribution blobs; the pool size does not depend on the
/// mismatch.
struct OverlapSpec {
  int id_classes = 6;
  int unlabeled_classes = 4;
  double mismatch_percent = 0.0;  // one of 0, 25, 50, 75, 100
  std::size_t labeled_per_class = 5;
  std::size_t unlabeled_per_class = 150;
  std::size_t val_per_class = 25;
  std::size_t test_per_class = 100;
  double radius = 2.0;  // in-distribution means sit on this circle
  double spread = 0.8;  // blob stdev
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr double kMismatchGrid[] = {0.0, 25.0, 50.0, 75.0, 100.0};

// Oracle labels of OOD pool samples are -1.
SslSplit gen_overlap_pool(const OverlapSpec& spec);

// Two-moons data for `spec.seed`, split with 2 * labeled_per_class labels.
SslSplit make_two_moons_split(const TwoMoonsSpec& spec, std::size_t n_val, std::size_t n_test,
                              bool standardize);

// Builds the split for one repetition of a study.
using SplitFactory = std::function<SslSplit(int repetition)>;

struct StudyOptions {
  CurriculumConfig config;     // base config; its seed is the study seed
  int repetitions = 5;
  int jobs = 1;
  int vanilla_rounds = 5;
  double vanilla_tau = 0.0;  // fixed threshold of the vanilla baseline in the overlap study
};

// Seed used by every method at repetition r (paired-seed discipline).
std::uint64_t repetition_seed(std::uint64_t study_seed, int repetition);

enum class Method { kCurriculum, kVanillaPl, kSupervised };
std::string to_string(Method m);

/// Per-repetition test errors of one (method, parameter, round) cell.
/// round = -1 is the final model of the run.
struct Series {
  std::string method;
  double param = 0.0;
  int round = -1;
  std::vector<double> errors;
};

struct StudyOutput {
  Table table;
  std::vector<std::string> trace;  // JSON lines, one per (cell, round)
  std::vector<Series> series;

  // Throws InvalidArgument when absent.
  const Series& find(const std::string& method, double param, int round = -1) const;
};

StudyOutput run_overlap_study(const OverlapSpec& base, std::span<const double> mismatch_grid,
                              std::span<const Method> methods, const StudyOptions& options);

struct SweepSpec {
  std::vector<std::size_t> labeled_per_class = {4, 8, 16, 32, 64};
};

// Curriculum and supervised-only error per labeled-set size. The data seed
// of each repetition is shared across sizes.
StudyOutput run_label_sweep(const TwoMoonsSpec& base, const SweepSpec& sweep,
                            std::size_t n_val, std::size_t n_test, bool standardize,
                            const StudyOptions& options);

StudyOutput run_threshold_ablation(const SplitFactory& make_split, std::span<const double> taus,
                                   const StudyOptions& options);

StudyOutput run_reinit_ablation(const SplitFactory& make_split, const StudyOptions& options);

struct Bounds {
  double x_min = -1.5, x_max = 2.5, y_min = -1.0, y_max = 1.5;
};

// Bounds enclosing every row of the given 2-feature matrices plus a margin.
Bounds bounds_of(std::span<const Matrix* const> parts, double margin = 0.25);

struct PlotPoint {
  double x = 0.0, y = 0.0;
  int cls = -1;  // -1: unlabeled
};

struct BoundaryAnnotations {
  std::vector<PlotPoint> labeled;
  std::vector<PlotPoint> unlabeled;
  std::vector<PlotPoint> pseudo_labeled;
  std::string title;
};

/// argmax class per grid cell, row-major with row 0 at the top (y_max).
struct BoundaryGrid {
  Bounds bounds;
  int resolution = 0;
  std::vector<int> cls;

  // Center of cell (row, col) in feature space.
  std::pair<double, double> cell_center(int row, int col) const;
};

BoundaryGrid boundary_grid(const ModelParams& model, const Bounds& bounds, int resolution);

// Throws InvalidArgument unless the model takes exactly two features.
std::string export_boundary_svg(const ModelParams& model, const Bounds& bounds, int resolution,
                                const BoundaryAnnotations& annotations);

// Points of a split for plotting, in its (possibly standardized) feature space.
BoundaryAnnotations annotate(const SslSplit& split, const RoundRecord& round);

}  // namespace curlab
