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
#include <string>
#include <vector>

#include "curlab/curriculum.hpp"
#include "curlab/experiments.hpp"

namespace curlab {

enum class DataSource { kTwoMoons, kOverlap, kCsv };

std::string to_string(DataSource source);

struct DataConfig {
  DataSource source = DataSource::kTwoMoons;
  std::size_t n_per_moon = 500;
  double noise = 0.15;
  std::string csv_path;
  std::string label_column = "label";
  std::vector<std::string> feature_columns;  // empty: all but the label
  bool standardize = true;
};

struct SplitConfig {
  std::size_t n_labeled = 12;
  std::size_t n_val = 100;
  std::size_t n_test = 200;
};

struct OutputConfig {
  bool boundary_plots = true;
  int plot_resolution = 300;
};

struct StudyConfig {
  int repetitions = 5;
  std::vector<double> tau_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::size_t> label_sizes = {4, 8, 16, 32, 64};
  std::vector<double> mismatch_grid = {0.0, 25.0, 50.0, 75.0, 100.0};
  std::vector<Method> methods = {Method::kCurriculum, Method::kVanillaPl, Method::kSupervised};
  double vanilla_tau = 0.0;
};

/// Everything one `train` or `study` invocation needs. Every field has a
/// default here; the snapshot written next to the outputs echoes all of them.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string output_dir = "runs";
  DataConfig data;
  SplitConfig split;
  CurriculumConfig curriculum;  // its seed mirrors `seed`
  int vanilla_rounds = 5;       // round budget in fixed-threshold mode
  OutputConfig output;
  StudyConfig study;
  OverlapSpec overlap;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Parses TOML text. Unknown keys, wrong types and invalid values raise
// ConfigError with the dotted field path.
RunConfig parse_config(const std::string& text);
// IoError when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

// Canonical TOML rendering with every field present, in a fixed order.
// parse_config(canonical_text(c)) reproduces c.
std::string canonical_text(const RunConfig& config);

// 16 hex digits of FNV-1a over the canonical text without output_dir.
std::string config_hash(const RunConfig& config);

std::string to_string(ScoreKind kind);

}  // namespace curlab
