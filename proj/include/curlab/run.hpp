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

#include <filesystem>
#include <string>
#include <vector>

#include "curlab/config.hpp"

namespace curlab {

struct RunArtifacts {
  std::filesystem::path dir;  // <output_dir>/<study>/<config hash>
  std::string table;          // aligned text, as written to table.txt
  std::vector<std::string> warnings;
};

inline const std::vector<std::string>& study_names() {
  static const std::vector<std::string> names = {"overlap", "label-sweep", "threshold-ablation",
                                                 "reinit-ablation"};
  return names;
}

// Builds the split a config describes, with `data_seed` driving both the
// generator and the partition.
SslSplit make_split(const RunConfig& config, std::uint64_t data_seed);

// One curriculum run (or fixed-threshold run in fixed pacing mode). Writes
// config.toml, trace.jsonl, table.txt, results.jsonl, per-round checkpoints
// and, for two-feature data, per-round decision-boundary SVGs.
RunArtifacts run_train(const RunConfig& config);

// Throws InvalidArgument for a name outside study_names().
RunArtifacts run_study(const RunConfig& config, const std::string& study, int jobs = 1);

}  // namespace curlab
