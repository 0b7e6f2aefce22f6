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

#include "curlab/model.hpp"

namespace curlab {

struct Checkpoint {
  ModelParams params;
  int swa_snapshots = 0;
  int swa_start = 0;
  int swa_cycle = 0;
  std::string config_hash;
};

// JSON container: architecture, row-major flat weight/bias arrays per layer,
// SWA bookkeeping and the hash of the config that produced the model.
std::string checkpoint_to_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace curlab
