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

#include "curlab/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curlab/error.hpp"

namespace curlab {

namespace {
constexpr const char* kFormat = "curlab-checkpoint";
constexpr int kVersion = 1;
}  // namespace

std::string checkpoint_to_json(const Checkpoint& ckpt) {
  const ModelParams& m = ckpt.params;
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["arch"] = m.arch.widths;
  auto layers = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < m.values.weights.size(); ++l) {
    const Matrix& w = m.values.weights[l];
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(w.size()));
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    const Vector& b = m.values.biases[l];
    nlohmann::ordered_json layer;
    layer["weight_shape"] = {w.rows(), w.cols()};
    layer["weight"] = flat;
    layer["bias"] = std::vector<double>(b.data(), b.data() + b.size());
    layers.push_back(std::move(layer));
  }
  j["layers"] = std::move(layers);
  j["swa"] = {{"snapshots", ckpt.swa_snapshots}, {"start", ckpt.swa_start}, {"cycle", ckpt.swa_cycle}};
  j["config_hash"] = ckpt.config_hash;
  return j.dump();
}

Checkpoint checkpoint_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat)
      throw DataError("checkpoint: unexpected format tag");
    if (j.at("version").get<int>() != kVersion)
      throw DataError("checkpoint: unsupported version");
    Checkpoint ckpt;
    ckpt.params.arch.widths = j.at("arch").get<std::vector<int>>();
    ckpt.params.arch.validate();
    ckpt.params.values = ParamSet::zeros(ckpt.params.arch);
    const auto& layers = j.at("layers");
    if (layers.size() != ckpt.params.arch.num_layers())
      throw DataError("checkpoint: layer count does not match architecture");
    for (std::size_t l = 0; l < layers.size(); ++l) {
      Matrix& w = ckpt.params.values.weights[l];
      Vector& b = ckpt.params.values.biases[l];
      auto flat = layers[l].at("weight").get<std::vector<double>>();
      auto bias = layers[l].at("bias").get<std::vector<double>>();
      if (flat.size() != static_cast<std::size_t>(w.size()) ||
          bias.size() != static_cast<std::size_t>(b.size()))
        throw DataError("checkpoint: layer " + std::to_string(l) + " has the wrong size");
      for (Eigen::Index r = 0; r < w.rows(); ++r)
        for (Eigen::Index c = 0; c < w.cols(); ++c)
          w(r, c) = flat[static_cast<std::size_t>(r * w.cols() + c)];
      for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = bias[static_cast<std::size_t>(i)];
    }
    if (!ckpt.params.values.all_finite()) throw DataError("checkpoint: non-finite parameter");
    const auto& swa = j.at("swa");
    ckpt.swa_snapshots = swa.at("snapshots").get<int>();
    ckpt.swa_start = swa.at("start").get<int>();
    ckpt.swa_cycle = swa.at("cycle").get<int>();
    ckpt.config_hash = j.at("config_hash").get<std::string>();
    return ckpt;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << checkpoint_to_json(ckpt) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace curlab
