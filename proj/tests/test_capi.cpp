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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "curlab/curlab.h"

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("curlab_capi_" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

TEST(CApi, VersionAndStudies) {
  EXPECT_STRNE(curlab_version(), "");
  EXPECT_STREQ(curlab_study_names(), "overlap,label-sweep,threshold-ablation,reinit-ablation");
}

TEST(CApi, ConfigErrorsCarryTheField) {
  curlab_config* cfg = nullptr;
  EXPECT_EQ(curlab_config_parse("[pacing]\ndelta = 0\n", &cfg), CURLAB_ERR_CONFIG);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_NE(std::string(curlab_last_error()).find("pacing.delta"), std::string::npos);
  EXPECT_EQ(curlab_config_load("/nonexistent.toml", &cfg), CURLAB_ERR_CONFIG);
}

TEST(CApi, NullHandlesAreInvalidArguments) {
  EXPECT_EQ(curlab_config_set_seed(nullptr, 1), CURLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(curlab_run_train(nullptr, nullptr), CURLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(curlab_dataset_rows(nullptr), 0u);
  curlab_config_free(nullptr);
  curlab_model_free(nullptr);
}

TEST(CApi, SnapshotAndHashFollowOverrides) {
  curlab_config* cfg = nullptr;
  ASSERT_EQ(curlab_config_default(&cfg), CURLAB_OK);
  char* h1 = nullptr;
  char* h2 = nullptr;
  ASSERT_EQ(curlab_config_hash(cfg, &h1), CURLAB_OK);
  ASSERT_EQ(curlab_config_set_output_dir(cfg, "/tmp/x"), CURLAB_OK);
  ASSERT_EQ(curlab_config_hash(cfg, &h2), CURLAB_OK);
  EXPECT_STREQ(h1, h2);
  curlab_string_free(h2);
  ASSERT_EQ(curlab_config_set_seed(cfg, 99), CURLAB_OK);
  ASSERT_EQ(curlab_config_hash(cfg, &h2), CURLAB_OK);
  EXPECT_STRNE(h1, h2);
  char* snap = nullptr;
  ASSERT_EQ(curlab_config_snapshot(cfg, &snap), CURLAB_OK);
  EXPECT_NE(std::string(snap).find("seed = 99"), std::string::npos);
  curlab_string_free(snap);
  curlab_string_free(h1);
  curlab_string_free(h2);
  curlab_config_free(cfg);
}

TEST(CApi, DatasetRoundTrip) {
  const double x[] = {0, 1, 2, 3, 4, 5};
  const int y[] = {0, 1, 1};
  curlab_dataset* ds = nullptr;
  ASSERT_EQ(curlab_dataset_create(x, 3, 2, y, 2, &ds), CURLAB_OK);
  EXPECT_EQ(curlab_dataset_rows(ds), 3u);
  EXPECT_EQ(curlab_dataset_cols(ds), 2u);
  EXPECT_EQ(curlab_dataset_classes(ds), 2);
  double back[6];
  int labels[3];
  ASSERT_EQ(curlab_dataset_features(ds, back), CURLAB_OK);
  ASSERT_EQ(curlab_dataset_labels(ds, labels), CURLAB_OK);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(back[i], x[i]);
  EXPECT_EQ(labels[2], 1);
  curlab_dataset_free(ds);

  const int bad[] = {0, 5, 1};
  EXPECT_EQ(curlab_dataset_create(x, 3, 2, bad, 2, &ds), CURLAB_ERR_DATA);
  ASSERT_EQ(curlab_dataset_create(x, 3, 2, nullptr, 0, &ds), CURLAB_OK);
  EXPECT_EQ(curlab_dataset_labels(ds, labels), CURLAB_ERR_DATA);
  curlab_dataset_free(ds);
}

TEST(CApi, TrainPredictSaveLoad) {
  curlab_dataset* ds = nullptr;
  ASSERT_EQ(curlab_dataset_two_moons(100, 0.1, 3, &ds), CURLAB_OK);
  ASSERT_EQ(curlab_dataset_rows(ds), 200u);
  const int widths[] = {2, 16, 2};
  curlab_model* m = nullptr;
  ASSERT_EQ(curlab_model_init(widths, 3, 1, &m), CURLAB_OK);
  curlab_config* cfg = nullptr;
  ASSERT_EQ(curlab_config_parse("[train]\nepochs = 40\nswa_start = 30\n", &cfg), CURLAB_OK);
  ASSERT_EQ(curlab_model_train(m, ds, cfg, 5), CURLAB_OK);

  std::vector<double> x(400), probs(400), again(400);
  ASSERT_EQ(curlab_dataset_features(ds, x.data()), CURLAB_OK);
  ASSERT_EQ(curlab_model_predict(m, x.data(), 200, 2, probs.data()), CURLAB_OK);
  for (int r = 0; r < 200; ++r) EXPECT_NEAR(probs[2 * r] + probs[2 * r + 1], 1.0, 1e-12);

  fs::path p = scratch("model.json");
  ASSERT_EQ(curlab_model_save(m, p.c_str()), CURLAB_OK);
  curlab_model* loaded = nullptr;
  ASSERT_EQ(curlab_model_load(p.c_str(), &loaded), CURLAB_OK);
  EXPECT_EQ(curlab_model_inputs(loaded), 2);
  EXPECT_EQ(curlab_model_classes(loaded), 2);
  ASSERT_EQ(curlab_model_predict(loaded, x.data(), 200, 2, again.data()), CURLAB_OK);
  EXPECT_EQ(probs, again);
  EXPECT_EQ(curlab_model_predict(loaded, x.data(), 100, 4, again.data()),
            CURLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(curlab_model_load("/nonexistent.json", &loaded), CURLAB_ERR_IO);

  curlab_model_free(loaded);
  curlab_model_free(m);
  curlab_config_free(cfg);
  curlab_dataset_free(ds);
}

TEST(CApi, PercentileAndSelect) {
  const double v[] = {0.9, 0.6, 0.8, 0.7, 0.5};
  double t = 0.0;
  ASSERT_EQ(curlab_percentile(v, 5, 60.0, &t), CURLAB_OK);
  EXPECT_EQ(t, 0.7);
  unsigned char mask[5];
  ASSERT_EQ(curlab_select(v, 5, 60.0, mask, &t), CURLAB_OK);
  EXPECT_EQ(t, 0.7);
  const unsigned char expected[] = {1, 0, 1, 0, 0};
  for (int i = 0; i < 5; ++i) EXPECT_EQ(mask[i], expected[i]);
  EXPECT_EQ(curlab_percentile(v, 0, 50.0, &t), CURLAB_ERR_INVALID_ARGUMENT);
}

TEST(CApi, TheoryCheck) {
  char* report = nullptr;
  EXPECT_EQ(curlab_theory_check(1, 20, 0, &report), CURLAB_OK);
  ASSERT_NE(report, nullptr);
  EXPECT_NE(std::string(report).find("PASS"), std::string::npos);
  curlab_string_free(report);
  EXPECT_EQ(curlab_theory_check(1, 20, 1, nullptr), CURLAB_ERR_CHECK_FAILED);
}

TEST(CApi, TrainRunWritesArtifacts) {
  fs::path out = scratch("runs");
  curlab_config* cfg = nullptr;
  ASSERT_EQ(curlab_config_parse("[data]\nn_per_moon = 100\n[split]\nn_val = 20\nn_test = 40\n"
                                "[train]\nepochs = 20\nswa_start = 15\n[pacing]\ndelta = 50\n"
                                "[output]\nplot_resolution = 20\n",
                                &cfg),
            CURLAB_OK);
  ASSERT_EQ(curlab_config_set_output_dir(cfg, out.c_str()), CURLAB_OK);
  curlab_run_result* res = nullptr;
  ASSERT_EQ(curlab_run_train(cfg, &res), CURLAB_OK) << curlab_last_error();
  fs::path dir = curlab_run_result_dir(res);
  EXPECT_TRUE(fs::exists(dir / "trace.jsonl"));
  EXPECT_TRUE(fs::exists(dir / "config.toml"));
  EXPECT_TRUE(fs::exists(dir / "round_2.svg"));
  EXPECT_NE(std::string(curlab_run_result_table(res)).find("rounds"), std::string::npos);
  curlab_run_result_free(res);

  EXPECT_EQ(curlab_run_study(cfg, "nope", 1, &res), CURLAB_ERR_INVALID_ARGUMENT);
  curlab_config_free(cfg);
  fs::remove_all(out);
}

}  // namespace
