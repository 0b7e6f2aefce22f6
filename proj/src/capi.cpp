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

#include "curlab/curlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "curlab/checkpoint.hpp"
#include "curlab/error.hpp"
#include "curlab/run.hpp"
#include "curlab/theory.hpp"

struct curlab_config {
  curlab::RunConfig value;
};
struct curlab_dataset {
  curlab::Dataset value;
};
struct curlab_model {
  curlab::ModelParams value;
};
struct curlab_run_result {
  std::string dir;
  std::string table;
  std::vector<std::string> warnings;
};

namespace {

thread_local std::string last_error;

curlab_status fail(curlab_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <class Fn>
curlab_status guard(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const curlab::ConfigError& e) {
    return fail(CURLAB_ERR_CONFIG, e.what());
  } catch (const curlab::InvalidArgument& e) {
    return fail(CURLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const curlab::DataError& e) {
    return fail(CURLAB_ERR_DATA, e.what());
  } catch (const curlab::IoError& e) {
    return fail(CURLAB_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CURLAB_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(CURLAB_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(CURLAB_ERR_RUNTIME, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw curlab::InvalidArgument(std::string(what) + " is null");
}

curlab::Matrix read_matrix(const double* data, std::size_t rows, std::size_t cols) {
  need(data, "features");
  curlab::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r * cols + c];
  return m;
}

}  // namespace

extern "C" {

const char* curlab_version(void) { return "0.1.0"; }

const char* curlab_last_error(void) { return last_error.c_str(); }

void curlab_string_free(char* s) { std::free(s); }

curlab_status curlab_config_default(curlab_config** out) {
  return guard([&] {
    need(out, "out");
    *out = new curlab_config{};
    return CURLAB_OK;
  });
}

curlab_status curlab_config_load(const char* path, curlab_config** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    curlab::RunConfig c;
    try {
      c = curlab::load_config(path);
    } catch (const curlab::IoError& e) {
      throw curlab::ConfigError("config", e.what());
    }
    *out = new curlab_config{std::move(c)};
    return CURLAB_OK;
  });
}

curlab_status curlab_config_parse(const char* text, curlab_config** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new curlab_config{curlab::parse_config(text)};
    return CURLAB_OK;
  });
}

curlab_status curlab_config_set_seed(curlab_config* cfg, uint64_t seed) {
  return guard([&] {
    need(cfg, "config");
    curlab::RunConfig c = cfg->value;
    c.seed = seed;
    c.curriculum.seed = seed;
    c.overlap.seed = seed;
    c.validate();
    cfg->value = std::move(c);
    return CURLAB_OK;
  });
}

curlab_status curlab_config_set_output_dir(curlab_config* cfg, const char* dir) {
  return guard([&] {
    need(cfg, "config");
    need(dir, "dir");
    if (!*dir) throw curlab::ConfigError("output_dir", "must not be empty");
    cfg->value.output_dir = dir;
    return CURLAB_OK;
  });
}

curlab_status curlab_config_snapshot(const curlab_config* cfg, char** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = dup(curlab::canonical_text(cfg->value));
    return CURLAB_OK;
  });
}

curlab_status curlab_config_hash(const curlab_config* cfg, char** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = dup(curlab::config_hash(cfg->value));
    return CURLAB_OK;
  });
}

void curlab_config_free(curlab_config* cfg) { delete cfg; }

curlab_status curlab_run_train(const curlab_config* cfg, curlab_run_result** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    auto art = curlab::run_train(cfg->value);
    *out = new curlab_run_result{art.dir.string(), art.table, art.warnings};
    return CURLAB_OK;
  });
}

curlab_status curlab_run_study(const curlab_config* cfg, const char* study, int jobs,
                               curlab_run_result** out) {
  return guard([&] {
    need(cfg, "config");
    need(study, "study");
    need(out, "out");
    auto art = curlab::run_study(cfg->value, study, jobs);
    *out = new curlab_run_result{art.dir.string(), art.table, art.warnings};
    return CURLAB_OK;
  });
}

const char* curlab_study_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : curlab::study_names()) s += (s.empty() ? "" : ",") + n;
    return s;
  }();
  return names.c_str();
}

const char* curlab_run_result_dir(const curlab_run_result* res) {
  return res ? res->dir.c_str() : "";
}

const char* curlab_run_result_table(const curlab_run_result* res) {
  return res ? res->table.c_str() : "";
}

size_t curlab_run_result_warning_count(const curlab_run_result* res) {
  return res ? res->warnings.size() : 0;
}

const char* curlab_run_result_warning(const curlab_run_result* res, size_t i) {
  return res && i < res->warnings.size() ? res->warnings[i].c_str() : "";
}

void curlab_run_result_free(curlab_run_result* res) { delete res; }

curlab_status curlab_theory_check(uint64_t seed, int draws, int inject_fault, char** report) {
  return guard([&] {
    curlab::theory::CheckOptions opt;
    opt.seed = seed;
    if (draws > 0) opt.draws = draws;
    opt.inject_fault = inject_fault != 0;
    auto results = curlab::theory::run_checks(opt);
    if (report) *report = dup(curlab::theory::format_report(results));
    for (const auto& r : results)
      if (!r.passed) return fail(CURLAB_ERR_CHECK_FAILED, "theory check " + r.name + " failed");
    return CURLAB_OK;
  });
}

curlab_status curlab_dataset_create(const double* features, size_t rows, size_t cols,
                                    const int* labels, int num_classes, curlab_dataset** out) {
  return guard([&] {
    need(out, "out");
    std::optional<std::vector<int>> y;
    if (labels) y.emplace(labels, labels + rows);
    *out = new curlab_dataset{
        curlab::Dataset::from_rows(read_matrix(features, rows, cols), std::move(y), num_classes)};
    return CURLAB_OK;
  });
}

curlab_status curlab_dataset_load_csv(const char* path, const char* label_column,
                                      curlab_dataset** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    curlab::CsvSchema schema{label_column ? label_column : "", {}, std::nullopt};
    *out = new curlab_dataset{curlab::load_csv(path, schema).dataset};
    return CURLAB_OK;
  });
}

curlab_status curlab_dataset_two_moons(size_t n_per_moon, double noise, uint64_t seed,
                                       curlab_dataset** out) {
  return guard([&] {
    need(out, "out");
    curlab::TwoMoonsSpec spec;
    spec.n_per_moon = n_per_moon;
    spec.noise = noise;
    spec.labeled_per_class = 1;
    spec.seed = seed;
    *out = new curlab_dataset{curlab::gen_two_moons(spec)};
    return CURLAB_OK;
  });
}

size_t curlab_dataset_rows(const curlab_dataset* ds) { return ds ? ds->value.size() : 0; }

size_t curlab_dataset_cols(const curlab_dataset* ds) {
  return ds ? static_cast<size_t>(ds->value.num_features()) : 0;
}

int curlab_dataset_classes(const curlab_dataset* ds) { return ds ? ds->value.num_classes() : 0; }

curlab_status curlab_dataset_features(const curlab_dataset* ds, double* out) {
  return guard([&] {
    need(ds, "dataset");
    need(out, "out");
    const auto& x = ds->value.features();
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index c = 0; c < x.cols(); ++c) *out++ = x(r, c);
    return CURLAB_OK;
  });
}

curlab_status curlab_dataset_labels(const curlab_dataset* ds, int* out) {
  return guard([&] {
    need(ds, "dataset");
    need(out, "out");
    const auto& y = ds->value.labels();
    std::copy(y.begin(), y.end(), out);
    return CURLAB_OK;
  });
}

void curlab_dataset_free(curlab_dataset* ds) { delete ds; }

curlab_status curlab_model_init(const int* widths, size_t n_widths, uint64_t seed,
                                curlab_model** out) {
  return guard([&] {
    need(widths, "widths");
    need(out, "out");
    curlab::Architecture arch{std::vector<int>(widths, widths + n_widths)};
    *out = new curlab_model{curlab::init_params(arch, seed)};
    return CURLAB_OK;
  });
}

curlab_status curlab_model_train(curlab_model* model, const curlab_dataset* data,
                                 const curlab_config* cfg, uint64_t seed) {
  return guard([&] {
    need(model, "model");
    need(data, "dataset");
    curlab::TrainConfig tc = cfg ? cfg->value.curriculum.train : curlab::TrainConfig{};
    auto result = curlab::train(data->value, tc, model->value, seed);
    model->value = std::move(result.params);
    return CURLAB_OK;
  });
}

curlab_status curlab_model_load(const char* path, curlab_model** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new curlab_model{curlab::load_checkpoint(path).params};
    return CURLAB_OK;
  });
}

curlab_status curlab_model_save(const curlab_model* model, const char* path) {
  return guard([&] {
    need(model, "model");
    need(path, "path");
    curlab::save_checkpoint(path, curlab::Checkpoint{model->value, 0, 0, 0, ""});
    return CURLAB_OK;
  });
}

curlab_status curlab_model_predict(const curlab_model* model, const double* features, size_t rows,
                                   size_t cols, double* probs) {
  return guard([&] {
    need(model, "model");
    need(probs, "probs");
    if (static_cast<int>(cols) != model->value.arch.inputs())
      throw curlab::InvalidArgument("feature width does not match the model input");
    curlab::Matrix p = curlab::predict_probs(model->value, read_matrix(features, rows, cols));
    for (Eigen::Index r = 0; r < p.rows(); ++r)
      for (Eigen::Index c = 0; c < p.cols(); ++c) *probs++ = p(r, c);
    return CURLAB_OK;
  });
}

int curlab_model_inputs(const curlab_model* model) {
  return model ? model->value.arch.inputs() : 0;
}

int curlab_model_classes(const curlab_model* model) {
  return model ? model->value.arch.classes() : 0;
}

void curlab_model_free(curlab_model* model) { delete model; }

curlab_status curlab_percentile(const double* values, size_t n, double rank, double* out) {
  return guard([&] {
    need(values, "values");
    need(out, "out");
    *out = curlab::percentile(std::span<const double>(values, n), rank);
    return CURLAB_OK;
  });
}

curlab_status curlab_select(const double* scores, size_t n, double t_r, unsigned char* mask,
                            double* threshold) {
  return guard([&] {
    need(scores, "scores");
    need(mask, "mask");
    curlab::ConfidenceScores cs;
    for (size_t i = 0; i < n; ++i) {
      cs.ids.push_back(i);
      cs.values.push_back(scores[i]);
    }
    auto sel = curlab::select(cs, t_r);
    std::fill(mask, mask + n, static_cast<unsigned char>(0));
    for (size_t p : sel.positions) mask[p] = 1;
    if (threshold) *threshold = sel.threshold;
    return CURLAB_OK;
  });
}

}  // extern "C"
