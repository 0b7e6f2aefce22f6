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

/* C interface to the curlab engine.
 *
 * Every function returns a curlab_status. On failure the message of the most
 * recent error on the calling thread is available from curlab_last_error().
 * Objects are opaque handles released with their matching _free function;
 * strings returned through out-parameters are released with
 * curlab_string_free(). */
#ifndef CURLAB_CURLAB_H
#define CURLAB_CURLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CURLAB_API __declspec(dllexport)
#else
#define CURLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum curlab_status {
  CURLAB_OK = 0,
  CURLAB_ERR_RUNTIME = 1,          /* training divergence, internal failure */
  CURLAB_ERR_CONFIG = 2,           /* invalid or unreadable configuration */
  CURLAB_ERR_INVALID_ARGUMENT = 3, /* bad argument, including null handles */
  CURLAB_ERR_IO = 4,
  CURLAB_ERR_CHECK_FAILED = 5,     /* a theory check did not pass */
  CURLAB_ERR_DATA = 6              /* malformed data or split request */
} curlab_status;

typedef struct curlab_config curlab_config;
typedef struct curlab_dataset curlab_dataset;
typedef struct curlab_model curlab_model;
typedef struct curlab_run_result curlab_run_result;

CURLAB_API const char* curlab_version(void);
/* Empty string when no error has occurred on this thread. */
CURLAB_API const char* curlab_last_error(void);
CURLAB_API void curlab_string_free(char* s);

/* Configuration */
CURLAB_API curlab_status curlab_config_default(curlab_config** out);
CURLAB_API curlab_status curlab_config_load(const char* path, curlab_config** out);
CURLAB_API curlab_status curlab_config_parse(const char* text, curlab_config** out);
CURLAB_API curlab_status curlab_config_set_seed(curlab_config* cfg, uint64_t seed);
CURLAB_API curlab_status curlab_config_set_output_dir(curlab_config* cfg, const char* dir);
CURLAB_API curlab_status curlab_config_snapshot(const curlab_config* cfg, char** out);
CURLAB_API curlab_status curlab_config_hash(const curlab_config* cfg, char** out);
CURLAB_API void curlab_config_free(curlab_config* cfg);

/* Runs. Results expose the artifact directory and the rendered table. */
CURLAB_API curlab_status curlab_run_train(const curlab_config* cfg, curlab_run_result** out);
CURLAB_API curlab_status curlab_run_study(const curlab_config* cfg, const char* study, int jobs,
                                          curlab_run_result** out);
/* Comma-separated study names. */
CURLAB_API const char* curlab_study_names(void);
CURLAB_API const char* curlab_run_result_dir(const curlab_run_result* res);
CURLAB_API const char* curlab_run_result_table(const curlab_run_result* res);
CURLAB_API size_t curlab_run_result_warning_count(const curlab_run_result* res);
CURLAB_API const char* curlab_run_result_warning(const curlab_run_result* res, size_t i);
CURLAB_API void curlab_run_result_free(curlab_run_result* res);

/* Theory checks. The report is written to *report (may be null) and the
 * status is CURLAB_ERR_CHECK_FAILED when any check fails. draws <= 0 uses
 * the default draw count. */
CURLAB_API curlab_status curlab_theory_check(uint64_t seed, int draws, int inject_fault,
                                             char** report);

/* Datasets. Features are row-major n x d. */
CURLAB_API curlab_status curlab_dataset_create(const double* features, size_t rows, size_t cols,
                                               const int* labels, int num_classes,
                                               curlab_dataset** out);
CURLAB_API curlab_status curlab_dataset_load_csv(const char* path, const char* label_column,
                                                 curlab_dataset** out);
CURLAB_API curlab_status curlab_dataset_two_moons(size_t n_per_moon, double noise, uint64_t seed,
                                                  curlab_dataset** out);
CURLAB_API size_t curlab_dataset_rows(const curlab_dataset* ds);
CURLAB_API size_t curlab_dataset_cols(const curlab_dataset* ds);
CURLAB_API int curlab_dataset_classes(const curlab_dataset* ds);
/* Copies features into `out` (rows * cols doubles, row-major). */
CURLAB_API curlab_status curlab_dataset_features(const curlab_dataset* ds, double* out);
/* Copies labels into `out` (rows ints); CURLAB_ERR_DATA when unlabeled. */
CURLAB_API curlab_status curlab_dataset_labels(const curlab_dataset* ds, int* out);
CURLAB_API void curlab_dataset_free(curlab_dataset* ds);

/* Models. `widths` runs from input to output; two entries is softmax
 * regression. */
CURLAB_API curlab_status curlab_model_init(const int* widths, size_t n_widths, uint64_t seed,
                                           curlab_model** out);
CURLAB_API curlab_status curlab_model_train(curlab_model* model, const curlab_dataset* data,
                                            const curlab_config* cfg, uint64_t seed);
CURLAB_API curlab_status curlab_model_load(const char* path, curlab_model** out);
CURLAB_API curlab_status curlab_model_save(const curlab_model* model, const char* path);
/* Writes rows x classes probabilities, row-major. */
CURLAB_API curlab_status curlab_model_predict(const curlab_model* model, const double* features,
                                              size_t rows, size_t cols, double* probs);
CURLAB_API int curlab_model_inputs(const curlab_model* model);
CURLAB_API int curlab_model_classes(const curlab_model* model);
CURLAB_API void curlab_model_free(curlab_model* model);

/* Pacing */
CURLAB_API curlab_status curlab_percentile(const double* values, size_t n, double rank,
                                           double* out);
/* mask[i] = 1 when sample i is selected at percentile rank t_r. */
CURLAB_API curlab_status curlab_select(const double* scores, size_t n, double t_r,
                                       unsigned char* mask, double* threshold);

#ifdef __cplusplus
}
#endif

#endif
