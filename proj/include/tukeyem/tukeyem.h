/*
 * Copyright 2026 The TukeyEM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the TukeyEM private linear-regression library.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns a tkem_status; on
 * failure tkem_last_error() describes the problem for the calling thread
 * until the next failing call on that thread.
 *
 * A TukeyEM run whose propose-test-release check fails returns TKEM_OK with
 * *released = 0. That outcome is a valid private answer, not an error.
 */
#ifndef TUKEYEM_TUKEYEM_H_
#define TUKEYEM_TUKEYEM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TUKEYEM_BUILDING_LIBRARY)
#    define TKEM_API __declspec(dllexport)
#  else
#    define TKEM_API __declspec(dllimport)
#  endif
#else
#  define TKEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tkem_status {
  TKEM_OK = 0,
  TKEM_ERR_PARAMETER = 1,
  TKEM_ERR_INSUFFICIENT_DATA = 2,
  TKEM_ERR_UNDEFINED_SCORE = 3,
  TKEM_ERR_DEGENERATE_REGION = 4,
  TKEM_ERR_UNSUPPORTED_DIMENSION = 5,
  TKEM_ERR_PRECONDITION = 6,
  TKEM_ERR_INGESTION = 7,
  TKEM_ERR_IO = 8,
  TKEM_ERR_BUFFER_TOO_SMALL = 9,
  TKEM_ERR_INTERNAL = 99
} tkem_status;

typedef enum tkem_method {
  TKEM_METHOD_TUKEY_EM = 0,
  TKEM_METHOD_SSP = 1,
  TKEM_METHOD_NON_DP = 2
} tkem_method;

typedef enum tkem_format {
  TKEM_FORMAT_JSON = 0,
  TKEM_FORMAT_CSV = 1
} tkem_format;

typedef struct tkem_dataset tkem_dataset;
typedef struct tkem_report tkem_report;
typedef struct tkem_sweep tkem_sweep;

TKEM_API const char* tkem_version(void);
TKEM_API const char* tkem_status_name(int status);
TKEM_API const char* tkem_last_error(void);

/* ---- datasets ---------------------------------------------------------- */

/* Copies a row-major n x d feature block and n labels. */
TKEM_API int tkem_dataset_from_arrays(const double* features,
                                      const double* labels, size_t n, size_t d,
                                      tkem_dataset** out);
/* label_column is a header name, or a 0-based index written as digits. */
TKEM_API int tkem_dataset_load_csv(const char* path, const char* label_column,
                                   int add_intercept, tkem_dataset** out);
TKEM_API int tkem_dataset_synthetic(size_t n, size_t d_features,
                                    double noise_sigma, uint64_t seed,
                                    int add_intercept, tkem_dataset** out);
TKEM_API int tkem_dataset_save_csv(const tkem_dataset* data, const char* path);
TKEM_API size_t tkem_dataset_rows(const tkem_dataset* data);
TKEM_API size_t tkem_dataset_cols(const tkem_dataset* data);
TKEM_API void tkem_dataset_free(tkem_dataset* data);

/* ---- single runs ------------------------------------------------------- */

TKEM_API int tkem_heuristic_num_models(size_t n, size_t d, size_t* out);

typedef struct tkem_fit_params {
  tkem_method method;
  size_t num_models; /* 0 selects the heuristic; TukeyEM only */
  double epsilon;
  double delta;
  uint64_t seed;
} tkem_fit_params;

TKEM_API void tkem_fit_params_init(tkem_fit_params* params);

/* Writes d coefficients into `coefficients` (capacity >= d) when released.
 * `r_squared` (optional) receives the in-sample R^2 of released output, or
 * NaN. SSP uses the dataset's exact norm bounds. */
TKEM_API int tkem_fit(const tkem_dataset* data, const tkem_fit_params* params,
                      double* coefficients, size_t capacity, int* released,
                      double* r_squared);

/* ---- experiments ------------------------------------------------------- */

typedef struct tkem_experiment_config {
  const char* csv_path;     /* NULL selects the synthetic source */
  const char* label_column; /* required with csv_path */
  size_t synthetic_n;
  size_t synthetic_d;
  double synthetic_sigma;
  double synthetic_coefficient_scale;
  tkem_method method;
  size_t num_models; /* 0 selects the heuristic */
  double epsilon;
  double delta;
  size_t trials;
  uint64_t seed;
  int add_intercept;
  int histograms;
  size_t histogram_bins;
} tkem_experiment_config;

/* Synthetic 22000 x 10 (sigma 10), TukeyEM, (ln 3, 1e-5), 10 trials, seed 0,
 * intercept on, no histograms, 30 bins. */
TKEM_API void tkem_experiment_config_init(tkem_experiment_config* config);
TKEM_API int tkem_experiment_run(const tkem_experiment_config* config,
                                 tkem_report** out);

typedef struct tkem_summary {
  size_t trials;
  size_t released;
  size_t bottom;
  size_t errors;
  double pass_rate;
  int has_r2; /* 0 when no trial released a model */
  double median_r2;
  double q1_r2;
  double q3_r2;
  size_t n;
  size_t d;
  size_t num_models; /* 0 when not applicable */
} tkem_summary;

TKEM_API int tkem_report_summary(const tkem_report* report, tkem_summary* out);
/* Heap string owned by the caller; release with tkem_string_free. */
TKEM_API int tkem_report_json(const tkem_report* report, int include_timings,
                              char** out);
TKEM_API int tkem_report_emit(const tkem_report* report, const char* out_dir,
                              tkem_format format, int histograms);
TKEM_API void tkem_report_free(tkem_report* report);
TKEM_API void tkem_string_free(char* s);

/* ---- model-count sweep ------------------------------------------------- */

typedef struct tkem_sweep_row {
  size_t d;
  size_t m;
  size_t n;
  int k;
  double threshold;
  int passes;
} tkem_sweep_row;

TKEM_API int tkem_sweep_run(const size_t* dims, size_t num_dims,
                            const size_t* models, size_t num_models,
                            double epsilon, double delta, uint64_t seed,
                            tkem_sweep** out);
TKEM_API size_t tkem_sweep_size(const tkem_sweep* sweep);
TKEM_API int tkem_sweep_row_at(const tkem_sweep* sweep, size_t index,
                               tkem_sweep_row* out);
TKEM_API int tkem_sweep_emit(const tkem_sweep* sweep, const char* out_dir,
                             tkem_format format);
TKEM_API void tkem_sweep_free(tkem_sweep* sweep);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* TUKEYEM_TUKEYEM_H_ */
