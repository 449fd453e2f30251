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

/* Exercises the C interface from a C translation unit, linked against the
 * shared library only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "tukeyem/tukeyem.h"

static int failures = 0;

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: check failed: %s (last error: %s)\n",   \
              __FILE__, __LINE__, #cond, tkem_last_error());          \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void test_arrays_and_fit(void) {
  /* y = 1 + 2x exactly. */
  double x[40], y[20];
  tkem_dataset* data = NULL;
  tkem_fit_params params;
  double beta[2] = {0, 0};
  double small[1];
  double r2 = 0;
  int released = -1;
  int i;
  for (i = 0; i < 20; ++i) {
    x[2 * i] = 1.0;
    x[2 * i + 1] = (double)i;
    y[i] = 1.0 + 2.0 * i;
  }
  CHECK(tkem_dataset_from_arrays(x, y, 20, 2, &data) == TKEM_OK);
  CHECK(tkem_dataset_rows(data) == 20);
  CHECK(tkem_dataset_cols(data) == 2);

  tkem_fit_params_init(&params);
  params.method = TKEM_METHOD_NON_DP;
  CHECK(tkem_fit(data, &params, beta, 2, &released, &r2) == TKEM_OK);
  CHECK(released == 1);
  CHECK(fabs(beta[0] - 1.0) < 1e-10 && fabs(beta[1] - 2.0) < 1e-10);
  CHECK(fabs(r2 - 1.0) < 1e-12);

  CHECK(tkem_fit(data, &params, small, 1, &released, NULL) ==
        TKEM_ERR_BUFFER_TOO_SMALL);
  CHECK(strlen(tkem_last_error()) > 0);
  tkem_dataset_free(data);
}

static void test_tukey_em_paths(void) {
  tkem_dataset* data = NULL;
  tkem_fit_params params;
  double beta[51];
  double r2 = 0;
  int released = -1;
  size_t m = 0;

  CHECK(tkem_dataset_synthetic(22000, 10, 10.0, 1, 1, &data) == TKEM_OK);
  CHECK(tkem_heuristic_num_models(22000, 11, &m) == TKEM_OK && m == 1000);
  tkem_fit_params_init(&params);
  params.seed = 5;
  CHECK(tkem_fit(data, &params, beta, 51, &released, &r2) == TKEM_OK);
  CHECK(released == 1);
  CHECK(r2 > 0.99);
  tkem_dataset_free(data);

  /* Failed propose-test-release is a valid outcome, not an error. */
  CHECK(tkem_dataset_synthetic(51 * 250, 50, 10.0, 2, 1, &data) == TKEM_OK);
  params.num_models = 250;
  CHECK(tkem_fit(data, &params, beta, 51, &released, &r2) == TKEM_OK);
  CHECK(released == 0);
  CHECK(isnan(r2));
  tkem_dataset_free(data);

  CHECK(tkem_heuristic_num_models(100, 10, &m) == TKEM_ERR_INSUFFICIENT_DATA);
}

static void test_errors(void) {
  tkem_dataset* data = NULL;
  double x[2] = {1, NAN}, y[2] = {1, 2};
  CHECK(tkem_dataset_from_arrays(x, y, 2, 1, &data) == TKEM_ERR_PARAMETER);
  CHECK(data == NULL);
  CHECK(tkem_dataset_load_csv("/nonexistent/file.csv", "y", 1, &data) ==
        TKEM_ERR_INGESTION);
  CHECK(strstr(tkem_last_error(), "/nonexistent/file.csv") != NULL);
  CHECK(tkem_dataset_from_arrays(NULL, y, 2, 1, &data) == TKEM_ERR_PARAMETER);
  CHECK(strcmp(tkem_status_name(TKEM_OK), "ok") == 0);
  CHECK(strcmp(tkem_status_name(TKEM_ERR_INGESTION), "ingestion error") == 0);
}

static void test_experiment_and_sweep(void) {
  tkem_experiment_config config;
  tkem_report* report = NULL;
  tkem_summary s;
  char* json = NULL;
  tkem_sweep* sweep = NULL;
  tkem_sweep_row row;
  size_t dims[1] = {5};
  size_t models[2] = {250, 500};

  tkem_experiment_config_init(&config);
  config.synthetic_n = 5000;
  config.synthetic_d = 3;
  config.trials = 3;
  config.method = TKEM_METHOD_SSP;
  CHECK(tkem_experiment_run(&config, &report) == TKEM_OK);
  CHECK(tkem_report_summary(report, &s) == TKEM_OK);
  CHECK(s.trials == 3 && s.released == 3 && s.has_r2);
  CHECK(s.n == 5000 && s.d == 4);
  CHECK(tkem_report_json(report, 0, &json) == TKEM_OK);
  CHECK(json != NULL && strstr(json, "\"format_version\": 1") != NULL);
  tkem_string_free(json);
  tkem_report_free(report);

  config.trials = 0;
  CHECK(tkem_experiment_run(&config, &report) == TKEM_ERR_PARAMETER);

  CHECK(tkem_sweep_run(dims, 1, models, 2, log(3.0), 1e-5, 0, &sweep) == TKEM_OK);
  CHECK(tkem_sweep_size(sweep) == 2);
  CHECK(tkem_sweep_row_at(sweep, 1, &row) == TKEM_OK);
  CHECK(row.d == 5 && row.m == 500 && row.n == 3000);
  CHECK(tkem_sweep_row_at(sweep, 2, &row) == TKEM_ERR_PARAMETER);
  tkem_sweep_free(sweep);
}

int main(void) {
  test_arrays_and_fit();
  test_tukey_em_paths();
  test_errors();
  test_experiment_and_sweep();
  if (failures == 0) printf("c api: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
