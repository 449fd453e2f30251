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

#include "tukeyem/tukeyem.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "tukeyem/baselines.h"
#include "tukeyem/errors.h"
#include "tukeyem/harness.h"
#include "tukeyem/mechanism.h"

struct tkem_dataset {
  tukeyem::Dataset data;
};

struct tkem_report {
  tukeyem::ExperimentReport report;
};

struct tkem_sweep {
  std::vector<tukeyem::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

int fail(int status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
int guarded(Body&& body) {
  try {
    return body();
  } catch (const tukeyem::Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TKEM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TKEM_ERR_INTERNAL, e.what());
  }
}

#define TKEM_REQUIRE(cond, msg) \
  do {                          \
    if (!(cond)) return fail(TKEM_ERR_PARAMETER, msg); \
  } while (0)

tukeyem::Method to_method(tkem_method m) {
  switch (m) {
    case TKEM_METHOD_TUKEY_EM:
      return tukeyem::Method::kTukeyEm;
    case TKEM_METHOD_SSP:
      return tukeyem::Method::kSsp;
    case TKEM_METHOD_NON_DP:
      return tukeyem::Method::kNonDp;
  }
  throw tukeyem::Error(tukeyem::ErrorCode::kParameter, "unknown method");
}

tukeyem::ReportFormat to_format(tkem_format f) {
  switch (f) {
    case TKEM_FORMAT_JSON:
      return tukeyem::ReportFormat::kJson;
    case TKEM_FORMAT_CSV:
      return tukeyem::ReportFormat::kCsv;
  }
  throw tukeyem::Error(tukeyem::ErrorCode::kParameter, "unknown format");
}

}  // namespace

extern "C" {

const char* tkem_version(void) { return "1.0.0"; }

const char* tkem_status_name(int status) {
  switch (status) {
    case TKEM_OK:
      return "ok";
    case TKEM_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    case TKEM_ERR_INTERNAL:
      return "internal error";
    default:
      if (status >= TKEM_ERR_PARAMETER && status <= TKEM_ERR_IO) {
        return tukeyem::error_code_name(static_cast<tukeyem::ErrorCode>(status));
      }
      return "unknown status";
  }
}

const char* tkem_last_error(void) { return g_last_error.c_str(); }

int tkem_dataset_from_arrays(const double* features, const double* labels,
                             size_t n, size_t d, tkem_dataset** out) {
  TKEM_REQUIRE(features && labels && out, "null argument");
  return guarded([&] {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>;
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(d);
    tukeyem::Matrix x = Eigen::Map<const RowMajor>(features, rows, cols);
    tukeyem::Vector y = Eigen::Map<const tukeyem::Vector>(labels, rows);
    *out = new tkem_dataset{tukeyem::Dataset(std::move(x), std::move(y))};
    return TKEM_OK;
  });
}

int tkem_dataset_load_csv(const char* path, const char* label_column,
                          int add_intercept, tkem_dataset** out) {
  TKEM_REQUIRE(path && label_column && out, "null argument");
  return guarded([&] {
    *out = new tkem_dataset{
        tukeyem::load_csv(path, label_column, add_intercept != 0)};
    return TKEM_OK;
  });
}

int tkem_dataset_synthetic(size_t n, size_t d_features, double noise_sigma,
                           uint64_t seed, int add_intercept,
                           tkem_dataset** out) {
  TKEM_REQUIRE(out, "null argument");
  return guarded([&] {
    tukeyem::ExperimentConfig config;
    config.source = tukeyem::SyntheticSpec{n, d_features, noise_sigma, 100.0};
    config.seed = seed;
    config.add_intercept = add_intercept != 0;
    *out = new tkem_dataset{tukeyem::load_dataset(config)};
    return TKEM_OK;
  });
}

int tkem_dataset_save_csv(const tkem_dataset* data, const char* path) {
  TKEM_REQUIRE(data && path, "null argument");
  return guarded([&] {
    tukeyem::save_csv(data->data, path);
    return TKEM_OK;
  });
}

size_t tkem_dataset_rows(const tkem_dataset* data) {
  return data ? data->data.rows() : 0;
}

size_t tkem_dataset_cols(const tkem_dataset* data) {
  return data ? data->data.cols() : 0;
}

void tkem_dataset_free(tkem_dataset* data) { delete data; }

int tkem_heuristic_num_models(size_t n, size_t d, size_t* out) {
  TKEM_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = tukeyem::heuristic_num_models(n, d);
    return TKEM_OK;
  });
}

void tkem_fit_params_init(tkem_fit_params* params) {
  if (!params) return;
  params->method = TKEM_METHOD_TUKEY_EM;
  params->num_models = 0;
  params->epsilon = std::log(3.0);
  params->delta = 1e-5;
  params->seed = 0;
}

int tkem_fit(const tkem_dataset* data, const tkem_fit_params* params,
             double* coefficients, size_t capacity, int* released,
             double* r_squared) {
  TKEM_REQUIRE(data && params && released, "null argument");
  const tukeyem::Dataset& ds = data->data;
  if (capacity < ds.cols() || !coefficients) {
    return fail(TKEM_ERR_BUFFER_TOO_SMALL,
                "coefficient buffer needs room for " +
                    std::to_string(ds.cols()) + " values");
  }
  return guarded([&] {
    const tukeyem::PrivacyBudget budget{params->epsilon, params->delta};
    tukeyem::Rng rng(params->seed);
    std::optional<tukeyem::Vector> beta;
    switch (to_method(params->method)) {
      case tukeyem::Method::kTukeyEm: {
        const std::size_t m =
            params->num_models != 0
                ? params->num_models
                : tukeyem::heuristic_num_models(ds.rows(), ds.cols());
        beta = tukeyem::tukey_em(ds, m, budget, rng).coefficients;
        break;
      }
      case tukeyem::Method::kSsp:
        beta = tukeyem::ssp_regression(ds, budget, tukeyem::exact_bounds(ds),
                                       rng);
        break;
      case tukeyem::Method::kNonDp:
        beta = tukeyem::non_dp_baseline(ds);
        break;
    }
    *released = beta ? 1 : 0;
    if (r_squared) *r_squared = std::numeric_limits<double>::quiet_NaN();
    if (beta) {
      std::copy(beta->data(), beta->data() + beta->size(), coefficients);
      if (r_squared) *r_squared = tukeyem::r_squared(*beta, ds);
    }
    return TKEM_OK;
  });
}

void tkem_experiment_config_init(tkem_experiment_config* config) {
  if (!config) return;
  const tukeyem::ExperimentConfig defaults;
  const tukeyem::SyntheticSpec spec;
  config->csv_path = nullptr;
  config->label_column = nullptr;
  config->synthetic_n = spec.n;
  config->synthetic_d = spec.d_features;
  config->synthetic_sigma = spec.noise_sigma;
  config->synthetic_coefficient_scale = spec.coefficient_scale;
  config->method = TKEM_METHOD_TUKEY_EM;
  config->num_models = 0;
  config->epsilon = defaults.budget.epsilon;
  config->delta = defaults.budget.delta;
  config->trials = defaults.trials;
  config->seed = defaults.seed;
  config->add_intercept = defaults.add_intercept ? 1 : 0;
  config->histograms = defaults.histograms ? 1 : 0;
  config->histogram_bins = defaults.histogram_bins;
}

int tkem_experiment_run(const tkem_experiment_config* config,
                        tkem_report** out) {
  TKEM_REQUIRE(config && out, "null argument");
  TKEM_REQUIRE(!config->csv_path || config->label_column,
               "a CSV source needs a label column");
  return guarded([&] {
    tukeyem::ExperimentConfig c;
    if (config->csv_path) {
      c.source = tukeyem::CsvSource{config->csv_path, config->label_column};
    } else {
      c.source = tukeyem::SyntheticSpec{
          config->synthetic_n, config->synthetic_d, config->synthetic_sigma,
          config->synthetic_coefficient_scale};
    }
    c.method = to_method(config->method);
    if (config->num_models != 0) c.num_models = config->num_models;
    c.budget = {config->epsilon, config->delta};
    c.trials = config->trials;
    c.seed = config->seed;
    c.add_intercept = config->add_intercept != 0;
    c.histograms = config->histograms != 0;
    c.histogram_bins = config->histogram_bins;
    *out = new tkem_report{tukeyem::run_experiment(c)};
    return TKEM_OK;
  });
}

int tkem_report_summary(const tkem_report* report, tkem_summary* out) {
  TKEM_REQUIRE(report && out, "null argument");
  const auto& r = report->report;
  const auto& a = r.aggregates;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out->trials = r.trials.size();
  out->released = a.released;
  out->bottom = a.bottom;
  out->errors = a.errors;
  out->pass_rate = a.pass_rate;
  out->has_r2 = a.median_r2 ? 1 : 0;
  out->median_r2 = a.median_r2.value_or(nan);
  out->q1_r2 = a.q1_r2.value_or(nan);
  out->q3_r2 = a.q3_r2.value_or(nan);
  out->n = r.n;
  out->d = r.d;
  out->num_models = r.num_models.value_or(0);
  return TKEM_OK;
}

int tkem_report_json(const tkem_report* report, int include_timings,
                     char** out) {
  TKEM_REQUIRE(report && out, "null argument");
  return guarded([&] {
    const std::string body =
        tukeyem::report_json(report->report, include_timings != 0);
    char* buf = static_cast<char*>(std::malloc(body.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, body.c_str(), body.size() + 1);
    *out = buf;
    return TKEM_OK;
  });
}

int tkem_report_emit(const tkem_report* report, const char* out_dir,
                     tkem_format format, int histograms) {
  TKEM_REQUIRE(report && out_dir, "null argument");
  return guarded([&] {
    tukeyem::emit_report(report->report, to_format(format), histograms != 0,
                         out_dir);
    return TKEM_OK;
  });
}

void tkem_report_free(tkem_report* report) { delete report; }

void tkem_string_free(char* s) { std::free(s); }

int tkem_sweep_run(const size_t* dims, size_t num_dims, const size_t* models,
                   size_t num_models, double epsilon, double delta,
                   uint64_t seed, tkem_sweep** out) {
  TKEM_REQUIRE(out && (dims || num_dims == 0) && (models || num_models == 0),
               "null argument");
  return guarded([&] {
    const std::vector<std::size_t> d_list(dims, dims + num_dims);
    const std::vector<std::size_t> m_list(models, models + num_models);
    *out = new tkem_sweep{
        tukeyem::sweep_heuristic(d_list, m_list, {epsilon, delta}, seed)};
    return TKEM_OK;
  });
}

size_t tkem_sweep_size(const tkem_sweep* sweep) {
  return sweep ? sweep->rows.size() : 0;
}

int tkem_sweep_row_at(const tkem_sweep* sweep, size_t index,
                      tkem_sweep_row* out) {
  TKEM_REQUIRE(sweep && out, "null argument");
  TKEM_REQUIRE(index < sweep->rows.size(), "sweep row index out of range");
  const auto& r = sweep->rows[index];
  *out = tkem_sweep_row{r.d, r.m, r.n, r.k, r.threshold, r.passes ? 1 : 0};
  return TKEM_OK;
}

int tkem_sweep_emit(const tkem_sweep* sweep, const char* out_dir,
                    tkem_format format) {
  TKEM_REQUIRE(sweep && out_dir, "null argument");
  return guarded([&] {
    tukeyem::emit_sweep(sweep->rows, to_format(format), out_dir);
    return TKEM_OK;
  });
}

void tkem_sweep_free(tkem_sweep* sweep) { delete sweep; }

}  // extern "C"
