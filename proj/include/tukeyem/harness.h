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

#ifndef TUKEYEM_HARNESS_H_
#define TUKEYEM_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tukeyem/mechanism.h"
#include "tukeyem/regression.h"

namespace tukeyem {

enum class Method { kTukeyEm, kSsp, kNonDp };

std::string_view method_name(Method method);
// Accepts "tukey_em", "ssp" and "non_dp"; throws kParameter otherwise.
Method parse_method(std::string_view name);

struct CsvSource {
  std::filesystem::path path;
  // Header name of the label column; a bare integer that matches no header
  // is read as a 0-based column index.
  std::string label_column;
};

struct ExperimentConfig {
  std::variant<CsvSource, SyntheticSpec> source = SyntheticSpec{};
  Method method = Method::kTukeyEm;
  std::optional<std::size_t> num_models;  // heuristic when unset
  PrivacyBudget budget{1.0986122886681098, 1e-5};  // (ln 3, 1e-5)
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  bool add_intercept = true;
  bool histograms = false;
  std::size_t histogram_bins = 30;
};

enum class TrialStatus { kReleased, kBottom, kError };
std::string_view trial_status_name(TrialStatus status);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  TrialStatus status = TrialStatus::kError;
  std::optional<double> r2;
  std::vector<double> coefficients;
  std::optional<PtrOutcome> ptr;  // TukeyEM only
  std::size_t sampled_depth = 0;
  std::string error;
  StageTimings timings;
  double wall_seconds = 0.0;
};

struct ReportAggregates {
  std::optional<double> median_r2;
  std::optional<double> q1_r2;
  std::optional<double> q3_r2;
  double pass_rate = 0.0;  // released / trials
  std::size_t released = 0;
  std::size_t bottom = 0;
  std::size_t errors = 0;
};

struct HistogramBin {
  std::size_t coefficient = 0;
  std::size_t bin = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double gaussian_mean = 0.0;
  double gaussian_sd = 0.0;
  double gaussian_expected = 0.0;  // expected count under N(mean, sd^2)
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<std::size_t> num_models;
  std::vector<TrialRecord> trials;
  ReportAggregates aggregates;
  std::vector<HistogramBin> histogram;
  double total_seconds = 0.0;
};

// Reads a header-first numeric CSV. Throws kIngestion with the offending row
// (1-based, header excluded) and column on malformed input.
Dataset load_csv(const std::filesystem::path& path,
                 std::string_view label_column, bool add_intercept);

// Writes features as x0..x{d-1} followed by a `y` column, at round-trip
// precision. Throws kIo on failure.
void save_csv(const Dataset& data, const std::filesystem::path& path);

// Dataset described by the config's source, intercept applied. Synthetic
// data is drawn from a stream seeded by config.seed.
Dataset load_dataset(const ExperimentConfig& config);

// Linear-interpolation quantile (the "linear" rule), q in [0, 1].
double quantile(std::vector<double> values, double q);

ReportAggregates aggregate_trials(const std::vector<TrialRecord>& trials);

// Per-coefficient histograms of the models with moment-matched Gaussian
// reference counts; bins x d rows.
std::vector<HistogramBin> model_histograms(const ModelSet& models,
                                           std::size_t bins);

// Runs `config.trials` independent trials on one dataset. R^2 is in-sample on
// the full dataset; failed (bottom) trials are excluded from R^2 aggregates.
// Per-trial failures are recorded, not thrown.
ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const Dataset& data);

struct SweepRow {
  std::size_t d = 0;  // synthetic features; models also carry an intercept
  std::size_t m = 0;
  std::size_t n = 0;
  int k = -1;
  double threshold = 0.0;
  bool passes = false;  // k >= threshold, before Laplace noise
};

// For every (d, m): synthetic data with d features plus intercept and
// n = (d+1) m rows, partitioned OLS, perturbation and volumes, then the
// distance bound a PTR check run directly at `budget` would compute. Note
// that tukey_em spends only half its epsilon on that check.
std::vector<SweepRow> sweep_heuristic(const std::vector<std::size_t>& d_list,
                                      const std::vector<std::size_t>& m_list,
                                      const PrivacyBudget& budget,
                                      std::uint64_t seed);

enum class ReportFormat { kJson, kCsv };
std::optional<ReportFormat> parse_format(std::string_view name);

// Report as JSON. Field names:
//   format_version, config{source{type, ...}, method, num_models, epsilon,
//   delta, trials, seed, add_intercept, histograms}, data{n, d}, num_models,
//   trials[{index, seed, status, r2, coefficients, ptr{k, t, noise,
//   threshold, passed}, sampled_depth, error, timings{ols_seconds,
//   post_ols_seconds, wall_seconds}}], aggregates{median_r2, q1_r2, q3_r2,
//   pass_rate, released, bottom, errors}, timings{total_seconds}.
// Doubles are written at round-trip precision; absent values are null.
std::string report_json(const ExperimentReport& report,
                        bool include_timings = true);

// One row per trial; coefficient columns beta_0..beta_{d-1}.
std::string report_trials_csv(const ExperimentReport& report);
// metric,value rows for the aggregates.
std::string report_summary_csv(const ExperimentReport& report);
std::string histogram_csv(const std::vector<HistogramBin>& bins);

// Writes report.json, or report.csv + summary.csv, plus histograms.csv when
// requested and available. Returns the paths written.
std::vector<std::filesystem::path> emit_report(
    const ExperimentReport& report, ReportFormat format, bool histograms,
    const std::filesystem::path& out_dir);

std::string sweep_json(const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::filesystem::path emit_sweep(const std::vector<SweepRow>& rows,
                                 ReportFormat format,
                                 const std::filesystem::path& out_dir);

}  // namespace tukeyem

#endif  // TUKEYEM_HARNESS_H_
