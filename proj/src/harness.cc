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

#include "tukeyem/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "tukeyem/baselines.h"
#include "tukeyem/depth.h"
#include "tukeyem/errors.h"
#include "tukeyem/ptr.h"

namespace tukeyem {

namespace {

// Stream indices reserved next to the per-trial seeds.
constexpr std::uint64_t kHistogramStream = 0xFFFF'FFFF'0000'0001ULL;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

TrialRecord run_trial(const ExperimentConfig& config, const Dataset& data,
                      std::optional<std::size_t> num_models, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(config.seed, index);
  Rng rng(rec.seed);
  const auto start = std::chrono::steady_clock::now();
  try {
    std::optional<Vector> beta;
    switch (config.method) {
      case Method::kTukeyEm: {
        const std::size_t m = num_models
                                  ? *num_models
                                  : heuristic_num_models(data.rows(), data.cols());
        MechanismResult res = tukey_em(data, m, config.budget, rng);
        rec.ptr = res.trace.ptr;
        rec.sampled_depth = res.trace.sampled_depth;
        rec.timings = res.trace.timings;
        beta = std::move(res.coefficients);
        break;
      }
      case Method::kSsp:
        beta = ssp_regression(data, config.budget, exact_bounds(data), rng);
        break;
      case Method::kNonDp:
        beta = non_dp_baseline(data);
        break;
    }
    if (beta) {
      rec.status = TrialStatus::kReleased;
      rec.coefficients.assign(beta->data(), beta->data() + beta->size());
      rec.r2 = r_squared(*beta, data);
    } else {
      rec.status = TrialStatus::kBottom;
    }
  } catch (const Error& e) {
    rec.status = TrialStatus::kError;
    rec.r2.reset();
    rec.error = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  rec.wall_seconds = seconds_since(start);
  return rec;
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kTukeyEm:
      return "tukey_em";
    case Method::kSsp:
      return "ssp";
    case Method::kNonDp:
      return "non_dp";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "tukey_em") return Method::kTukeyEm;
  if (name == "ssp") return Method::kSsp;
  if (name == "non_dp") return Method::kNonDp;
  throw Error(ErrorCode::kParameter,
              "unknown method '" + std::string(name) +
                  "' (expected tukey_em, ssp or non_dp)");
}

std::string_view trial_status_name(TrialStatus status) {
  switch (status) {
    case TrialStatus::kReleased:
      return "released";
    case TrialStatus::kBottom:
      return "bottom";
    case TrialStatus::kError:
      return "error";
  }
  return "unknown";
}

Dataset load_dataset(const ExperimentConfig& config) {
  if (const auto* csv = std::get_if<CsvSource>(&config.source)) {
    return load_csv(csv->path, csv->label_column, config.add_intercept);
  }
  Rng rng(config.seed);
  auto synth = generate_synthetic(std::get<SyntheticSpec>(config.source), rng);
  return config.add_intercept ? synth.data.with_intercept()
                              : std::move(synth.data);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) {
    throw Error(ErrorCode::kParameter, "quantile of an empty sample");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::kParameter, "quantile level must be in [0, 1]");
  }
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

ReportAggregates aggregate_trials(const std::vector<TrialRecord>& trials) {
  ReportAggregates agg;
  std::vector<double> scores;
  for (const auto& t : trials) {
    switch (t.status) {
      case TrialStatus::kReleased:
        ++agg.released;
        if (t.r2) scores.push_back(*t.r2);
        break;
      case TrialStatus::kBottom:
        ++agg.bottom;
        break;
      case TrialStatus::kError:
        ++agg.errors;
        break;
    }
  }
  if (!trials.empty()) {
    agg.pass_rate = static_cast<double>(agg.released) /
                    static_cast<double>(trials.size());
  }
  if (!scores.empty()) {
    agg.median_r2 = quantile(scores, 0.5);
    agg.q1_r2 = quantile(scores, 0.25);
    agg.q3_r2 = quantile(scores, 0.75);
  }
  return agg;
}

std::vector<HistogramBin> model_histograms(const ModelSet& models,
                                           std::size_t bins) {
  if (bins < 1) throw Error(ErrorCode::kParameter, "need at least one bin");
  std::vector<HistogramBin> out;
  const Matrix& b = models.models();
  const double count = static_cast<double>(b.rows());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const auto col = b.col(j);
    const double mean = col.mean();
    const double sd =
        b.rows() > 1
            ? std::sqrt((col.array() - mean).square().sum() / (count - 1.0))
            : 0.0;
    double lo = col.minCoeff();
    double hi = col.maxCoeff();
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      auto k = static_cast<std::size_t>((col(i) - lo) / width);
      counts[std::min(k, bins - 1)]++;
    }
    for (std::size_t k = 0; k < bins; ++k) {
      HistogramBin bin;
      bin.coefficient = static_cast<std::size_t>(j);
      bin.bin = k;
      bin.lower = lo + width * static_cast<double>(k);
      bin.upper = k + 1 == bins ? hi : lo + width * static_cast<double>(k + 1);
      bin.count = counts[k];
      bin.gaussian_mean = mean;
      bin.gaussian_sd = sd;
      if (sd > 0.0) {
        bin.gaussian_expected =
            count * (normal_cdf((bin.upper - mean) / sd) -
                     normal_cdf((bin.lower - mean) / sd));
      } else {
        bin.gaussian_expected =
            (mean >= bin.lower && mean <= bin.upper) ? count : 0.0;
      }
      out.push_back(bin);
    }
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, load_dataset(config));
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const Dataset& data) {
  if (config.trials < 1) {
    throw Error(ErrorCode::kParameter, "trials must be at least 1");
  }
  validate_budget(config.budget);
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.config = config;
  report.n = data.rows();
  report.d = data.cols();
  const bool needs_models =
      config.method == Method::kTukeyEm || config.histograms;
  if (needs_models) {
    if (config.num_models) {
      report.num_models = *config.num_models;
    } else {
      // An unusable heuristic resurfaces as a per-trial error.
      try {
        report.num_models = heuristic_num_models(data.rows(), data.cols());
      } catch (const Error&) {
      }
    }
  }

  report.trials.reserve(config.trials);
  for (std::size_t i = 0; i < config.trials; ++i) {
    report.trials.push_back(run_trial(config, data, report.num_models, i));
  }
  report.aggregates = aggregate_trials(report.trials);

  if (config.histograms && report.num_models) {
    Rng rng(derive_seed(config.seed, kHistogramStream));
    report.histogram = model_histograms(
        partition_fit(data, *report.num_models, rng), config.histogram_bins);
  }
  report.total_seconds = seconds_since(start);
  return report;
}

std::vector<SweepRow> sweep_heuristic(const std::vector<std::size_t>& d_list,
                                      const std::vector<std::size_t>& m_list,
                                      const PrivacyBudget& budget,
                                      std::uint64_t seed) {
  validate_budget(budget);
  // `budget` is the PTR check's own budget; no mechanism split applies here.
  const double ptr_epsilon = budget.epsilon;
  const double bound_delta = budget.delta / (8.0 * std::exp(ptr_epsilon));
  const double threshold = ptr_threshold(ptr_epsilon, budget.delta);

  std::vector<SweepRow> rows;
  std::uint64_t stream = 0;
  for (std::size_t d : d_list) {
    for (std::size_t m : m_list) {
      if (d < 1 || m < 8) {
        throw Error(ErrorCode::kParameter, "sweep needs d >= 1 and m >= 8");
      }
      SweepRow row;
      row.d = d;
      row.m = m;
      row.n = (d + 1) * m;
      Rng rng(derive_seed(seed, stream++));
      SyntheticSpec spec;
      spec.n = row.n;
      spec.d_features = d;
      const Dataset data = generate_synthetic(spec, rng).data.with_intercept();
      const SortedProjections s =
          sorted_projections(perturb_models(partition_fit(data, m, rng), rng));
      const LogVolumes vols = compute_log_volumes(s);
      row.k = distance_lower_bound(vols, vols.size() / 2, ptr_epsilon,
                                   bound_delta);
      row.threshold = threshold;
      row.passes = static_cast<double>(row.k) >= threshold;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace tukeyem
