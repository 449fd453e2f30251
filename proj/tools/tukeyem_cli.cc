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

// Command-line front end over the C API.
//
//   tukeyem fit        one mechanism run, report JSON on stdout
//   tukeyem experiment multi-trial run, report files in --out-dir
//   tukeyem sweep      distance bound vs. (d, m) table
//
// Exit codes: 0 success (a failed PTR check is a success), 1 usage error,
// 2 ingestion or I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tukeyem/tukeyem.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIngestion = 2;

struct CommonOptions {
  std::string input;
  std::string label_col;
  std::string synthetic;
  std::string method = "tukey_em";
  std::size_t models = 0;
  double epsilon = 1.0986122886681098;  // ln 3
  double delta = 1e-5;
  std::uint64_t seed = 0;
  std::string format = "json";
  bool histograms = false;
  bool no_intercept = false;
  std::string out_dir;
  std::size_t trials = 10;
};

int exit_for_status(int status) {
  std::cerr << "error: " << tkem_status_name(status) << ": "
            << tkem_last_error() << "\n";
  return (status == TKEM_ERR_INGESTION || status == TKEM_ERR_IO)
             ? kExitIngestion
             : kExitUsage;
}

int usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

template <typename T>
std::optional<std::vector<T>> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream conv(item);
    T value{};
    if (!(conv >> value) || !conv.eof()) return std::nullopt;
    out.push_back(value);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<tkem_method> to_method(const std::string& name) {
  if (name == "tukey_em") return TKEM_METHOD_TUKEY_EM;
  if (name == "ssp") return TKEM_METHOD_SSP;
  if (name == "non_dp") return TKEM_METHOD_NON_DP;
  return std::nullopt;
}

std::optional<tkem_format> to_format(const std::string& name) {
  if (name == "json") return TKEM_FORMAT_JSON;
  if (name == "csv") return TKEM_FORMAT_CSV;
  return std::nullopt;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--input", o.input, "CSV file with a header row");
  cmd->add_option("--label-col", o.label_col,
                  "Label column name (or 0-based index)");
  cmd->add_option("--synthetic", o.synthetic,
                  "Synthetic data as n,d,sigma instead of --input");
  cmd->add_option("--method", o.method, "tukey_em, ssp or non_dp");
  cmd->add_option("--models", o.models,
                  "Number of models m for tukey_em (default: heuristic)");
  cmd->add_option("--epsilon", o.epsilon, "Privacy parameter epsilon");
  cmd->add_option("--delta", o.delta, "Privacy parameter delta");
  cmd->add_option("--seed", o.seed, "Root random seed");
  cmd->add_option("--format", o.format, "Report format: json or csv");
  cmd->add_flag("--histograms", o.histograms,
                "Also write per-coefficient model histograms");
  cmd->add_flag("--no-intercept", o.no_intercept,
                "Do not append an intercept column");
  cmd->add_option("--out-dir", o.out_dir, "Directory for report files");
}

// Fills an experiment config from the shared flags; returns an error message
// on bad usage.
std::optional<std::string> build_config(const CommonOptions& o,
                                        tkem_experiment_config& c) {
  tkem_experiment_config_init(&c);
  if (o.input.empty() == o.synthetic.empty()) {
    return "exactly one of --input or --synthetic is required";
  }
  if (!o.input.empty()) {
    if (o.label_col.empty()) return "--input requires --label-col";
    c.csv_path = o.input.c_str();
    c.label_column = o.label_col.c_str();
  } else {
    const auto parts = split_list<double>(o.synthetic);
    if (!parts || parts->size() != 3 || (*parts)[0] < 1 || (*parts)[1] < 1) {
      return "--synthetic expects n,d,sigma";
    }
    c.synthetic_n = static_cast<std::size_t>((*parts)[0]);
    c.synthetic_d = static_cast<std::size_t>((*parts)[1]);
    c.synthetic_sigma = (*parts)[2];
  }
  const auto method = to_method(o.method);
  if (!method) return "unknown --method '" + o.method + "'";
  if (!to_format(o.format)) return "unknown --format '" + o.format + "'";
  c.method = *method;
  c.num_models = o.models;
  c.epsilon = o.epsilon;
  c.delta = o.delta;
  c.seed = o.seed;
  c.trials = o.trials;
  c.add_intercept = o.no_intercept ? 0 : 1;
  c.histograms = o.histograms ? 1 : 0;
  return std::nullopt;
}

int run_fit(const CommonOptions& o) {
  tkem_experiment_config config;
  CommonOptions single = o;
  single.trials = 1;
  if (auto err = build_config(single, config)) return usage(*err);
  tkem_report* report = nullptr;
  if (int st = tkem_experiment_run(&config, &report); st != TKEM_OK) {
    return exit_for_status(st);
  }
  char* json = nullptr;
  int st = tkem_report_json(report, 1, &json);
  if (st == TKEM_OK) {
    std::fputs(json, stdout);
    tkem_string_free(json);
    if (!o.out_dir.empty()) {
      st = tkem_report_emit(report, o.out_dir.c_str(), *to_format(o.format),
                            o.histograms ? 1 : 0);
    }
  }
  tkem_report_free(report);
  return st == TKEM_OK ? 0 : exit_for_status(st);
}

int run_experiment(const CommonOptions& o) {
  tkem_experiment_config config;
  if (auto err = build_config(o, config)) return usage(*err);
  if (o.trials < 1) return usage("--trials must be at least 1");
  tkem_report* report = nullptr;
  if (int st = tkem_experiment_run(&config, &report); st != TKEM_OK) {
    return exit_for_status(st);
  }
  const std::string out_dir = o.out_dir.empty() ? "." : o.out_dir;
  int st = tkem_report_emit(report, out_dir.c_str(), *to_format(o.format),
                            o.histograms ? 1 : 0);
  if (st == TKEM_OK) {
    tkem_summary s;
    tkem_report_summary(report, &s);
    std::printf("trials=%zu released=%zu bottom=%zu errors=%zu pass_rate=%.3f",
                s.trials, s.released, s.bottom, s.errors, s.pass_rate);
    if (s.has_r2) {
      std::printf(" median_r2=%.6f q1_r2=%.6f q3_r2=%.6f", s.median_r2,
                  s.q1_r2, s.q3_r2);
    }
    std::printf("\nreport written to %s\n", out_dir.c_str());
  }
  tkem_report_free(report);
  return st == TKEM_OK ? 0 : exit_for_status(st);
}

int run_sweep(const std::string& dims, const std::string& models,
              const CommonOptions& o) {
  const auto d_list = split_list<std::size_t>(dims);
  const auto m_list = split_list<std::size_t>(models);
  if (!d_list) return usage("--dims expects a comma-separated list");
  if (!m_list) return usage("--models expects a comma-separated list");
  const auto format = to_format(o.format);
  if (!format) return usage("unknown --format '" + o.format + "'");

  tkem_sweep* sweep = nullptr;
  int st = tkem_sweep_run(d_list->data(), d_list->size(), m_list->data(),
                          m_list->size(), o.epsilon, o.delta, o.seed, &sweep);
  if (st != TKEM_OK) return exit_for_status(st);
  std::printf("%6s %6s %8s %6s %10s %6s\n", "d", "m", "n", "k", "threshold",
              "pass");
  for (std::size_t i = 0; i < tkem_sweep_size(sweep); ++i) {
    tkem_sweep_row row;
    tkem_sweep_row_at(sweep, i, &row);
    std::printf("%6zu %6zu %8zu %6d %10.3f %6s\n", row.d, row.m, row.n, row.k,
                row.threshold, row.passes ? "yes" : "no");
  }
  if (!o.out_dir.empty()) {
    st = tkem_sweep_emit(sweep, o.out_dir.c_str(), *format);
  }
  tkem_sweep_free(sweep);
  return st == TKEM_OK ? 0 : exit_for_status(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private linear regression via TukeyEM"};
  app.require_subcommand(1);

  CommonOptions fit_opts;
  auto* fit = app.add_subcommand("fit", "Run one mechanism and print the result");
  add_common(fit, fit_opts);

  CommonOptions exp_opts;
  auto* experiment =
      app.add_subcommand("experiment", "Run repeated trials and write a report");
  add_common(experiment, exp_opts);
  experiment->add_option("--trials", exp_opts.trials, "Number of trials");

  CommonOptions sweep_opts;
  std::string dims = "5,10,15,20,25,30,35,40,45,50";
  std::string models = "250,500,750,1000,1250,1500,1750,2000";
  auto* sweep = app.add_subcommand(
      "sweep", "Tabulate the PTR distance bound over feature and model counts");
  sweep->add_option("--dims", dims, "Comma-separated feature counts");
  sweep->add_option("--models", models, "Comma-separated model counts");
  sweep->add_option("--epsilon", sweep_opts.epsilon, "Privacy parameter epsilon");
  sweep->add_option("--delta", sweep_opts.delta, "Privacy parameter delta");
  sweep->add_option("--seed", sweep_opts.seed, "Root random seed");
  sweep->add_option("--format", sweep_opts.format, "Output format: json or csv");
  sweep->add_option("--out-dir", sweep_opts.out_dir, "Directory for the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*fit) return run_fit(fit_opts);
  if (*experiment) return run_experiment(exp_opts);
  return run_sweep(dims, models, sweep_opts);
}
