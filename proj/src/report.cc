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

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "text_util.h"
#include "tukeyem/errors.h"
#include "tukeyem/harness.h"

namespace tukeyem {

namespace {

using nlohmann::json;
using internal::format_double;

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string optional_csv(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

json config_json(const ExperimentConfig& c) {
  json source;
  if (const auto* csv = std::get_if<CsvSource>(&c.source)) {
    source = {{"type", "csv"},
              {"path", csv->path.string()},
              {"label_column", csv->label_column}};
  } else {
    const auto& s = std::get<SyntheticSpec>(c.source);
    source = {{"type", "synthetic"},
              {"n", s.n},
              {"d_features", s.d_features},
              {"noise_sigma", s.noise_sigma},
              {"coefficient_scale", s.coefficient_scale}};
  }
  return {{"source", source},
          {"method", std::string(method_name(c.method))},
          {"num_models", c.num_models ? json(*c.num_models) : json(nullptr)},
          {"epsilon", c.budget.epsilon},
          {"delta", c.budget.delta},
          {"trials", c.trials},
          {"seed", c.seed},
          {"add_intercept", c.add_intercept},
          {"histograms", c.histograms}};
}

json trial_json(const TrialRecord& t, bool include_timings) {
  json out = {{"index", t.index},
              {"seed", t.seed},
              {"status", std::string(trial_status_name(t.status))},
              {"r2", optional_number(t.r2)},
              {"coefficients", t.coefficients},
              {"sampled_depth", t.sampled_depth},
              {"error", t.error.empty() ? json(nullptr) : json(t.error)}};
  if (t.ptr) {
    out["ptr"] = {{"k", t.ptr->k},
                  {"t", t.ptr->t},
                  {"noise", t.ptr->noise},
                  {"threshold", t.ptr->threshold},
                  {"passed", t.ptr->passed}};
  } else {
    out["ptr"] = nullptr;
  }
  if (include_timings) {
    out["timings"] = {{"ols_seconds", t.timings.ols_seconds},
                      {"post_ols_seconds", t.timings.post_ols_seconds},
                      {"wall_seconds", t.wall_seconds}};
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, path.string() + ": cannot open for writing");
  }
  out << body;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, path.string() + ": write failed");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                dir.string() + ": cannot create directory: " + ec.message());
  }
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

std::string report_json(const ExperimentReport& report, bool include_timings) {
  json trials = json::array();
  for (const auto& t : report.trials) {
    trials.push_back(trial_json(t, include_timings));
  }
  const auto& a = report.aggregates;
  json out = {
      {"format_version", 1},
      {"config", config_json(report.config)},
      {"data", {{"n", report.n}, {"d", report.d}}},
      {"num_models",
       report.num_models ? json(*report.num_models) : json(nullptr)},
      {"trials", trials},
      {"aggregates",
       {{"median_r2", optional_number(a.median_r2)},
        {"q1_r2", optional_number(a.q1_r2)},
        {"q3_r2", optional_number(a.q3_r2)},
        {"pass_rate", a.pass_rate},
        {"released", a.released},
        {"bottom", a.bottom},
        {"errors", a.errors}}}};
  if (include_timings) {
    out["timings"] = {{"total_seconds", report.total_seconds}};
  }
  return out.dump(2) + "\n";
}

std::string report_trials_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trial,seed,status,r2,ptr_k,ptr_t,ptr_noise,ptr_threshold,"
         "sampled_depth,ols_seconds,post_ols_seconds,wall_seconds,error";
  for (std::size_t j = 0; j < report.d; ++j) out << ",beta_" << j;
  out << '\n';
  for (const auto& t : report.trials) {
    out << t.index << ',' << t.seed << ',' << trial_status_name(t.status)
        << ',' << optional_csv(t.r2) << ',';
    if (t.ptr) {
      out << t.ptr->k << ',' << t.ptr->t << ',' << format_double(t.ptr->noise)
          << ',' << format_double(t.ptr->threshold);
    } else {
      out << ",,,";
    }
    out << ',' << t.sampled_depth << ','
        << format_double(t.timings.ols_seconds) << ','
        << format_double(t.timings.post_ols_seconds) << ','
        << format_double(t.wall_seconds) << ',' << csv_quote(t.error);
    for (std::size_t j = 0; j < report.d; ++j) {
      out << ',';
      if (j < t.coefficients.size()) out << format_double(t.coefficients[j]);
    }
    out << '\n';
  }
  return out.str();
}

std::string report_summary_csv(const ExperimentReport& report) {
  const auto& a = report.aggregates;
  std::ostringstream out;
  out << "metric,value\n"
      << "trials," << report.trials.size() << '\n'
      << "released," << a.released << '\n'
      << "bottom," << a.bottom << '\n'
      << "errors," << a.errors << '\n'
      << "pass_rate," << format_double(a.pass_rate) << '\n'
      << "median_r2," << optional_csv(a.median_r2) << '\n'
      << "q1_r2," << optional_csv(a.q1_r2) << '\n'
      << "q3_r2," << optional_csv(a.q3_r2) << '\n';
  return out.str();
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
  std::ostringstream out;
  out << "coefficient,bin,lower,upper,count,gaussian_mean,gaussian_sd,"
         "gaussian_expected\n";
  for (const auto& b : bins) {
    out << b.coefficient << ',' << b.bin << ',' << format_double(b.lower) << ','
        << format_double(b.upper) << ',' << b.count << ','
        << format_double(b.gaussian_mean) << ','
        << format_double(b.gaussian_sd) << ','
        << format_double(b.gaussian_expected) << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_report(
    const ExperimentReport& report, ReportFormat format, bool histograms,
    const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::filesystem::path> written;
  if (format == ReportFormat::kJson) {
    written.push_back(out_dir / "report.json");
    write_file(written.back(), report_json(report));
  } else {
    written.push_back(out_dir / "report.csv");
    write_file(written.back(), report_trials_csv(report));
    written.push_back(out_dir / "summary.csv");
    write_file(written.back(), report_summary_csv(report));
  }
  if (histograms && !report.histogram.empty()) {
    written.push_back(out_dir / "histograms.csv");
    write_file(written.back(), histogram_csv(report.histogram));
  }
  return written;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"d", r.d},
                   {"m", r.m},
                   {"n", r.n},
                   {"k", r.k},
                   {"threshold", r.threshold},
                   {"passes", r.passes}});
  }
  return out.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "d,m,n,k,threshold,passes\n";
  for (const auto& r : rows) {
    out << r.d << ',' << r.m << ',' << r.n << ',' << r.k << ','
        << format_double(r.threshold) << ',' << (r.passes ? 1 : 0) << '\n';
  }
  return out.str();
}

std::filesystem::path emit_sweep(const std::vector<SweepRow>& rows,
                                 ReportFormat format,
                                 const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  const auto path =
      out_dir / (format == ReportFormat::kJson ? "sweep.json" : "sweep.csv");
  write_file(path, format == ReportFormat::kJson ? sweep_json(rows)
                                                 : sweep_csv(rows));
  return path;
}

}  // namespace tukeyem
