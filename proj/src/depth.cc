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

#include "tukeyem/depth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tukeyem/errors.h"

namespace tukeyem {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPerturbScale = 1e-6;
constexpr double kSpreadFloor = 1e-6;
}  // namespace

SortedProjections::SortedProjections(RowMajor sorted) : s_(std::move(sorted)) {
  if (s_.rows() < 1 || s_.cols() < 1) {
    throw Error(ErrorCode::kParameter, "sorted projections need d, m >= 1");
  }
  if (!s_.allFinite()) {
    throw Error(ErrorCode::kParameter, "sorted projections must be finite");
  }
  for (Eigen::Index j = 0; j < s_.rows(); ++j) {
    for (Eigen::Index i = 1; i < s_.cols(); ++i) {
      if (s_(j, i) < s_(j, i - 1)) {
        throw Error(ErrorCode::kParameter,
                    "row " + std::to_string(j) + " is not sorted");
      }
    }
  }
}

LogVolumes::LogVolumes(std::vector<double> log_v) : log_v_(std::move(log_v)) {
  for (std::size_t i = 1; i < log_v_.size(); ++i) {
    if (log_v_[i] > log_v_[i - 1]) {
      throw Error(ErrorCode::kParameter, "log volumes must be nonincreasing");
    }
  }
}

double LogVolumes::at(std::size_t depth) const {
  if (depth == 0) return kInf;
  if (depth > log_v_.size()) return -kInf;
  return log_v_[depth - 1];
}

SortedProjections sorted_projections(const ModelSet& models) {
  const Matrix& b = models.models();
  SortedProjections::RowMajor s = b.transpose();
  for (Eigen::Index j = 0; j < s.rows(); ++j) {
    auto row = s.row(j);
    std::sort(row.begin(), row.end());
  }
  return SortedProjections(std::move(s));
}

ModelSet perturb_models(const ModelSet& models, Rng& rng) {
  Matrix out = models.models();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double spread = out.col(j).maxCoeff() - out.col(j).minCoeff();
    const double eta = kPerturbScale * std::max(spread, kSpreadFloor);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, j) += eta * rng.uniform_open01();
    }
  }
  return ModelSet(std::move(out));
}

int approx_tukey_depth(const Eigen::VectorXd& point,
                       const SortedProjections& s) {
  if (static_cast<std::size_t>(point.size()) != s.dim()) {
    throw Error(ErrorCode::kParameter, "point dimension does not match");
  }
  if (!point.allFinite()) {
    throw Error(ErrorCode::kParameter, "point must be finite");
  }
  const auto m = static_cast<long>(s.num_models());
  long depth = m;
  for (Eigen::Index j = 0; j < point.size(); ++j) {
    const auto row = s.matrix().row(j);
    const double p = point(j);
    const long at_most = std::upper_bound(row.begin(), row.end(), p) - row.begin();
    const long at_least = m - (std::lower_bound(row.begin(), row.end(), p) - row.begin());
    depth = std::min({depth, at_most, at_least});
  }
  return static_cast<int>(depth);
}

LogVolumes compute_log_volumes(const SortedProjections& s) {
  const std::size_t m = s.num_models();
  const std::size_t max_depth = s.max_depth();
  std::vector<double> log_v(max_depth, 0.0);
  for (std::size_t i = 1; i <= max_depth; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const double side = s.order_stat(j, m - (i - 1)) - s.order_stat(j, i);
      acc += std::log(side);  // log(0) = -inf
    }
    log_v[i - 1] = acc;
  }
  return LogVolumes(std::move(log_v));
}

int exact_tukey_depth_2d(const Eigen::VectorXd& point, const ModelSet& models) {
  if (point.size() != 2 || models.dim() != 2) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "exact Tukey depth is only implemented for d = 2");
  }
  const Matrix& b = models.models();
  const auto count_in = [&](double angle) {
    const double vx = std::cos(angle);
    const double vy = std::sin(angle);
    int count = 0;
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      const double dot = vx * (b(r, 0) - point(0)) + vy * (b(r, 1) - point(1));
      if (dot >= 0.0) ++count;
    }
    return count;
  };

  // The count changes only at normals orthogonal to some (model - point).
  std::vector<double> critical;
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    const double dx = b(r, 0) - point(0);
    const double dy = b(r, 1) - point(1);
    if (dx == 0.0 && dy == 0.0) continue;
    const double base = std::atan2(dy, dx);
    for (double offset : {std::numbers::pi / 2, -std::numbers::pi / 2}) {
      double a = std::remainder(base + offset, 2 * std::numbers::pi);
      if (a < 0) a += 2 * std::numbers::pi;
      critical.push_back(a);
    }
  }
  if (critical.empty()) return count_in(0.0);
  std::sort(critical.begin(), critical.end());

  int best = static_cast<int>(b.rows());
  for (std::size_t k = 0; k < critical.size(); ++k) {
    const double lo = critical[k];
    const double hi = k + 1 < critical.size()
                          ? critical[k + 1]
                          : critical.front() + 2 * std::numbers::pi;
    if (hi - lo <= 0.0) continue;
    best = std::min(best, count_in(0.5 * (lo + hi)));
  }
  return best;
}

}  // namespace tukeyem
