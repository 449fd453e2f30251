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

#include "tukeyem/sampler.h"

#include <cmath>
#include <limits>
#include <string>

#include "tukeyem/errors.h"

namespace tukeyem {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log_length(double hi, double lo) {
  return hi > lo ? std::log(hi - lo) : kNegInf;
}

// Reads S through a counter so callers can confirm the O(d) access pattern.
class CountingReader {
 public:
  CountingReader(const SortedProjections& s, std::size_t* reads)
      : s_(s), reads_(reads) {}

  double operator()(std::size_t j, std::size_t rank) const {
    if (reads_ != nullptr) ++*reads_;
    return s_.order_stat(j, rank);
  }

 private:
  const SortedProjections& s_;
  std::size_t* reads_;
};

RegionPartition build_partition(const SortedProjections& s, std::size_t depth,
                                const CountingReader& read) {
  const std::size_t m = s.num_models();
  const std::size_t d = s.dim();
  if (depth < 1 || depth > s.max_depth()) {
    throw Error(ErrorCode::kParameter,
                "depth " + std::to_string(depth) + " outside [1, " +
                    std::to_string(s.max_depth()) + "]");
  }
  const std::size_t i = depth;
  // Ranks i+1 and m-i bound the depth > i interval; it is empty when
  // i+1 > m-i (only possible at i = m/2 for even m).
  const bool has_inner = i + 1 <= m - i;

  RegionPartition p;
  p.depth = depth;
  p.log_side.resize(d);
  p.log_inner_side.resize(d);
  p.log_shell.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double outer_lo = read(j, i);
    const double outer_hi = read(j, m - (i - 1));
    p.log_side[j] = safe_log_length(outer_hi, outer_lo);
    if (has_inner) {
      const double inner_lo = read(j, i + 1);
      const double inner_hi = read(j, m - i);
      p.log_inner_side[j] = safe_log_length(inner_hi, inner_lo);
      // Sum the two gaps directly instead of subtracting nearly equal sides.
      const double shell = (inner_lo - outer_lo) + (outer_hi - inner_hi);
      p.log_shell[j] = shell > 0.0 ? std::log(shell) : kNegInf;
    } else {
      p.log_inner_side[j] = kNegInf;
      p.log_shell[j] = p.log_side[j];
    }
  }

  p.log_prefix_inner.assign(d, 0.0);
  p.log_suffix.assign(d, 0.0);
  for (std::size_t j = 1; j < d; ++j) {
    p.log_prefix_inner[j] = p.log_prefix_inner[j - 1] + p.log_inner_side[j - 1];
  }
  for (std::size_t j = d - 1; j-- > 0;) {
    p.log_suffix[j] = p.log_suffix[j + 1] + p.log_side[j + 1];
  }
  p.log_cell.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    p.log_cell[j] = p.log_prefix_inner[j] + p.log_shell[j] + p.log_suffix[j];
  }
  return p;
}

}  // namespace

double RegionPartition::log_total() const { return log_sum_exp(log_cell); }

DepthDistribution depth_weights(const LogVolumes& vols, std::size_t t,
                                double epsilon) {
  if (t < 1 || t > vols.size()) {
    throw Error(ErrorCode::kParameter,
                "minimum depth t = " + std::to_string(t) + " outside [1, " +
                    std::to_string(vols.size()) + "]");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kParameter, "epsilon must be finite and >= 0");
  }
  DepthDistribution dist;
  dist.t = t;
  bool any_finite = false;
  for (std::size_t i = t; i <= vols.size(); ++i) {
    const double log_w = log_diff_exp(vols.at(i), vols.at(i + 1));
    const double weight = log_w + epsilon * static_cast<double>(i);
    any_finite = any_finite || weight > kNegInf;
    dist.log_weights.push_back(weight);
  }
  if (!any_finite) {
    throw Error(ErrorCode::kDegenerateRegion,
                "every depth region at or above t has zero volume");
  }
  return dist;
}

std::size_t sample_depth(const DepthDistribution& dist, Rng& rng) {
  return dist.t + sample_log_categorical(dist.log_weights, rng);
}

RegionPartition region_partition(const SortedProjections& s,
                                 std::size_t depth) {
  return build_partition(s, depth, CountingReader(s, nullptr));
}

Eigen::VectorXd sample_point_with_depth(const SortedProjections& s,
                                        std::size_t depth, Rng& rng,
                                        std::size_t* reads) {
  const CountingReader read(s, reads);
  const RegionPartition p = build_partition(s, depth, read);
  if (p.log_total() == kNegInf) {
    throw Error(ErrorCode::kDegenerateRegion,
                "region of depth " + std::to_string(depth) + " has zero volume");
  }
  const std::size_t m = s.num_models();
  const std::size_t d = s.dim();
  const std::size_t i = depth;
  const std::size_t cell = sample_log_categorical(p.log_cell, rng);

  Eigen::VectorXd y(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < cell; ++j) {
    y(j) = rng.uniform(read(j, i + 1), read(j, m - i));
  }

  const double outer_lo = read(cell, i);
  const double outer_hi = read(cell, m - (i - 1));
  if (i + 1 <= m - i) {
    const double inner_lo = read(cell, i + 1);
    const double inner_hi = read(cell, m - i);
    const double left = inner_lo - outer_lo;
    const double right = outer_hi - inner_hi;
    if (rng.uniform01() * (left + right) < left) {
      y(cell) = rng.uniform(outer_lo, inner_lo);  // [S_i, S_{i+1})
    } else {
      // (S_{m-i}, S_{m-i+1}]
      const double x = outer_hi - right * rng.uniform01();
      y(cell) = x > inner_hi ? x : std::nextafter(inner_hi, outer_hi);
    }
  } else {
    y(cell) = rng.uniform(outer_lo, outer_hi);
  }

  for (std::size_t j = cell + 1; j < d; ++j) {
    y(j) = rng.uniform(read(j, i), read(j, m - (i - 1)));
  }
  return y;
}

}  // namespace tukeyem
