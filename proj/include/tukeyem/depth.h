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

#ifndef TUKEYEM_DEPTH_H_
#define TUKEYEM_DEPTH_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tukeyem/noise.h"
#include "tukeyem/regression.h"

namespace tukeyem {

// d x m matrix whose row j holds the j-th coordinates of all models in
// nondecreasing order. Order statistics are addressed with 1-based ranks so
// that order_stat(j, i) is the i-th smallest value in dimension j.
class SortedProjections {
 public:
  using RowMajor =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  // Takes a matrix whose rows are already sorted; validated.
  explicit SortedProjections(RowMajor sorted);

  std::size_t dim() const { return static_cast<std::size_t>(s_.rows()); }
  std::size_t num_models() const { return static_cast<std::size_t>(s_.cols()); }

  // Number of depth levels with potentially positive volume, floor(m/2).
  std::size_t max_depth() const { return num_models() / 2; }

  double order_stat(std::size_t j, std::size_t rank) const {
    return s_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(rank - 1));
  }

  const RowMajor& matrix() const { return s_; }

 private:
  RowMajor s_;
};

// log V_i for i = 1..M, where V_i is the volume of the region with
// approximate Tukey depth at least i. Lookups outside 1..M follow the
// conventions V_0 = +inf and V_i = 0 for i > M.
class LogVolumes {
 public:
  explicit LogVolumes(std::vector<double> log_v);

  std::size_t size() const { return log_v_.size(); }
  double at(std::size_t depth) const;
  const std::vector<double>& values() const { return log_v_; }

 private:
  std::vector<double> log_v_;
};

SortedProjections sorted_projections(const ModelSet& models);

// Adds independent Uniform(0, eta_j) noise to every coordinate, with
// eta_j = 1e-6 * max(spread_j, 1e-6) and spread_j the max - min of dimension j.
ModelSet perturb_models(const ModelSet& models, Rng& rng);

// Minimum over dimensions of min(#{S_j <= p_j}, #{S_j >= p_j}); closed
// halfspaces, so boundary points count on both sides. O(d log m).
int approx_tukey_depth(const Eigen::VectorXd& point, const SortedProjections& s);

// Side lengths S_{j,m-(i-1)} - S_{j,i} multiplied across dimensions, in log
// space. A zero side length gives -infinity.
LogVolumes compute_log_volumes(const SortedProjections& s);

// Exact (all-direction) Tukey depth of a planar point. Evaluates the
// halfspace count at one direction inside every arc between consecutive
// critical directions, which is exact for arbitrary point sets.
// Throws kUnsupportedDimension unless d == 2.
int exact_tukey_depth_2d(const Eigen::VectorXd& point, const ModelSet& models);

}  // namespace tukeyem

#endif  // TUKEYEM_DEPTH_H_
