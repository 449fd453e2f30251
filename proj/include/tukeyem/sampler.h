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

#ifndef TUKEYEM_SAMPLER_H_
#define TUKEYEM_SAMPLER_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tukeyem/depth.h"
#include "tukeyem/noise.h"

namespace tukeyem {

// Exponential-mechanism distribution over depths t..M. log_weights[k] is
// log W_{t+k} + epsilon * (t+k), with W_i = V_i - V_{i+1} and V_{M+1} = 0.
// The utility is monotone, so the exponent carries no factor 1/2.
struct DepthDistribution {
  std::size_t t = 0;
  std::vector<double> log_weights;

  std::size_t max_depth() const { return t + log_weights.size() - 1; }
};

// Per-dimension log lengths used to split the depth-exactly-i region into
// the cells C_{j,i}: points whose first dimension of depth exactly i is j.
struct RegionPartition {
  std::size_t depth = 0;
  std::vector<double> log_side;         // log V_{j,i}
  std::vector<double> log_inner_side;   // log V_{j,i+1}
  std::vector<double> log_shell;        // log W_{j,i}
  std::vector<double> log_prefix_inner; // log V_{<j,i+1}
  std::vector<double> log_suffix;       // log V_{>j,i}
  std::vector<double> log_cell;         // log vol(C_{j,i})

  // log of the sum of cell volumes, i.e. log W_i.
  double log_total() const;
};

// Throws kParameter unless 1 <= t <= M, kDegenerateRegion when every W_i is 0.
DepthDistribution depth_weights(const LogVolumes& vols, std::size_t t,
                                double epsilon);

std::size_t sample_depth(const DepthDistribution& dist, Rng& rng);

// O(d) evaluation of the cell volumes for depth i in 1..M.
RegionPartition region_partition(const SortedProjections& s, std::size_t depth);

// Uniform point from the region of approximate Tukey depth exactly `depth`.
// If `reads` is non-null it is incremented once per element of S accessed.
// Throws kDegenerateRegion when that region has zero volume.
Eigen::VectorXd sample_point_with_depth(const SortedProjections& s,
                                        std::size_t depth, Rng& rng,
                                        std::size_t* reads = nullptr);

}  // namespace tukeyem

#endif  // TUKEYEM_SAMPLER_H_
