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

#ifndef TUKEYEM_REGRESSION_H_
#define TUKEYEM_REGRESSION_H_

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tukeyem/noise.h"

namespace tukeyem {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Feature matrix (n x d) and labels (n). Construction validates shape and
// finiteness; a Dataset that exists is always well formed.
class Dataset {
 public:
  Dataset(Matrix features, Vector labels);

  const Matrix& features() const { return features_; }
  const Vector& labels() const { return labels_; }
  std::size_t rows() const { return static_cast<std::size_t>(features_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(features_.cols()); }

  // Copy with a constant-1 column appended.
  Dataset with_intercept() const;

  // Rows selected by index, in the given order.
  Dataset subset(const std::vector<std::size_t>& row_indices) const;

 private:
  Matrix features_;
  Vector labels_;
};

// m coefficient vectors of common length d, stored one model per row.
class ModelSet {
 public:
  explicit ModelSet(Matrix models);

  const Matrix& models() const { return models_; }
  Matrix& mutable_models() { return models_; }
  std::size_t size() const { return static_cast<std::size_t>(models_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(models_.cols()); }
  Vector model(std::size_t i) const { return models_.row(i).transpose(); }

 private:
  Matrix models_;
};

struct SyntheticSpec {
  std::size_t n = 22000;
  std::size_t d_features = 10;
  double noise_sigma = 10.0;
  double coefficient_scale = 100.0;
};

struct SyntheticData {
  Dataset data;
  Vector true_coefficients;
};

// Least-squares fit. Rank-deficient systems give the minimal-norm solution.
Vector fit_ols(const Dataset& data);

// Row groups produced by a random even partition: a random permutation cut
// into m contiguous groups, the first (n mod m) of which get one extra row.
std::vector<std::vector<std::size_t>> random_partition(std::size_t n,
                                                       std::size_t m, Rng& rng);

// One OLS model per partition group, in group order.
// Throws kInsufficientData when floor(n/m) < d.
ModelSet partition_fit(const Dataset& data, std::size_t m, Rng& rng);

// 1 - SSE/SST on `data`. Throws kUndefinedScore for constant labels.
double r_squared(const Vector& beta, const Dataset& data);

// Gaussian design, Gaussian coefficients, Gaussian label noise. No intercept
// column is added.
SyntheticData generate_synthetic(const SyntheticSpec& spec, Rng& rng);

}  // namespace tukeyem

#endif  // TUKEYEM_REGRESSION_H_
