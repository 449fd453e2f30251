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

#include "tukeyem/regression.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "tukeyem/errors.h"

namespace tukeyem {

Dataset::Dataset(Matrix features, Vector labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() < 1 || features_.cols() < 1) {
    throw Error(ErrorCode::kParameter, "dataset needs n >= 1 and d >= 1");
  }
  if (features_.rows() != labels_.size()) {
    throw Error(ErrorCode::kParameter,
                "feature rows (" + std::to_string(features_.rows()) +
                    ") and label count (" + std::to_string(labels_.size()) +
                    ") differ");
  }
  if (!features_.allFinite() || !labels_.allFinite()) {
    throw Error(ErrorCode::kParameter, "dataset contains non-finite values");
  }
}

Dataset Dataset::with_intercept() const {
  Matrix augmented(features_.rows(), features_.cols() + 1);
  augmented.leftCols(features_.cols()) = features_;
  augmented.col(features_.cols()).setOnes();
  return Dataset(std::move(augmented), labels_);
}

Dataset Dataset::subset(const std::vector<std::size_t>& row_indices) const {
  const auto k = static_cast<Eigen::Index>(row_indices.size());
  Matrix x(k, features_.cols());
  Vector y(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto src = static_cast<Eigen::Index>(row_indices[r]);
    x.row(r) = features_.row(src);
    y(r) = labels_(src);
  }
  return Dataset(std::move(x), std::move(y));
}

ModelSet::ModelSet(Matrix models) : models_(std::move(models)) {
  if (models_.cols() < 1) {
    throw Error(ErrorCode::kParameter, "models must have dimension >= 1");
  }
  if (!models_.allFinite()) {
    throw Error(ErrorCode::kParameter, "model set contains non-finite values");
  }
}

Vector fit_ols(const Dataset& data) {
  // Complete orthogonal decomposition yields the minimal-norm solution when
  // X has deficient column rank.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(data.features());
  return cod.solve(data.labels());
}

std::vector<std::vector<std::size_t>> random_partition(std::size_t n,
                                                       std::size_t m,
                                                       Rng& rng) {
  if (m < 1 || m > n) {
    throw Error(ErrorCode::kParameter, "partition count must be in [1, n]");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t base = n / m;
  const std::size_t extra = n % m;
  std::vector<std::vector<std::size_t>> groups(m);
  std::size_t cursor = 0;
  for (std::size_t g = 0; g < m; ++g) {
    const std::size_t size = base + (g < extra ? 1 : 0);
    groups[g].assign(order.begin() + cursor, order.begin() + cursor + size);
    cursor += size;
  }
  return groups;
}

ModelSet partition_fit(const Dataset& data, std::size_t m, Rng& rng) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (m < 1) throw Error(ErrorCode::kParameter, "m must be positive");
  if (n / m < d) {
    throw Error(ErrorCode::kInsufficientData,
                "floor(n/m) = " + std::to_string(n / m) +
                    " rows per model is below d = " + std::to_string(d));
  }
  const auto groups = random_partition(n, m, rng);
  Matrix models(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
  for (std::size_t g = 0; g < m; ++g) {
    models.row(static_cast<Eigen::Index>(g)) =
        fit_ols(data.subset(groups[g])).transpose();
  }
  return ModelSet(std::move(models));
}

double r_squared(const Vector& beta, const Dataset& data) {
  if (static_cast<std::size_t>(beta.size()) != data.cols()) {
    throw Error(ErrorCode::kParameter, "coefficient length does not match d");
  }
  const Vector& y = data.labels();
  const double sse = (data.features() * beta - y).squaredNorm();
  const double sst = (y.array() - y.mean()).matrix().squaredNorm();
  if (sst == 0.0) {
    throw Error(ErrorCode::kUndefinedScore,
                "R^2 is undefined for constant labels");
  }
  return 1.0 - sse / sst;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec, Rng& rng) {
  if (spec.d_features < 1 || spec.n < spec.d_features + 1) {
    throw Error(ErrorCode::kParameter, "synthetic spec needs n >= d + 1");
  }
  if (!(spec.noise_sigma >= 0.0) || !(spec.coefficient_scale > 0.0)) {
    throw Error(ErrorCode::kParameter,
                "synthetic spec needs sigma >= 0 and coefficient scale > 0");
  }
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto d = static_cast<Eigen::Index>(spec.d_features);
  Vector beta(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    beta(j) = gaussian(spec.coefficient_scale, rng);
  }
  Matrix x(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index j = 0; j < d; ++j) x(r, j) = gaussian(1.0, rng);
  }
  Vector y = x * beta;
  if (spec.noise_sigma > 0.0) {
    for (Eigen::Index r = 0; r < n; ++r) y(r) += gaussian(spec.noise_sigma, rng);
  }
  return SyntheticData{Dataset(std::move(x), std::move(y)), std::move(beta)};
}

}  // namespace tukeyem
