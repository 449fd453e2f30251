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

#include "tukeyem/baselines.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tukeyem/errors.h"

namespace tukeyem {

namespace {

// One summation order for both the bound and the check against it.
double row_norm(const Matrix& x, Eigen::Index r) { return x.row(r).norm(); }

}  // namespace

DataBounds exact_bounds(const Dataset& data) {
  DataBounds b;
  for (Eigen::Index r = 0; r < data.features().rows(); ++r) {
    b.feature_norm_bound =
        std::max(b.feature_norm_bound, row_norm(data.features(), r));
  }
  b.label_bound = data.labels().cwiseAbs().maxCoeff();
  return b;
}

Vector non_dp_baseline(const Dataset& data) { return fit_ols(data); }

SspStatistics ssp_statistics(const Dataset& data, const PrivacyBudget& budget,
                             const DataBounds& bounds, Rng& rng,
                             const SspOptions& options) {
  validate_budget(budget);
  if (!(bounds.feature_norm_bound > 0.0) || !(bounds.label_bound > 0.0)) {
    throw Error(ErrorCode::kParameter, "data bounds must be positive");
  }
  const Matrix& x = data.features();
  const Vector& y = data.labels();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    if (row_norm(x, r) > bounds.feature_norm_bound) {
      throw Error(ErrorCode::kPrecondition,
                  "row " + std::to_string(r) + " exceeds the feature norm bound");
    }
    if (std::abs(y(r)) > bounds.label_bound) {
      throw Error(ErrorCode::kPrecondition,
                  "row " + std::to_string(r) + " exceeds the label bound");
    }
  }

  const auto d = x.cols();
  const double bx2 = bounds.feature_norm_bound * bounds.feature_norm_bound;
  const double bxy = bounds.feature_norm_bound * bounds.label_bound;
  const double eps_third = budget.epsilon / 3.0;
  const double log_term = std::log(6.0 / budget.delta);
  const double multiplier = std::sqrt(log_term) / eps_third;
  const double rho = options.failure_probability;
  const auto draw = [&]() {
    return options.zero_noise ? 0.0 : gaussian(1.0, rng);
  };

  // Upper triangle only, then mirrored, so the result is exactly symmetric.
  Matrix gram = Matrix::Zero(d, d);
  gram.selfadjointView<Eigen::Upper>().rankUpdate(x.transpose());
  gram.triangularView<Eigen::StrictlyLower>() = gram.transpose();
  Vector xty = x.transpose() * y;

  double ridge = 0.0;
  if (options.ridge_override) {
    ridge = *options.ridge_override;
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    const double noisy_min =
        std::max(0.0, lambda_min + multiplier * bx2 * draw() -
                          log_term / eps_third * bx2);
    const double dd = static_cast<double>(d);
    const double target =
        std::sqrt(dd * log_term * std::log(2.0 * dd * dd / rho)) * bx2 /
        eps_third;
    ridge = std::max(0.0, target - noisy_min);
  }

  // Symmetric noise: draw the upper triangle, mirror it.
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = r; c < d; ++c) {
      const double e = multiplier * bx2 * draw();
      gram(r, c) += e;
      if (c != r) gram(c, r) += e;
    }
  }
  for (Eigen::Index r = 0; r < d; ++r) xty(r) += multiplier * bxy * draw();
  return SspStatistics{std::move(gram), std::move(xty), ridge};
}

Vector ssp_regression(const Dataset& data, const PrivacyBudget& budget,
                      const DataBounds& bounds, Rng& rng,
                      const SspOptions& options) {
  SspStatistics stats = ssp_statistics(data, budget, bounds, rng, options);
  stats.gram.diagonal().array() += stats.ridge;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(stats.gram);
  return cod.solve(stats.xty);
}

}  // namespace tukeyem
