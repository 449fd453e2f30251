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

#ifndef TUKEYEM_BASELINES_H_
#define TUKEYEM_BASELINES_H_

#include <optional>

#include "tukeyem/mechanism.h"
#include "tukeyem/regression.h"

namespace tukeyem {

// Per-row bounds: ||x_i||_2 <= feature_norm_bound and |y_i| <= label_bound.
struct DataBounds {
  double feature_norm_bound = 0.0;
  double label_bound = 0.0;
};

// The tightest bounds for `data` (non-private).
DataBounds exact_bounds(const Dataset& data);

// Non-private OLS on the full dataset.
Vector non_dp_baseline(const Dataset& data);

// Knobs for tests. Production callers use the defaults.
struct SspOptions {
  bool zero_noise = false;
  std::optional<double> ridge_override;
  double failure_probability = 0.05;
};

// Noisy sufficient statistics and ridge term of AdaSSP. The budget is split
// in thirds across the minimum eigenvalue of X^T X, X^T X itself and X^T y,
// each released with the Gaussian mechanism at noise multiplier
// s = sqrt(log(6/delta)) / (epsilon/3):
//
//   lambda_min~ = max(0, lambda_min(X^T X) + s B_x^2 Z - log(6/delta) B_x^2
//                        / (epsilon/3))
//   lambda      = max(0, sqrt(d log(6/delta) log(2 d^2 / rho)) B_x^2
//                        / (epsilon/3) - lambda_min~)
//   gram        = X^T X + s B_x^2 E
//   xty         = X^T y + s B_x B_y z
//
// where E is a symmetric matrix with standard normal upper triangle and z is
// a standard normal vector. `gram` is exactly symmetric. Rows violating
// `bounds` are rejected with kPrecondition rather than clipped.
struct SspStatistics {
  Matrix gram;
  Vector xty;
  double ridge = 0.0;
};

SspStatistics ssp_statistics(const Dataset& data, const PrivacyBudget& budget,
                             const DataBounds& bounds, Rng& rng,
                             const SspOptions& options = {});

// (gram + lambda I)^{-1} xty from ssp_statistics.
Vector ssp_regression(const Dataset& data, const PrivacyBudget& budget,
                      const DataBounds& bounds, Rng& rng,
                      const SspOptions& options = {});

}  // namespace tukeyem

#endif  // TUKEYEM_BASELINES_H_
