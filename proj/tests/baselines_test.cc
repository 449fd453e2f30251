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
#include <vector>

#include <gtest/gtest.h>

#include "tukeyem/errors.h"
#include "tukeyem/harness.h"
#include "tukeyem/noise.h"

namespace tukeyem {
namespace {

const PrivacyBudget kBudget{std::log(3.0), 1e-5};

Dataset synthetic(std::size_t n, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticSpec spec;
  spec.n = n;
  spec.noise_sigma = sigma;
  return generate_synthetic(spec, rng).data.with_intercept();
}

TEST(NonDpTest, IsFullDataOls) {
  const Dataset data = synthetic(500, 1.0, 1);
  EXPECT_EQ(non_dp_baseline(data), fit_ols(data));
}

TEST(ExactBoundsTest, TightOnData) {
  Matrix x(2, 2);
  x << 3, 4, 1, 0;
  Vector y(2);
  y << -7, 2;
  const DataBounds b = exact_bounds(Dataset(x, y));
  EXPECT_DOUBLE_EQ(b.feature_norm_bound, 5.0);
  EXPECT_DOUBLE_EQ(b.label_bound, 7.0);
}

TEST(SspTest, ZeroNoiseNoRidgeIsOls) {
  const Dataset data = synthetic(2000, 10.0, 2);
  Rng rng(3);
  SspOptions opt;
  opt.zero_noise = true;
  opt.ridge_override = 0.0;
  const Vector ssp = ssp_regression(data, kBudget, exact_bounds(data), rng, opt);
  const Vector ols = fit_ols(data);
  EXPECT_LT((ssp - ols).norm(), 1e-9 * ols.norm());
}

TEST(SspTest, HugeEpsilonApproachesOls) {
  const Dataset data = synthetic(5000, 10.0, 4);
  Rng rng(5);
  const Vector ssp = ssp_regression(data, {1e6, 1e-5}, exact_bounds(data), rng);
  const Vector ols = non_dp_baseline(data);
  EXPECT_LT((ssp - ols).norm(), 1e-3 * ols.norm());
}

TEST(SspTest, NoisyGramIsSymmetric) {
  const Dataset data = synthetic(300, 1.0, 6);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const SspStatistics stats = ssp_statistics(data, kBudget, exact_bounds(data), rng);
    EXPECT_EQ(stats.gram, stats.gram.transpose());
    EXPECT_GE(stats.ridge, 0.0);
  }
}

TEST(SspTest, NoiseScaleMatchesCalibration) {
  // Off-diagonal Gram noise has sd s B_x^2 and X^T y noise sd s B_x B_y.
  const Dataset data = synthetic(200, 1.0, 7);
  const DataBounds bounds = exact_bounds(data);
  SspOptions quiet;
  quiet.zero_noise = true;
  Rng rng0(0);
  const SspStatistics clean = ssp_statistics(data, kBudget, bounds, rng0, quiet);
  const double s = std::sqrt(std::log(6 / kBudget.delta)) / (kBudget.epsilon / 3);
  const double bx2 = bounds.feature_norm_bound * bounds.feature_norm_bound;
  const double bxy = bounds.feature_norm_bound * bounds.label_bound;
  double sum_g = 0, sum_v = 0;
  int count_g = 0, count_v = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const SspStatistics noisy = ssp_statistics(data, kBudget, bounds, rng);
    const Matrix e = (noisy.gram - clean.gram) / (s * bx2);
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      for (Eigen::Index c = r; c < e.cols(); ++c, ++count_g) sum_g += e(r, c) * e(r, c);
    }
    const Vector z = (noisy.xty - clean.xty) / (s * bxy);
    sum_v += z.squaredNorm();
    count_v += static_cast<int>(z.size());
  }
  EXPECT_NEAR(sum_g / count_g, 1.0, 0.05);
  EXPECT_NEAR(sum_v / count_v, 1.0, 0.1);
}

TEST(SspTest, RejectsRowsOutsideBounds) {
  const Dataset data = synthetic(100, 1.0, 8);
  DataBounds b = exact_bounds(data);
  b.feature_norm_bound *= 0.5;
  Rng rng(9);
  try {
    ssp_regression(data, kBudget, b, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(SspTest, FiniteOutputs) {
  Rng rng(10);
  for (int rep = 0; rep < 20; ++rep) {
    const Dataset data = synthetic(30 + 10 * rep, 10.0, 100 + rep);
    const Vector out = ssp_regression(data, {0.1, 1e-6}, exact_bounds(data), rng);
    EXPECT_TRUE(out.allFinite());
  }
}

TEST(SspTest, SyntheticAccuracy) {
  const Dataset data = synthetic(22000, 10.0, 11);
  std::vector<double> r2;
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(derive_seed(12, t));
    r2.push_back(r_squared(ssp_regression(data, kBudget, exact_bounds(data), rng), data));
  }
  EXPECT_GE(quantile(r2, 0.5), 0.98);
}

TEST(SspTest, MoreBudgetHelps) {
  const Dataset data = synthetic(3000, 10.0, 13);
  double previous = -1e300;
  for (double eps : {0.05, 0.5, 5.0}) {
    std::vector<double> r2;
    for (std::uint64_t t = 0; t < 15; ++t) {
      Rng rng(derive_seed(14, t));
      r2.push_back(r_squared(ssp_regression(data, {eps, 1e-5}, exact_bounds(data), rng), data));
    }
    const double median = quantile(r2, 0.5);
    EXPECT_GT(median, previous) << "epsilon " << eps;
    previous = median;
  }
}

}  // namespace
}  // namespace tukeyem
