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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "tukeyem/errors.h"
#include "tukeyem/noise.h"

namespace tukeyem {
namespace {

Dataset make(std::initializer_list<std::initializer_list<double>> rows,
             std::initializer_list<double> labels) {
  Matrix x(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) x(r, c++) = v;
    ++r;
  }
  Vector y(static_cast<Eigen::Index>(labels.size()));
  Eigen::Index i = 0;
  for (double v : labels) y(i++) = v;
  return Dataset(std::move(x), std::move(y));
}

TEST(FitOlsTest, HandExamples) {
  const Vector identity = fit_ols(make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1, 2, 3}));
  EXPECT_NEAR((identity - Vector::LinSpaced(3, 1, 3)).norm(), 0.0, 1e-12);

  const Vector mean = fit_ols(make({{1}, {1}, {1}, {1}}, {1, 2, 3, 4}));
  EXPECT_NEAR(mean(0), 2.5, 1e-12);

  const Vector line = fit_ols(make({{1, 0}, {1, 1}, {1, 2}}, {0, 1, 2}));
  EXPECT_NEAR(line(0), 0.0, 1e-12);
  EXPECT_NEAR(line(1), 1.0, 1e-12);
}

TEST(FitOlsTest, ResidualIsOrthogonalToColumns) {
  Rng rng(21);
  SyntheticSpec spec;
  spec.n = 200;
  spec.d_features = 6;
  const Dataset data = generate_synthetic(spec, rng).data.with_intercept();
  const Vector beta = fit_ols(data);
  const Vector residual = data.labels() - data.features() * beta;
  const Vector gradient = data.features().transpose() * residual;
  EXPECT_LT(gradient.norm(), 1e-8 * data.labels().norm() * data.features().norm());

  // Perturbing the solution never lowers the squared error.
  const double sse = residual.squaredNorm();
  for (int rep = 0; rep < 20; ++rep) {
    Vector other = beta;
    other(rep % other.size()) += rng.uniform(-1.0, 1.0);
    EXPECT_GE((data.labels() - data.features() * other).squaredNorm(), sse);
  }
}

TEST(FitOlsTest, RankDeficientGivesMinimumNorm) {
  // Two identical columns: any split of the coefficient fits; minimum norm
  // splits it evenly.
  const Vector beta = fit_ols(make({{1, 1}, {2, 2}, {3, 3}}, {2, 4, 6}));
  EXPECT_NEAR(beta(0), 1.0, 1e-10);
  EXPECT_NEAR(beta(1), 1.0, 1e-10);
}

TEST(PartitionTest, DivisibleSizes) {
  Rng rng(1);
  const auto groups = random_partition(100, 10, rng);
  ASSERT_EQ(groups.size(), 10u);
  for (const auto& g : groups) EXPECT_EQ(g.size(), 10u);
}

TEST(PartitionTest, RemainderGoesToFirstGroups) {
  Rng rng(2);
  const auto groups = random_partition(103, 10, rng);
  int eleven = 0, ten = 0;
  for (const auto& g : groups) (g.size() == 11 ? eleven : ten) += 1;
  EXPECT_EQ(eleven, 3);
  EXPECT_EQ(ten, 7);
}

TEST(PartitionTest, GroupsCoverEveryRowOnce) {
  Rng rng(3);
  for (std::size_t n : {17u, 250u, 1001u}) {
    for (std::size_t m : {1u, 4u, 16u}) {
      const auto groups = random_partition(n, m, rng);
      std::set<std::size_t> seen;
      std::size_t lo = n, hi = 0, total = 0;
      for (const auto& g : groups) {
        seen.insert(g.begin(), g.end());
        lo = std::min(lo, g.size());
        hi = std::max(hi, g.size());
        total += g.size();
      }
      EXPECT_EQ(total, n);
      EXPECT_EQ(seen.size(), n);
      EXPECT_LE(hi - lo, 1u);
    }
  }
}

TEST(PartitionFitTest, ShapesAndNoiselessRecovery) {
  Rng rng(4);
  SyntheticSpec spec;
  spec.n = 100;
  spec.d_features = 2;
  spec.noise_sigma = 0.0;
  const SyntheticData syn = generate_synthetic(spec, rng);
  const ModelSet models = partition_fit(syn.data, 10, rng);
  ASSERT_EQ(models.size(), 10u);
  ASSERT_EQ(models.dim(), 2u);
  for (std::size_t i = 0; i < models.size(); ++i) {
    EXPECT_LT((models.model(i) - syn.true_coefficients).norm(), 1e-8);
  }
}

TEST(PartitionFitTest, TooFewRowsPerModel) {
  Rng rng(5);
  SyntheticSpec spec;
  spec.n = 50;
  spec.d_features = 6;
  const Dataset data = generate_synthetic(spec, rng).data;
  try {
    partition_fit(data, 10, rng);
    FAIL() << "expected an insufficient-data error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(RSquaredTest, Examples) {
  const Dataset data = make({{1, 0}, {1, 1}, {1, 2}}, {0, 1, 2});
  EXPECT_DOUBLE_EQ(r_squared(Eigen::Vector2d(0, 1), data), 1.0);
  EXPECT_NEAR(r_squared(Eigen::Vector2d(1, 0), data), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(r_squared(Eigen::Vector2d(0, 0), data), 1.0 - 5.0 / 2.0);
}

TEST(RSquaredTest, ConstantLabelsAreUndefined) {
  const Dataset data = make({{1}, {2}}, {3, 3});
  try {
    r_squared(Vector::Ones(1), data);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedScore);
  }
}

TEST(SyntheticTest, PaperSizedProblem) {
  Rng rng(6);
  const SyntheticData syn = generate_synthetic(SyntheticSpec{}, rng);
  EXPECT_EQ(syn.data.rows(), 22000u);
  EXPECT_EQ(syn.data.cols(), 10u);
  EXPECT_EQ(syn.data.labels().size(), 22000);
  const Dataset with_b = syn.data.with_intercept();
  EXPECT_EQ(with_b.cols(), 11u);
  EXPECT_TRUE((with_b.features().col(10).array() == 1.0).all());
  EXPECT_GE(r_squared(fit_ols(with_b), with_b), 0.99);
}

TEST(SyntheticTest, NoiselessRecoversCoefficients) {
  Rng rng(7);
  SyntheticSpec spec;
  spec.n = 500;
  spec.noise_sigma = 0.0;
  const SyntheticData syn = generate_synthetic(spec, rng);
  EXPECT_LT((fit_ols(syn.data) - syn.true_coefficients).norm(), 1e-8);
}

TEST(DatasetTest, RejectsBadInput) {
  EXPECT_THROW(Dataset(Matrix::Zero(3, 2), Vector::Zero(2)), Error);
  Matrix x = Matrix::Zero(2, 1);
  x(0, 0) = std::nan("");
  EXPECT_THROW(Dataset(x, Vector::Zero(2)), Error);
}

}  // namespace
}  // namespace tukeyem
