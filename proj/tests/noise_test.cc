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

#include "tukeyem/noise.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "tukeyem/errors.h"

namespace tukeyem {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename F>
std::pair<double, double> moments(int draws, F draw) {
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = draw();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / draws;
  return {mean, sum_sq / draws - mean * mean};
}

TEST(LaplaceTest, InverseCdfAtKnownQuantiles) {
  EXPECT_DOUBLE_EQ(laplace_from_uniform(1.0, 0.5), 0.0);
  EXPECT_NEAR(laplace_from_uniform(1.0, 0.75), std::log(2.0), 1e-12);
  EXPECT_NEAR(laplace_from_uniform(1.0, 0.25), -std::log(2.0), 1e-12);
  EXPECT_NEAR(laplace_from_uniform(3.0, 0.75), 3.0 * std::log(2.0), 1e-12);
}

TEST(LaplaceTest, MomentsAtScaleTwo) {
  Rng rng(11);
  const auto [mean, var] = moments(1'000'000, [&] { return laplace(2.0, rng); });
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 8.0, 0.05 * 8.0);
}

TEST(LaplaceTest, RejectsNonPositiveScale) {
  Rng rng(1);
  EXPECT_THROW(laplace(0.0, rng), Error);
  EXPECT_THROW(laplace(-1.0, rng), Error);
}

TEST(GaussianTest, Moments) {
  Rng rng(12);
  const auto [mean1, var1] = moments(1'000'000, [&] { return gaussian(1.0, rng); });
  EXPECT_NEAR(mean1, 0.0, 0.01);
  const auto [mean3, var3] = moments(1'000'000, [&] { return gaussian(3.0, rng); });
  EXPECT_NEAR(var3, 9.0, 0.05 * 9.0);
}

TEST(GaussianTest, TinySigmaCollapsesToZero) {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) EXPECT_LT(std::abs(gaussian(1e-300, rng)), 1e-290);
}

TEST(LogSumExpTest, Examples) {
  const std::vector<double> ones = {0.0, 0.0};
  EXPECT_NEAR(log_sum_exp(ones), std::log(2.0), 1e-15);
  const std::vector<double> with_zero = {0.0, -kInf};
  EXPECT_DOUBLE_EQ(log_sum_exp(with_zero), 0.0);
  const std::vector<double> huge = {1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(huge), 1000.0 + std::log(2.0), 1e-12);
  const std::vector<double> empty;
  EXPECT_EQ(log_sum_exp(empty), -kInf);
}

TEST(LogDiffExpTest, Examples) {
  EXPECT_NEAR(log_diff_exp(std::log(36.0), std::log(6.0)), std::log(30.0), 1e-14);
  EXPECT_EQ(log_diff_exp(1.5, 1.5), -kInf);
  EXPECT_DOUBLE_EQ(log_diff_exp(2.0, -kInf), 2.0);
}

TEST(CategoricalTest, SingleFiniteWeightAlwaysWins) {
  Rng rng(3);
  const std::vector<double> w = {0.0, -kInf, -kInf};
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_log_categorical(w, rng), 0u);
}

TEST(CategoricalTest, AllZeroWeightsIsAnError) {
  Rng rng(3);
  const std::vector<double> w = {-kInf, -kInf};
  EXPECT_THROW(sample_log_categorical(w, rng), Error);
}

TEST(CategoricalTest, TwoOutcomeFrequencies) {
  constexpr int kDraws = 100'000;
  Rng rng(4);
  for (const auto& [w1, p1] : {std::pair{0.0, 0.5}, std::pair{std::log(2.0), 2.0 / 3.0}}) {
    const std::vector<double> w = {0.0, w1};
    int hits = 0;
    for (int i = 0; i < kDraws; ++i) hits += sample_log_categorical(w, rng) == 1;
    const double sigma = std::sqrt(p1 * (1 - p1) / kDraws);
    EXPECT_NEAR(static_cast<double>(hits) / kDraws, p1, 3 * sigma);
  }
}

TEST(CategoricalTest, RandomWeightsPassChiSquare) {
  constexpr int kDraws = 100'000;
  Rng rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t len = 2 + rng.next_u64() % 63;
    std::vector<double> w(len);
    for (auto& x : w) x = rng.uniform(-4.0, 4.0) + 700.0;  // large offsets stay in log space
    const double total = log_sum_exp(w);
    std::vector<double> observed(len, 0.0), expected(len);
    for (std::size_t i = 0; i < len; ++i) expected[i] = kDraws * std::exp(w[i] - total);
    for (int i = 0; i < kDraws; ++i) observed[sample_log_categorical(w, rng)] += 1.0;
    EXPECT_GT(oracle::chi_square_p(observed, expected), 0.001) << "length " << len;
  }
}

TEST(RngTest, FixedSeedGivesIdenticalStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.uniform01(), b.uniform01());
    ASSERT_EQ(laplace(1.0, a), laplace(1.0, b));
  }
}

TEST(RngTest, OpenIntervalExcludesEndpoints) {
  Rng rng(7);
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.uniform_open01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
  EXPECT_NE(derive_seed(0, 0), derive_seed(1, 0));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

}  // namespace
}  // namespace tukeyem
