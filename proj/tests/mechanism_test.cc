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

#include "tukeyem/mechanism.h"

#include <cmath>

#include <gtest/gtest.h>

#include "tukeyem/depth.h"
#include "tukeyem/errors.h"
#include "tukeyem/noise.h"

namespace tukeyem {
namespace {

const PrivacyBudget kBudget{std::log(3.0), 1e-5};

Dataset synthetic(std::size_t n, std::size_t d_features, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticSpec spec;
  spec.n = n;
  spec.d_features = d_features;
  spec.noise_sigma = sigma;
  return generate_synthetic(spec, rng).data.with_intercept();
}

TEST(MechanismTest, SplitsBudgetInHalf) {
  const Dataset data = synthetic(6000, 4, 10.0, 1);
  Rng rng(2);
  const MechanismResult r = tukey_em(data, 1000, kBudget, rng);
  EXPECT_DOUBLE_EQ(r.trace.ptr_epsilon, kBudget.epsilon / 2);
  EXPECT_DOUBLE_EQ(r.trace.sampler_epsilon, kBudget.epsilon / 2);
  EXPECT_DOUBLE_EQ(r.trace.ptr_epsilon + r.trace.sampler_epsilon, kBudget.epsilon);
  EXPECT_NEAR(r.trace.ptr.threshold, std::log(50000.0) / (kBudget.epsilon / 2), 1e-12);
  EXPECT_EQ(r.trace.num_models, 1000u);
  EXPECT_EQ(r.trace.ptr.t, 250u);
}

TEST(MechanismTest, ReleasesExactlyWhenPtrPasses) {
  Rng data_rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    // Sizes near the pass/fail boundary so both outcomes occur.
    const Dataset data = synthetic(8 * 400, 6, 10.0, 100 + rep);
    Rng rng(200 + rep);
    const MechanismResult r = tukey_em(data, 400, kBudget, rng);
    EXPECT_EQ(r.released(), r.trace.ptr.passed);
    if (r.released()) {
      EXPECT_EQ(static_cast<std::size_t>(r.coefficients->size()), data.cols());
      EXPECT_GE(r.trace.sampled_depth, 100u);
      EXPECT_LE(r.trace.sampled_depth, 200u);
    } else {
      EXPECT_EQ(r.trace.sampled_depth, 0u);
    }
  }
}

TEST(MechanismTest, Deterministic) {
  const Dataset data = synthetic(5000, 4, 5.0, 4);
  Rng a(9), b(9);
  const MechanismResult ra = tukey_em(data, 500, kBudget, a);
  const MechanismResult rb = tukey_em(data, 500, kBudget, b);
  ASSERT_EQ(ra.released(), rb.released());
  EXPECT_EQ(ra.trace.ptr.k, rb.trace.ptr.k);
  EXPECT_EQ(ra.trace.ptr.noise, rb.trace.ptr.noise);
  if (ra.released()) EXPECT_EQ(*ra.coefficients, *rb.coefficients);
}

TEST(MechanismTest, HighDimensionFewModelsFails) {
  const Dataset data = synthetic(51 * 250, 50, 10.0, 5);
  Rng rng(6);
  const MechanismResult r = tukey_em(data, 250, kBudget, rng);
  EXPECT_FALSE(r.released());
  EXPECT_LT(r.trace.ptr.k, r.trace.ptr.threshold);
}

TEST(MechanismTest, ExactLinearDataStaysAtTruth) {
  Rng rng(7);
  SyntheticSpec spec;
  spec.n = 4000;
  spec.d_features = 1;
  spec.noise_sigma = 0.0;
  const SyntheticData syn = generate_synthetic(spec, rng);
  const MechanismResult r = tukey_em(syn.data, 1000, kBudget, rng);
  ASSERT_TRUE(r.released());
  // Every model equals the truth; perturbation adds at most 1e-12 per coordinate.
  EXPECT_TRUE(((*r.coefficients - syn.true_coefficients).array() >= -1e-9).all());
  EXPECT_TRUE(((*r.coefficients - syn.true_coefficients).array() <= 1e-9).all());
}

TEST(MechanismTest, OlsDominatesRuntime) {
  const Dataset data = synthetic(22000, 10, 10.0, 8);
  Rng rng(9);
  // Warm-up, then the measured run.
  tukey_em(data, 1000, kBudget, rng);
  const MechanismResult r = tukey_em(data, 1000, kBudget, rng);
  const auto& t = r.trace.timings;
  EXPECT_GT(t.ols_seconds / (t.ols_seconds + t.post_ols_seconds), 0.5);
}

TEST(MechanismTest, RejectsBadArguments) {
  const Dataset data = synthetic(200, 2, 1.0, 10);
  Rng rng(11);
  EXPECT_THROW(tukey_em(data, 7, kBudget, rng), Error);
  EXPECT_THROW(tukey_em(data, 20, PrivacyBudget{0.0, 1e-5}, rng), Error);
  EXPECT_THROW(tukey_em(data, 20, PrivacyBudget{1.0, 1.0}, rng), Error);
  try {
    tukey_em(data, 100, kBudget, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(HeuristicTest, Examples) {
  EXPECT_EQ(heuristic_num_models(22000, 11), 1000u);
  EXPECT_EQ(heuristic_num_models(7909, 4), 750u);
  EXPECT_EQ(heuristic_num_models(100000, 2), 1000u);
  EXPECT_EQ(heuristic_num_models(2500, 10), 250u);
  EXPECT_THROW(heuristic_num_models(1000, 10), Error);  // 250 models of 4 rows
  try {
    heuristic_num_models(100, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

}  // namespace
}  // namespace tukeyem
