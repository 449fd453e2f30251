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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "tukeyem/depth.h"
#include "tukeyem/errors.h"
#include "tukeyem/sampler.h"

namespace tukeyem {

namespace {

constexpr std::size_t kMinModels = 8;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

void validate_budget(const PrivacyBudget& budget) {
  if (!(budget.epsilon > 0.0) || !std::isfinite(budget.epsilon)) {
    throw Error(ErrorCode::kParameter, "epsilon must be positive and finite");
  }
  if (!(budget.delta > 0.0 && budget.delta < 1.0)) {
    throw Error(ErrorCode::kParameter, "delta must lie in (0, 1)");
  }
}

MechanismResult tukey_em_from_models(const ModelSet& models,
                                     const PrivacyBudget& budget, Rng& rng) {
  validate_budget(budget);
  if (models.size() < kMinModels) {
    throw Error(ErrorCode::kParameter,
                "at least 8 models are required, got " +
                    std::to_string(models.size()));
  }
  const auto start = std::chrono::steady_clock::now();
  MechanismResult result;
  result.trace.num_models = models.size();
  result.trace.ptr_epsilon = budget.epsilon / 2.0;
  result.trace.sampler_epsilon = budget.epsilon / 2.0;

  const SortedProjections s = sorted_projections(perturb_models(models, rng));
  const LogVolumes vols = compute_log_volumes(s);
  result.trace.ptr =
      ptr_check(vols, result.trace.ptr_epsilon, budget.delta, rng);
  if (result.trace.ptr.passed) {
    const std::size_t t = models.size() / 4;
    const DepthDistribution dist =
        depth_weights(vols, t, result.trace.sampler_epsilon);
    result.trace.sampled_depth = sample_depth(dist, rng);
    result.coefficients =
        sample_point_with_depth(s, result.trace.sampled_depth, rng);
  }
  result.trace.timings.post_ols_seconds = seconds_since(start);
  return result;
}

MechanismResult tukey_em(const Dataset& data, std::size_t m,
                         const PrivacyBudget& budget, Rng& rng) {
  validate_budget(budget);
  if (m < kMinModels) {
    throw Error(ErrorCode::kParameter,
                "m must be at least 8, got " + std::to_string(m));
  }
  const auto start = std::chrono::steady_clock::now();
  const ModelSet models = partition_fit(data, m, rng);
  const double ols_seconds = seconds_since(start);
  MechanismResult result = tukey_em_from_models(models, budget, rng);
  result.trace.timings.ols_seconds = ols_seconds;
  return result;
}

std::size_t heuristic_num_models(std::size_t n, std::size_t d) {
  if (d < 1 || n < 8 * d) {
    throw Error(ErrorCode::kInsufficientData,
                "n = " + std::to_string(n) + " is below 8d = " +
                    std::to_string(8 * d));
  }
  constexpr std::size_t kStep = 250;
  constexpr std::size_t kCap = 1000;
  const std::size_t per_dim = n / (2 * d);
  const std::size_t stepped = (per_dim / kStep) * kStep;
  const std::size_t m = std::max(kStep, std::min(kCap, stepped));
  // The 250-model floor still has to leave d rows per model.
  if (n / m < d) {
    throw Error(ErrorCode::kInsufficientData,
                "n = " + std::to_string(n) + " cannot give " +
                    std::to_string(m) + " models of d = " + std::to_string(d) +
                    " rows each");
  }
  return m;
}

}  // namespace tukeyem
