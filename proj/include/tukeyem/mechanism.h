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

#ifndef TUKEYEM_MECHANISM_H_
#define TUKEYEM_MECHANISM_H_

#include <cstddef>
#include <optional>

#include "tukeyem/ptr.h"
#include "tukeyem/regression.h"

namespace tukeyem {

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Throws kParameter unless epsilon > 0 and delta in (0, 1).
void validate_budget(const PrivacyBudget& budget);

struct StageTimings {
  double ols_seconds = 0.0;
  // Perturbation, projections, volumes, PTR and sampling.
  double post_ols_seconds = 0.0;
};

// Instrumentation recorded by a mechanism run.
struct MechanismTrace {
  std::size_t num_models = 0;
  double ptr_epsilon = 0.0;
  double sampler_epsilon = 0.0;
  PtrOutcome ptr;
  std::size_t sampled_depth = 0;  // 0 when PTR failed
  StageTimings timings;
};

// Either released coefficients or the failure symbol. A failure is a valid
// private output, not an error.
struct MechanismResult {
  std::optional<Vector> coefficients;
  MechanismTrace trace;

  bool released() const { return coefficients.has_value(); }
};

// Partitioned OLS followed by the private aggregation below. Needs m >= 8
// and floor(n/m) >= d.
MechanismResult tukey_em(const Dataset& data, std::size_t m,
                         const PrivacyBudget& budget, Rng& rng);

// Private aggregation of already-fitted models: perturb, project, compute
// volumes, run PTR with epsilon/2, and on success sample from the
// depth >= floor(m/4) region with the remaining epsilon/2.
MechanismResult tukey_em_from_models(const ModelSet& models,
                                     const PrivacyBudget& budget, Rng& rng);

// min(1000, largest multiple of 250 <= n/(2d)), floored at 250.
// Throws kInsufficientData when n < 8d, or when the result would leave fewer
// than d rows per model.
std::size_t heuristic_num_models(std::size_t n, std::size_t d);

}  // namespace tukeyem

#endif  // TUKEYEM_MECHANISM_H_
