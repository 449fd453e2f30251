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

#ifndef TUKEYEM_PTR_H_
#define TUKEYEM_PTR_H_

#include <cstddef>

#include "tukeyem/depth.h"
#include "tukeyem/noise.h"

namespace tukeyem {

// Result of the propose-test-release check. `noise` is the Laplace draw added
// to `k` (zero on the noiseless test path).
struct PtrOutcome {
  int k = -1;
  std::size_t t = 0;
  double noise = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

// Whether the pair (k, g) satisfies
//   log V_{t-k-1} - log V_{t+k+g+1} - epsilon * g / 2 <= log(delta),
// with V_0 = +inf, V_{>M} = 0, and an empty/empty ratio counting as satisfied.
bool distance_condition_holds(const LogVolumes& vols, std::size_t t, int k,
                              std::size_t g, double epsilon, double delta);

// 1-sensitive lower bound on the Hamming distance to an unsafe database:
// the largest k in {0, ..., t-1} admitting some integer g >= 1 that
// satisfies the condition above, or -1. Binary search over k (the condition
// is downward closed in k) with a linear scan over g.
// Throws kParameter unless 1 <= t <= M, epsilon > 0 and delta in (0, 1).
int distance_lower_bound(const LogVolumes& vols, std::size_t t, double epsilon,
                         double delta);

// ln(1 / (2 delta)) / epsilon.
double ptr_threshold(double epsilon, double delta);

// Runs the check at t = floor(M/2) with the distance bound's delta set to
// delta / (8 e^epsilon), then compares k + Lap(1/epsilon) to the threshold.
PtrOutcome ptr_check(const LogVolumes& vols, double epsilon, double delta,
                     Rng& rng);

// Same computation with the Laplace draw fixed to `noise`. Test hook; the
// mechanism always goes through ptr_check.
PtrOutcome ptr_check_with_noise(const LogVolumes& vols, double epsilon,
                                double delta, double noise);

}  // namespace tukeyem

#endif  // TUKEYEM_PTR_H_
