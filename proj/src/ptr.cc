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

#include "tukeyem/ptr.h"

#include <cmath>
#include <limits>
#include <string>

#include "tukeyem/errors.h"

namespace tukeyem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_privacy_params(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kParameter, "epsilon must be positive and finite");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kParameter, "delta must lie in (0, 1)");
  }
}

// Any g pushing the denominator index past M sees V = 0 and behaves exactly
// like g = M - t - k, so the scan stops there (never below g = 1).
std::size_t max_useful_g(std::size_t m_levels, std::size_t t, int k) {
  const std::size_t first_empty = m_levels + 1;
  const std::size_t base = t + static_cast<std::size_t>(k) + 1;
  return first_empty > base ? first_empty - base : 1;
}

bool exists_g(const LogVolumes& vols, std::size_t t, int k, double epsilon,
              double log_delta) {
  const double log_num = vols.at(t - static_cast<std::size_t>(k) - 1);
  if (log_num == kInf) return false;
  const std::size_t g_max = max_useful_g(vols.size(), t, k);
  for (std::size_t g = 1; g <= g_max; ++g) {
    const double log_den = vols.at(t + static_cast<std::size_t>(k) + g + 1);
    if (log_num == -kInf) return true;  // 0/x and 0/0 both satisfy
    if (log_den == -kInf) return false;  // x/0 with x > 0; larger g stays 0
    if (log_num - log_den - epsilon * static_cast<double>(g) / 2.0 <= log_delta) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool distance_condition_holds(const LogVolumes& vols, std::size_t t, int k,
                              std::size_t g, double epsilon, double delta) {
  const double log_num = vols.at(t - static_cast<std::size_t>(k) - 1);
  const double log_den = vols.at(t + static_cast<std::size_t>(k) + g + 1);
  if (log_num == -kInf) return true;
  if (log_num == kInf || log_den == -kInf) return false;
  return log_num - log_den - epsilon * static_cast<double>(g) / 2.0 <=
         std::log(delta);
}

int distance_lower_bound(const LogVolumes& vols, std::size_t t, double epsilon,
                         double delta) {
  check_privacy_params(epsilon, delta);
  if (t < 1 || t > vols.size()) {
    throw Error(ErrorCode::kParameter,
                "depth threshold t = " + std::to_string(t) +
                    " outside [1, " + std::to_string(vols.size()) + "]");
  }
  const double log_delta = std::log(delta);
  // Invariant: condition holds at lo (or lo == -1), fails above hi.
  int lo = -1;
  int hi = static_cast<int>(t) - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (exists_g(vols, t, mid, epsilon, log_delta)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

double ptr_threshold(double epsilon, double delta) {
  check_privacy_params(epsilon, delta);
  return std::log(1.0 / (2.0 * delta)) / epsilon;
}

PtrOutcome ptr_check_with_noise(const LogVolumes& vols, double epsilon,
                                double delta, double noise) {
  check_privacy_params(epsilon, delta);
  PtrOutcome out;
  out.t = vols.size() / 2;
  out.k = distance_lower_bound(vols, out.t, epsilon,
                               delta / (8.0 * std::exp(epsilon)));
  out.noise = noise;
  out.threshold = ptr_threshold(epsilon, delta);
  out.passed = static_cast<double>(out.k) + noise >= out.threshold;
  return out;
}

PtrOutcome ptr_check(const LogVolumes& vols, double epsilon, double delta,
                     Rng& rng) {
  check_privacy_params(epsilon, delta);
  return ptr_check_with_noise(vols, epsilon, delta, laplace(1.0 / epsilon, rng));
}

}  // namespace tukeyem
