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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tukeyem/errors.h"

namespace tukeyem {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
}  // namespace

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * kTwoPow53Inv;
}

double Rng::uniform_open01() {
  // (k + 0.5) / 2^53 for k in [0, 2^53) lies strictly inside (0, 1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPow53Inv;
}

double Rng::uniform(double lo, double hi) {
  const double x = lo + (hi - lo) * uniform01();
  // Rounding can land exactly on hi when the interval is tiny relative to lo.
  return x < hi ? x : std::nextafter(hi, lo);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double laplace_from_uniform(double scale, double u) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kParameter, "laplace scale must be positive");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorCode::kParameter, "laplace uniform input must be in (0,1)");
  }
  const double centered = u - 0.5;
  const double sign = centered < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(centered));
}

double laplace(double scale, Rng& rng) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kParameter, "laplace scale must be positive");
  }
  return laplace_from_uniform(scale, rng.uniform_open01());
}

double gaussian(double sigma, Rng& rng) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kParameter, "gaussian sigma must be positive");
  }
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

double log_sum_exp(std::span<const double> values) {
  double max_value = kNegInf;
  for (double v : values) max_value = std::max(max_value, v);
  if (max_value == kNegInf) return kNegInf;
  if (std::isinf(max_value)) return max_value;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max_value);
  return max_value + std::log(sum);
}

double log_diff_exp(double a, double b) {
  if (b == kNegInf) return a;
  if (!(a >= b)) {
    throw Error(ErrorCode::kParameter, "log_diff_exp requires a >= b");
  }
  if (a == b) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

std::size_t sample_log_categorical(std::span<const double> log_weights,
                                   Rng& rng) {
  std::size_t best = log_weights.size();
  double best_key = kNegInf;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    const double w = log_weights[i];
    if (std::isnan(w)) {
      throw Error(ErrorCode::kParameter, "log weight " + std::to_string(i) +
                                             " is NaN");
    }
    if (w == kNegInf) continue;
    // Standard Gumbel perturbation.
    const double key = w - std::log(-std::log(rng.uniform_open01()));
    if (best == log_weights.size() || key > best_key) {
      best = i;
      best_key = key;
    }
  }
  if (best == log_weights.size()) {
    throw Error(ErrorCode::kParameter,
                "sample_log_categorical needs at least one finite weight");
  }
  return best;
}

}  // namespace tukeyem
