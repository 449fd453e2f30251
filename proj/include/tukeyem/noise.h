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

#ifndef TUKEYEM_NOISE_H_
#define TUKEYEM_NOISE_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace tukeyem {

// Single-owner random stream. One Rng is created per top-level mechanism
// invocation and passed by reference to every operation that draws noise.
// Not safe to share across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;
  Rng(Rng&&) = default;
  Rng& operator=(Rng&&) = default;

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();

  // Uniform on (0, 1); never returns an endpoint.
  double uniform_open01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  std::uint64_t next_u64() { return engine_(); }

  // Satisfies UniformRandomBitGenerator so it can drive std::shuffle.
  using result_type = std::mt19937_64::result_type;
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Deterministic child seed for trial `index` of a run rooted at `root`
// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

// Laplace(0, scale) by inverting the CDF at a uniform u in (0, 1).
double laplace_from_uniform(double scale, double u);
double laplace(double scale, Rng& rng);

// N(0, sigma^2).
double gaussian(double sigma, Rng& rng);

// log(sum(exp(values))) with the maximum factored out. Entries equal to
// -infinity are zero weights; an empty or all -infinity input gives -infinity.
double log_sum_exp(std::span<const double> values);

// log(exp(a) - exp(b)) for a >= b. Returns -infinity when the difference
// cancels to zero.
double log_diff_exp(double a, double b);

// Draws index i with probability exp(w_i - log_sum_exp(w)) using the
// Gumbel-max trick, so no weight is ever exponentiated.
std::size_t sample_log_categorical(std::span<const double> log_weights,
                                   Rng& rng);

}  // namespace tukeyem

#endif  // TUKEYEM_NOISE_H_
