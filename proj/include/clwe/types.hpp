/*
 * Copyright 2026 The clwe-lab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CLWE_TYPES_HPP_
#define CLWE_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace clwe {

// Parameters of a continuous LWE instance: samples x ~ N(0, I_d), labels
// y' = mod_T(<x, s> + z) with z ~ N(0, sigma^2) under the alternative,
// y' ~ U[0, T) under the null.
struct ContinuousLweParams {
  std::size_t d = 1;
  std::size_t m = 1;
  double sigma = 0.0;
  double period = 1.0;  // the modulus T

  void validate() const;
};

// Parameters of a discrete LWE instance: x uniform on Z_q^d, secret in Z_q^d,
// noise is real-valued N(0, sigma^2) reduced mod q (no integer rounding).
struct DiscreteLweParams {
  std::size_t d = 1;
  std::size_t m = 1;
  std::uint64_t q = 2;
  double sigma = 1.0;

  void validate() const;
};

enum class HypothesisKind { kAlternative, kNull };

// Alternative carries the planted secret; null has none. Continuous secrets
// are unit vectors on S^{d-1}, discrete secrets are residue vectors in Z_q^d.
struct Hypothesis {
  HypothesisKind kind = HypothesisKind::kNull;
  std::vector<double> secret;

  static Hypothesis Alternative(std::vector<double> secret_vector) {
    return Hypothesis{HypothesisKind::kAlternative, std::move(secret_vector)};
  }
  static Hypothesis Null() { return Hypothesis{HypothesisKind::kNull, {}}; }
};

// One LWE example before binarization, viewing into a SampleSet row.
struct RawSample {
  std::span<const double> x;
  double y_prime;
};

// Columnar sample storage: xs is row-major m x d, y_prime has one residue per
// row. Immutable after creation by convention.
struct SampleSet {
  std::size_t d = 0;
  std::vector<double> xs;
  std::vector<double> y_prime;

  std::size_t size() const { return y_prime.size(); }
  std::span<const double> x_row(std::size_t i) const {
    return std::span<const double>(xs).subspan(i * d, d);
  }
  RawSample sample(std::size_t i) const { return {x_row(i), y_prime[i]}; }
};

// Halfspace-learning instance produced by the binarization reduction.
// Labels are exactly +1 or -1.
struct BinaryExampleSet {
  std::size_t d = 0;
  std::vector<double> xs;
  std::vector<std::int8_t> y;

  std::size_t size() const { return y.size(); }
  std::span<const double> x_row(std::size_t i) const {
    return std::span<const double>(xs).subspan(i * d, d);
  }
};

// A Monte Carlo estimate with its Hoeffding confidence half-width. For
// conditional estimates n is the realized conditioning count.
struct EstimateWithCI {
  double value = 0.0;
  double half_width = 0.0;
  std::size_t n = 0;
  double confidence = 0.95;
};

}  // namespace clwe

#endif  // CLWE_TYPES_HPP_
