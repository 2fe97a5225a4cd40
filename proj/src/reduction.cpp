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

#include "clwe/reduction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "clwe/sampler.hpp"

namespace clwe::reduction {

std::int8_t binarize_label(double y_prime, double period) {
  return y_prime <= period / 2.0 ? std::int8_t{1} : std::int8_t{-1};
}

int band_indicator(double t, double period) {
  return sampler::mod_reduce(t, period) < period / 2.0 ? 1 : -1;
}

void binarize_span(std::span<const double> y_prime, double period,
                   std::span<std::int8_t> out, std::size_t base_index) {
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("binarize: period must be positive");
  for (std::size_t i = 0; i < y_prime.size(); ++i) {
    const double v = y_prime[i];
    if (!(v >= 0.0) || v >= period) {
      throw std::invalid_argument(
          "binarize: y' out of [0, period) at index " +
          std::to_string(base_index + i) + " (value " + std::to_string(v) +
          ")");
    }
    out[i] = binarize_label(v, period);
  }
}

BinaryExampleSet binarize(const SampleSet& samples, double period) {
  BinaryExampleSet out;
  out.d = samples.d;
  out.xs = samples.xs;
  out.y.resize(samples.size());
  binarize_span(samples.y_prime, period, out.y);
  return out;
}

}  // namespace clwe::reduction
