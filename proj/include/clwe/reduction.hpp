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

#ifndef CLWE_REDUCTION_HPP_
#define CLWE_REDUCTION_HPP_

#include <cstdint>
#include <span>

#include "clwe/types.hpp"

namespace clwe::reduction {

// Default block size for the streaming (file-to-file) variant.
inline constexpr std::size_t kDefaultBlockRows = 1u << 16;

// Label rule of the binarization reduction: +1 iff y' <= period/2. Note the
// closed inequality; band_indicator below uses the half-open convention of
// the alternating band set, so the two disagree exactly at period/2.
std::int8_t binarize_label(double y_prime, double period);

// +1 iff mod_reduce(t, period) < period/2, i.e. t lands in a half-open band
// [i*period, i*period + period/2).
int band_indicator(double t, double period);

// Converts an LWE sample set into a halfspace-learning instance: x passes
// through unchanged, y = binarize_label(y'). Order preserved. Throws
// invalid_argument naming the first offending index if some y' is out of
// [0, period).
BinaryExampleSet binarize(const SampleSet& samples, double period);

// Element-wise form for streaming pipelines. `base_index` is only used for
// error messages.
void binarize_span(std::span<const double> y_prime, double period,
                   std::span<std::int8_t> out, std::size_t base_index = 0);

}  // namespace clwe::reduction

#endif  // CLWE_REDUCTION_HPP_
