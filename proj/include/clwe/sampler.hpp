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

#ifndef CLWE_SAMPLER_HPP_
#define CLWE_SAMPLER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "clwe/types.hpp"

namespace clwe::sampler {

// Generation is chunked: chunk i covers rows [i*kChunkRows, (i+1)*kChunkRows)
// and draws from its own engine seeded with derive_seed(seed, i). The sample
// stream therefore depends only on (params, hypothesis, seed), never on the
// worker schedule.
inline constexpr std::size_t kChunkRows = 4096;

// Sub-stream indices of a run's root seed: the planted secret and the sample
// stream draw from derive_seed(root, kStreamSecret / kStreamSamples).
inline constexpr std::uint64_t kStreamSecret = 0;
inline constexpr std::uint64_t kStreamSamples = 1;

std::size_t chunk_count(std::size_t m);

// Unique translation of t into [0, period) by integer multiples of period.
// Results within 1e-12 of period are clamped to 0 so the representative is
// never period itself.
double mod_reduce(double t, double period);

// Uniform direction on S^{d-1}: d standard normals, normalized.
std::vector<double> draw_secret(std::size_t d, std::uint64_t seed);

// Uniform residue vector in Z_q^d (stored as doubles).
std::vector<double> draw_discrete_secret(std::size_t d, std::uint64_t q,
                                         std::uint64_t seed);

double dot(std::span<const double> a, std::span<const double> b);

// Label transform of the alternative hypothesis: mod_period(<x, s> + noise).
double lwe_label(std::span<const double> x, std::span<const double> secret,
                 double noise, double period);

// One chunk of samples in columnar layout (rows x d, plus the label column).
struct SampleChunk {
  std::size_t d = 0;
  std::size_t rows = 0;
  std::vector<double> xs;
  std::vector<double> y_prime;

  void resize(std::size_t dim, std::size_t n) {
    d = dim;
    rows = n;
    xs.resize(n * dim);
    y_prime.resize(n);
  }
  std::span<const double> x_row(std::size_t i) const {
    return std::span<const double>(xs).subspan(i * d, d);
  }
};

// Fill `chunk` with chunk `chunk_index` of the continuous LWE stream.
// Per row under the alternative: d normals for x, one normal scaled by sigma
// for the noise, label mod_T(<x,s> + z). Under the null: d normals for x,
// then one uniform for the label.
void generate_continuous_chunk(const ContinuousLweParams& params,
                               const Hypothesis& hyp, std::uint64_t seed,
                               std::size_t chunk_index, SampleChunk& chunk);

void generate_discrete_chunk(const DiscreteLweParams& params,
                             const Hypothesis& hyp, std::uint64_t seed,
                             std::size_t chunk_index, SampleChunk& chunk);

// Materialized sample sets (generation order preserved). `threads` only
// affects wall time, never content.
SampleSet sample_continuous(const ContinuousLweParams& params,
                            const Hypothesis& hyp, std::uint64_t seed,
                            int threads = 1);

SampleSet sample_discrete(const DiscreteLweParams& params,
                          const Hypothesis& hyp, std::uint64_t seed,
                          int threads = 1);

}  // namespace clwe::sampler

#endif  // CLWE_SAMPLER_HPP_
