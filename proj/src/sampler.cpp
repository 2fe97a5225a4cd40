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

#include "clwe/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "clwe/parallel.hpp"
#include "clwe/rng.hpp"

namespace clwe {

void ContinuousLweParams::validate() const {
  if (d < 1) throw std::invalid_argument("ContinuousLweParams: d must be >= 1");
  if (m < 1) throw std::invalid_argument("ContinuousLweParams: m must be >= 1");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("ContinuousLweParams: sigma must be >= 0");
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("ContinuousLweParams: period must be > 0");
}

void DiscreteLweParams::validate() const {
  if (d < 1) throw std::invalid_argument("DiscreteLweParams: d must be >= 1");
  if (m < 1) throw std::invalid_argument("DiscreteLweParams: m must be >= 1");
  if (q < 2) throw std::invalid_argument("DiscreteLweParams: q must be >= 2");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("DiscreteLweParams: sigma must be >= 0");
}

namespace sampler {

namespace {

void check_continuous_hypothesis(const ContinuousLweParams& params,
                                 const Hypothesis& hyp) {
  if (hyp.kind != HypothesisKind::kAlternative) return;
  if (hyp.secret.size() != params.d) {
    throw std::invalid_argument(
        "sample_continuous: secret dimension " +
        std::to_string(hyp.secret.size()) + " does not match d = " +
        std::to_string(params.d));
  }
  double norm_sq = 0.0;
  for (double v : hyp.secret) norm_sq += v * v;
  if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "sample_continuous: alternative secret must be a unit vector");
  }
}

void check_discrete_hypothesis(const DiscreteLweParams& params,
                               const Hypothesis& hyp) {
  if (hyp.kind != HypothesisKind::kAlternative) return;
  if (hyp.secret.size() != params.d) {
    throw std::invalid_argument(
        "sample_discrete: secret dimension " +
        std::to_string(hyp.secret.size()) + " does not match d = " +
        std::to_string(params.d));
  }
  for (double v : hyp.secret) {
    if (!(v >= 0.0) || v >= static_cast<double>(params.q) ||
        v != std::floor(v)) {
      throw std::invalid_argument(
          "sample_discrete: secret coordinates must be residues in [0, q)");
    }
  }
}

double uniform_residue(NormalSampler& gen, std::uint64_t q) {
  double v = std::floor(static_cast<double>(q) * gen.uniform01());
  if (v >= static_cast<double>(q)) v = static_cast<double>(q) - 1.0;
  return v;
}

template <class RowFn>
SampleSet materialize(std::size_t d, std::size_t m, int threads, RowFn fill) {
  SampleSet out;
  out.d = d;
  out.xs.resize(m * d);
  out.y_prime.resize(m);
  const std::size_t chunks = chunk_count(m);
  parallel_for_index(chunks, threads, [&](std::size_t c) {
    SampleChunk chunk;
    fill(c, chunk);
    const std::size_t begin = c * kChunkRows;
    std::copy(chunk.xs.begin(), chunk.xs.end(), out.xs.begin() + begin * d);
    std::copy(chunk.y_prime.begin(), chunk.y_prime.end(),
              out.y_prime.begin() + begin);
  });
  return out;
}

}  // namespace

std::size_t chunk_count(std::size_t m) {
  return (m + kChunkRows - 1) / kChunkRows;
}

double mod_reduce(double t, double period) {
  if (!std::isfinite(t))
    throw std::invalid_argument("mod_reduce: t must be finite");
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("mod_reduce: period must be positive");
  double r = t - std::floor(t / period) * period;
  if (r < 0.0) r += period;
  if (r >= period || period - r < 1e-12) r = 0.0;
  return r;
}

std::vector<double> draw_secret(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("draw_secret: d must be >= 1");
  NormalSampler gen(seed);
  std::vector<double> v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = gen.next();
      norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-8);  // astronomically unlikely; redraw keeps the map total
  for (double& x : v) x /= norm;
  return v;
}

std::vector<double> draw_discrete_secret(std::size_t d, std::uint64_t q,
                                         std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("draw_discrete_secret: d must be >= 1");
  if (q < 2) throw std::invalid_argument("draw_discrete_secret: q must be >= 2");
  NormalSampler gen(seed);
  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = uniform_residue(gen, q);
  return v;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double lwe_label(std::span<const double> x, std::span<const double> secret,
                 double noise, double period) {
  return mod_reduce(dot(x, secret) + noise, period);
}

void generate_continuous_chunk(const ContinuousLweParams& params,
                               const Hypothesis& hyp, std::uint64_t seed,
                               std::size_t chunk_index, SampleChunk& chunk) {
  params.validate();
  check_continuous_hypothesis(params, hyp);
  const std::size_t begin = chunk_index * kChunkRows;
  if (begin >= params.m)
    throw std::invalid_argument("generate_continuous_chunk: chunk out of range");
  const std::size_t rows = std::min(kChunkRows, params.m - begin);
  chunk.resize(params.d, rows);

  NormalSampler gen(derive_seed(seed, chunk_index));
  const bool alternative = hyp.kind == HypothesisKind::kAlternative;
  for (std::size_t i = 0; i < rows; ++i) {
    double* x = chunk.xs.data() + i * params.d;
    for (std::size_t j = 0; j < params.d; ++j) x[j] = gen.next();
    if (alternative) {
      const double z = params.sigma * gen.next();
      chunk.y_prime[i] = lwe_label({x, params.d}, hyp.secret, z, params.period);
    } else {
      chunk.y_prime[i] =
          mod_reduce(params.period * gen.uniform01(), params.period);
    }
  }
}

void generate_discrete_chunk(const DiscreteLweParams& params,
                             const Hypothesis& hyp, std::uint64_t seed,
                             std::size_t chunk_index, SampleChunk& chunk) {
  params.validate();
  check_discrete_hypothesis(params, hyp);
  const std::size_t begin = chunk_index * kChunkRows;
  if (begin >= params.m)
    throw std::invalid_argument("generate_discrete_chunk: chunk out of range");
  const std::size_t rows = std::min(kChunkRows, params.m - begin);
  chunk.resize(params.d, rows);

  NormalSampler gen(derive_seed(seed, chunk_index));
  const double q = static_cast<double>(params.q);
  const bool alternative = hyp.kind == HypothesisKind::kAlternative;
  for (std::size_t i = 0; i < rows; ++i) {
    double* x = chunk.xs.data() + i * params.d;
    for (std::size_t j = 0; j < params.d; ++j)
      x[j] = uniform_residue(gen, params.q);
    if (alternative) {
      const double z = params.sigma * gen.next();
      chunk.y_prime[i] = lwe_label({x, params.d}, hyp.secret, z, q);
    } else {
      chunk.y_prime[i] = mod_reduce(q * gen.uniform01(), q);
    }
  }
}

SampleSet sample_continuous(const ContinuousLweParams& params,
                            const Hypothesis& hyp, std::uint64_t seed,
                            int threads) {
  params.validate();
  check_continuous_hypothesis(params, hyp);
  return materialize(params.d, params.m, threads,
                     [&](std::size_t c, SampleChunk& chunk) {
                       generate_continuous_chunk(params, hyp, seed, c, chunk);
                     });
}

SampleSet sample_discrete(const DiscreteLweParams& params,
                          const Hypothesis& hyp, std::uint64_t seed,
                          int threads) {
  params.validate();
  check_discrete_hypothesis(params, hyp);
  return materialize(params.d, params.m, threads,
                     [&](std::size_t c, SampleChunk& chunk) {
                       generate_discrete_chunk(params, hyp, seed, c, chunk);
                     });
}

}  // namespace sampler
}  // namespace clwe
