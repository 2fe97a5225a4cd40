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

#include "clwe/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "clwe/common.hpp"
#include "clwe/sampler.hpp"

namespace clwe::metrics {

namespace {

void check_confidence(double confidence) {
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0, 1)");
}

void check_nonempty(const BinaryExampleSet& examples,
                    std::span<const double> u) {
  if (examples.size() == 0)
    throw std::invalid_argument("metrics: empty example set");
  if (u.size() != examples.d)
    throw std::invalid_argument("metrics: direction dimension mismatch");
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double hoeffding_half_width(std::size_t n, double confidence) {
  check_confidence(confidence);
  if (n == 0) throw std::invalid_argument("hoeffding_half_width: n must be >= 1");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) /
                   (2.0 * static_cast<double>(n)));
}

std::size_t hoeffding_sample_size(double target_half_width,
                                  double confidence) {
  check_confidence(confidence);
  if (!(target_half_width > 0.0) || !(target_half_width < 1.0))
    throw std::invalid_argument(
        "hoeffding_sample_size: target half-width must lie in (0, 1)");
  const double raw = std::log(2.0 / (1.0 - confidence)) /
                     (2.0 * target_half_width * target_half_width);
  auto n = static_cast<std::size_t>(std::ceil(raw));
  if (n == 0) n = 1;
  while (hoeffding_half_width(n, confidence) > target_half_width) ++n;
  return n;
}

EstimateWithCI agreement_from(const MetricCounts& c, double confidence) {
  if (c.n == 0) throw std::invalid_argument("agreement: empty sample");
  return {ratio(c.joint_nonneg + c.joint_neg_lt, c.n),
          hoeffding_half_width(c.n, confidence), c.n, confidence};
}

EstimateWithCI positive_reliable_from(const MetricCounts& c,
                                      double confidence) {
  if (c.n == 0) throw std::invalid_argument("positive_reliable: empty sample");
  if (c.side_nonneg == 0)
    throw DegenerateConditionError(
        "positive_reliable: no example with <u,x> >= 0");
  return {ratio(c.joint_nonneg, c.side_nonneg),
          hoeffding_half_width(c.side_nonneg, confidence), c.side_nonneg,
          confidence};
}

EstimateWithCI unfairness_from(const MetricCounts& c, double confidence) {
  if (c.n == 0) throw std::invalid_argument("unfairness: empty sample");
  const double value = std::abs(ratio(c.side_pos, c.n) * ratio(c.label_pos, c.n) -
                                ratio(c.joint_pos, c.n));
  return {value, 3.0 * hoeffding_half_width(c.n, confidence), c.n, confidence};
}

MetricCounts accumulate(const BinaryExampleSet& examples,
                        std::span<const double> u) {
  check_nonempty(examples, u);
  MetricCounts counts;
  for (std::size_t i = 0; i < examples.size(); ++i)
    counts.add(sampler::dot(examples.x_row(i), u), examples.y[i]);
  return counts;
}

EstimateWithCI empirical_agreement(const BinaryExampleSet& examples,
                                   std::span<const double> u,
                                   double confidence) {
  return agreement_from(accumulate(examples, u), confidence);
}

EstimateWithCI empirical_positive_reliable(const BinaryExampleSet& examples,
                                           std::span<const double> u,
                                           double confidence) {
  return positive_reliable_from(accumulate(examples, u), confidence);
}

EstimateWithCI empirical_unfairness(const BinaryExampleSet& examples,
                                    std::span<const double> u,
                                    double confidence) {
  return unfairness_from(accumulate(examples, u), confidence);
}

EstimateWithCI empirical_band_joint(const BinaryExampleSet& examples,
                                    std::span<const double> u, int k,
                                    double period, double confidence) {
  check_nonempty(examples, u);
  check_confidence(confidence);
  if (k < 0) throw std::invalid_argument("band_joint: k must be >= 0");
  if (!(period > 0.0)) throw std::invalid_argument("band_joint: period must be > 0");
  const double threshold = static_cast<double>(k) * period;
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples.y[i] > 0 &&
        sampler::dot(examples.x_row(i), u) >= threshold)
      ++hits;
  }
  const std::size_t n = examples.size();
  return {ratio(hits, n), hoeffding_half_width(n, confidence), n, confidence};
}

}  // namespace clwe::metrics
