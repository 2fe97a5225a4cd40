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

#ifndef CLWE_METRICS_HPP_
#define CLWE_METRICS_HPP_

#include <cstdint>
#include <span>

#include "clwe/types.hpp"

namespace clwe::metrics {

// Hoeffding half-width sqrt(ln(2/(1-confidence)) / (2n)) for a mean of
// [0,1]-valued observations.
double hoeffding_half_width(std::size_t n, double confidence);

// Smallest n whose Hoeffding half-width is <= target_half_width.
std::size_t hoeffding_sample_size(double target_half_width, double confidence);

// Sufficient statistics for every estimator in this module. Partial counts
// from disjoint sample ranges combine associatively, so folds over chunks
// give the same result for any partition.
//
// Two side conventions coexist on purpose: the learning objectives condition
// on <u,x> >= 0 (with sign(0) = +1), the subgroup in the unfairness
// definition is the strict <u,x> > 0.
struct MetricCounts {
  std::uint64_t n = 0;
  std::uint64_t side_nonneg = 0;   // <u,x> >= 0
  std::uint64_t side_pos = 0;      // <u,x> >  0
  std::uint64_t label_pos = 0;     // y == +1
  std::uint64_t joint_nonneg = 0;  // y == +1 and <u,x> >= 0
  std::uint64_t joint_pos = 0;     // y == +1 and <u,x> >  0
  std::uint64_t joint_neg_lt = 0;  // y == -1 and <u,x> <  0

  void add(double dot, std::int8_t y) {
    ++n;
    const bool nonneg = dot >= 0.0;
    const bool pos = dot > 0.0;
    const bool label = y > 0;
    side_nonneg += nonneg;
    side_pos += pos;
    label_pos += label;
    joint_nonneg += label && nonneg;
    joint_pos += label && pos;
    joint_neg_lt += !label && !nonneg;
  }

  MetricCounts& operator+=(const MetricCounts& o) {
    n += o.n;
    side_nonneg += o.side_nonneg;
    side_pos += o.side_pos;
    label_pos += o.label_pos;
    joint_nonneg += o.joint_nonneg;
    joint_pos += o.joint_pos;
    joint_neg_lt += o.joint_neg_lt;
    return *this;
  }
};

// Fraction with y = sign(<u,x>), sign(0) = +1. Counts satisfy the exact
// decomposition agreement = joint_nonneg + joint_neg_lt.
EstimateWithCI agreement_from(const MetricCounts& c, double confidence);

// Fraction with y = +1 among examples with <u,x> >= 0; n is the realized
// conditioning count. Throws DegenerateConditionError when the positive side
// is empty.
EstimateWithCI positive_reliable_from(const MetricCounts& c,
                                      double confidence);

// |P[<u,x> > 0] * P[y=1] - P[y=1 and <u,x> > 0]|, the statistical-parity
// subgroup gap. The half-width is the sum of the three Hoeffding widths.
EstimateWithCI unfairness_from(const MetricCounts& c, double confidence);

MetricCounts accumulate(const BinaryExampleSet& examples,
                        std::span<const double> u);

EstimateWithCI empirical_agreement(const BinaryExampleSet& examples,
                                   std::span<const double> u,
                                   double confidence = 0.95);

EstimateWithCI empirical_positive_reliable(const BinaryExampleSet& examples,
                                           std::span<const double> u,
                                           double confidence = 0.95);

EstimateWithCI empirical_unfairness(const BinaryExampleSet& examples,
                                    std::span<const double> u,
                                    double confidence = 0.95);

// Fraction with y = +1 and <u,x> >= k*period.
EstimateWithCI empirical_band_joint(const BinaryExampleSet& examples,
                                    std::span<const double> u, int k,
                                    double period, double confidence = 0.95);

}  // namespace clwe::metrics

#endif  // CLWE_METRICS_HPP_
