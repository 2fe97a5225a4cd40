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

#include "clwe/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "clwe/closed_form.hpp"
#include "clwe/common.hpp"
#include "clwe/sampler.hpp"

using namespace clwe;
using namespace clwe::oracle;

namespace {

// Mills-ratio continued fraction for the normal tail, used only here as an
// implementation-independent reference: P[g >= x] = phi(x)/(x + 1/(x + 2/...)).
double mills_tail(double x, int depth = 300) {
  double cf = 0.0;
  for (int k = depth; k >= 1; --k) cf = static_cast<double>(k) / (x + cf);
  return std::exp(-0.5 * x * x) * 0.39894228040143267794 / (x + cf);
}

void check_close(const OracleValue& got, double reference, double slack) {
  CHECK(std::abs(got.value - reference) <= got.error_bound + slack);
}

}  // namespace

TEST_CASE("normal_tail hits 20-digit references to 1e-14 relative") {
  struct Ref {
    double t;
    double value;
  };
  // References computed with 25-digit arithmetic.
  const Ref refs[] = {
      {0.0, 0.5},
      {0.1, 0.46017216272297101853},
      {0.5, 0.30853753872598689636},
      {1.0, 0.15865525393145705141},
      {2.0, 0.0227501319481792072},
      {5.0, 2.8665157187919391167e-7},
      {8.0, 6.2209605742717841235e-16},
  };
  for (const auto& r : refs) {
    CHECK(std::abs(normal_tail(r.t) - r.value) <= 1e-14 * r.value);
    CHECK(std::abs(normal_tail(-r.t) - (1.0 - r.value)) <= 1e-14);
  }
  CHECK(normal_tail(std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("normal_tail agrees with the Mills continued fraction") {
  for (double t : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0}) {
    CHECK(std::abs(normal_tail(t) - mills_tail(t)) <= 1e-12 * normal_tail(t));
  }
}

TEST_CASE("wrapped interval probability sums lattice tails") {
  // sigma = 0 reduces to the residue indicator.
  CHECK(wrapped_interval_probability(0.3, 1.0, 0.0, 0.5, 0.0).value == 1.0);
  CHECK(wrapped_interval_probability(0.7, 1.0, 0.0, 0.5, 0.0).value == 0.0);
  // Wide noise wraps to near-uniform mass proportional to interval length.
  const auto wide = wrapped_interval_probability(0.37, 1.0, 0.0, 0.5, 25.0);
  CHECK(std::abs(wide.value - 0.5) <= 1e-10);
  // Complementary intervals sum to one.
  const auto lo = wrapped_interval_probability(1.23, 0.4, 0.0, 0.2, 0.05);
  const auto hi = wrapped_interval_probability(1.23, 0.4, 0.2, 0.4, 0.05);
  CHECK(std::abs(lo.value + hi.value - 1.0) <=
        lo.error_bound + hi.error_bound + 1e-14);
  CHECK_THROWS_AS(wrapped_interval_probability(0.0, 1.0, 0.5, 0.2, 0.1),
                  std::invalid_argument);
}

TEST_CASE("quad_sine_gaussian matches high-precision references") {
  CHECK(quad_sine_gaussian(0.0, 0.0).value == 0.0);
  check_close(quad_sine_gaussian(0.0, 2.0), 0.25531830189684637257, 1e-13);
  check_close(quad_sine_gaussian(kPi, 2.0), 0.00036390183218492604179, 1e-13);
}

TEST_CASE("band_sum_series matches high-precision references") {
  check_close(band_sum_series(0, 0.1), 0.25498781819737792176, 1e-14);
  check_close(band_sum_series(1, 0.1), 0.23504901235900546016, 1e-14);
  check_close(band_sum_series(2, 0.1), 0.21525915726579192366, 1e-14);
  check_close(band_sum_series(0, 0.05), 0.25249351914088973005, 1e-14);
}

TEST_CASE("band_sum saturates on a single wide band") {
  const auto v = band_sum_probability(0, 20.0, 0.0);
  CHECK(std::abs(v.value - 0.5) <= v.error_bound + 1e-14);
}

TEST_CASE("noisy band sums match an independent Fourier-route reference") {
  // References computed by a complex-erfc Fourier summation at 30 digits,
  // a route disjoint from the wrapped-lattice quadrature used here.
  check_close(band_sum_probability(0, 0.1, 0.005), 0.25419198774070560338,
              1e-12);
  check_close(band_sum_probability(1, 0.1, 0.005), 0.23425715167830361162,
              1e-12);
  check_close(band_sum_probability(0, 0.05, 0.0125), 0.25058860098650630972,
              1e-12);
}

TEST_CASE("series and quadrature band-sum routes agree as noise vanishes") {
  // Smoothing bites the transition sitting exactly at the lower limit kT, so
  // the quadrature route approaches the exact series linearly in sigma with
  // slope ~ phi(kT)/sqrt(2 pi); at sigma = 1e-9 T that is far below 1e-9.
  for (double T : {0.05, 0.1, 1.0 / kPi}) {
    for (int k : {0, 1, 2}) {
      const auto exact = band_sum_series(k, T);
      const auto quad = band_sum_quadrature(k, T, 1e-9 * T);
      CHECK(std::abs(exact.value - quad.value) <= 1e-9);
      // And the gap shrinks with sigma.
      const auto coarse = band_sum_quadrature(k, T, 1e-4 * T);
      CHECK(std::abs(exact.value - quad.value) <
            std::abs(exact.value - coarse.value));
    }
  }
}

TEST_CASE("partial convolution references and trivial cases") {
  CHECK(quad_partial_convolution(0.0, 0.0, 0.1).value == 0.0);
  check_close(quad_partial_convolution(0.0, 2.0, 0.0), 0.38544790280670330441,
              1e-13);
  check_close(quad_partial_convolution(0.0, 2.0, 0.05), 0.36911213665667841355,
              1e-12);
  check_close(quad_partial_convolution(kPi, 2.0, 0.01),
              0.00081525889013505239643, 1e-12);
  // Heavy damping annihilates every harmonic.
  const auto damped = quad_partial_convolution(0.0, 2.0, 12.0);
  CHECK(std::abs(damped.value) <= 1e-10);
}

TEST_CASE("partial convolution dominates its bound at the band frequency") {
  // omega = 2 pi / T at the planted-advantage parameters, outside the
  // omega grid of the verification suite.
  const double omega = 2.0 * kPi / 0.1;
  const auto conv = quad_partial_convolution(0.0, omega, 0.005);
  const double bound =
      closedform::partial_convolution_bound(0.0, omega, 0.005);
  CHECK(conv.value - bound > conv.error_bound);
}

TEST_CASE("partial convolution reduces to clipped band sums at the phases") {
  for (double T : {0.05, 0.1, 1.0 / kPi}) {
    for (int k : {0, 1, 2}) {
      const double omega = 2.0 * kPi / T;
      const double alpha = static_cast<double>(k) * T;
      const auto conv = quad_partial_convolution(alpha, omega, 0.0);
      const auto bands = band_sum_series(k, T);
      const double reform =
          2.0 * (bands.value - 0.5 * normal_tail(alpha));
      CHECK(std::abs(conv.value - reform) <=
            conv.error_bound + 2.0 * bands.error_bound + 1e-12);
    }
  }
}

TEST_CASE("mc_expectation returns the declared-range Hoeffding width") {
  auto constant = [](NormalSampler&) { return 0.25; };
  const auto est = mc_expectation(constant, 0.0, 1.0, 10000, 42);
  CHECK(est.value == 0.25);
  CHECK(est.half_width ==
        doctest::Approx(metrics::hoeffding_half_width(10000, 0.95))
            .epsilon(1e-15));
  CHECK_THROWS_AS(mc_expectation(constant, 0.0,
                                 std::numeric_limits<double>::infinity(),
                                 100, 1),
                  std::invalid_argument);
}

TEST_CASE("mc_expectation reproduces the damped sine transform") {
  auto sample = [](NormalSampler& gen) {
    return std::sin(2.0 * (1.0 + 0.5 * gen.next()));
  };
  const auto est = mc_expectation(sample, -1.0, 1.0, 10'000'000, 7);
  const double reference = 0.55151676816758073519;  // sin(2) e^{-1/2}
  CHECK(std::abs(est.value - reference) <= 3.0 * est.half_width);
}

TEST_CASE("mc_expectation reproduces the band-sum joint probability") {
  const double T = 0.1, sigma = 0.005;
  auto sample = [&](NormalSampler& gen) {
    const double g = gen.next();
    const double y = sampler::mod_reduce(g + sigma * gen.next(), T);
    return (g >= 0.0 && y <= T / 2.0) ? 1.0 : 0.0;
  };
  const auto est = mc_expectation(sample, 0.0, 1.0, 4'000'000, 99);
  const auto reference = band_sum_probability(0, T, sigma);
  CHECK(std::abs(est.value - reference.value) <= 3.0 * est.half_width);
}

TEST_CASE("mc_expectation is deterministic across worker counts") {
  auto sample = [](NormalSampler& gen) { return gen.next(); };
  const auto one = mc_expectation(sample, -40.0, 40.0, 300000, 11, 0.95, 1);
  const auto four = mc_expectation(sample, -40.0, 40.0, 300000, 11, 0.95, 4);
  CHECK(one.value == four.value);
}

TEST_CASE("exhausted subdivision budgets raise accuracy failures") {
  QuadratureSpec starved;
  starved.abs_tolerance = 1e-30;
  starved.max_subdivisions = 1;
  CHECK_THROWS_AS(quad_sine_gaussian(0.0, 2.0, starved), AccuracyError);
  try {
    quad_sine_gaussian(0.0, 2.0, starved);
  } catch (const AccuracyError& e) {
    CHECK(std::abs(e.best_estimate - 0.25531830189684637257) < 1e-3);
    CHECK(e.error_estimate > 1e-30);
  }
}
