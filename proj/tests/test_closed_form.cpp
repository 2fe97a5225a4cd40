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

#include "clwe/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "clwe/common.hpp"
#include "clwe/oracle.hpp"
#include "clwe/reduction.hpp"

using namespace clwe;
using namespace clwe::closedform;

TEST_CASE("square-wave partial sums") {
  CHECK(square_wave_partial_sum(kPi / 2.0, 1) ==
        doctest::Approx(4.0 / kPi).epsilon(1e-15));
  for (int terms : {1, 7, 100})
    CHECK(std::abs(square_wave_partial_sum(kPi, terms)) <= 1e-12);
  CHECK(std::abs(square_wave_partial_sum(kPi / 2.0, 10000) - 1.0) <= 1e-3);
  CHECK(square_wave_partial_sum(kPi / 2.0, 10000) ==
        doctest::Approx(static_cast<double>(
                            reduction::band_indicator(kPi / 2.0, 2.0 * kPi)))
            .epsilon(1e-3));
  CHECK_THROWS_AS(square_wave_partial_sum(1.0, 0), std::invalid_argument);
}

TEST_CASE("gaussian characteristic function") {
  const auto unit = gaussian_characteristic(0.0, 1.0, 0.0);
  CHECK(unit.real() == 1.0);
  CHECK(unit.imag() == 0.0);

  const auto phase = gaussian_characteristic(0.7, 0.0, 3.0);
  CHECK(phase.real() == doctest::Approx(std::cos(2.1)).epsilon(1e-15));
  CHECK(phase.imag() == doctest::Approx(std::sin(2.1)).epsilon(1e-15));

  const auto damped = gaussian_characteristic(1.0, 1.0, 2.0);
  CHECK(damped.real() ==
        doctest::Approx(std::exp(-2.0) * std::cos(2.0)).epsilon(1e-15));
  CHECK(damped.imag() ==
        doctest::Approx(std::exp(-2.0) * std::sin(2.0)).epsilon(1e-15));

  // Monte Carlo cross-check of both components for z ~ N(1, 1).
  auto real_part = [](NormalSampler& gen) {
    return std::cos(2.0 * (1.0 + gen.next()));
  };
  auto imag_part = [](NormalSampler& gen) {
    return std::sin(2.0 * (1.0 + gen.next()));
  };
  const auto re = oracle::mc_expectation(real_part, -1.0, 1.0, 4'000'000, 21);
  const auto im = oracle::mc_expectation(imag_part, -1.0, 1.0, 4'000'000, 22);
  CHECK(std::abs(re.value - damped.real()) <= 3.0 * re.half_width);
  CHECK(std::abs(im.value - damped.imag()) <= 3.0 * im.half_width);
}

TEST_CASE("damped sine transform") {
  CHECK(subgaussian_sine_transform(0.0, 1.0, 5.0) == 0.0);
  CHECK(subgaussian_sine_transform(0.8, 0.0, 5.0) ==
        doctest::Approx(std::sin(4.0)).epsilon(1e-15));
  CHECK(subgaussian_sine_transform(1.0, 0.5, 2.0) ==
        doctest::Approx(std::sin(2.0) * std::exp(-0.5)).epsilon(1e-15));
  const auto quad = oracle::quad_sine_gaussian_general(1.0, 0.5, 2.0);
  CHECK(std::abs(subgaussian_sine_transform(1.0, 0.5, 2.0) - quad.value) <=
        1e-8);
}

TEST_CASE("partial sine-transform bound and its phase precondition") {
  CHECK(partial_gaussian_ft_bound(0.0, 2.0) == doctest::Approx(0.125));
  CHECK(partial_gaussian_ft_bound(kPi, 2.0) ==
        doctest::Approx(std::exp(-kPi * kPi) / 8.0).epsilon(1e-15));
  CHECK_THROWS_AS(partial_gaussian_ft_bound(0.5, 2.0), PreconditionError);
  try {
    partial_gaussian_ft_bound(0.5, 2.0);
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
  CHECK_THROWS_AS(partial_gaussian_ft_bound(0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(partial_gaussian_ft_bound(-1.0, 2.0), std::invalid_argument);
}

TEST_CASE("partial convolution bound") {
  CHECK(partial_convolution_bound(0.0, 2.0, 0.0) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
  // Same quantity written two ways: omega = 2 pi / T turns the damping into
  // e^{-2 pi^2 sigma^2 / T^2} and the prefactor into T / (2 pi^2).
  const double T = 0.1, sigma = 0.005;
  const double omega = 2.0 * kPi / T;
  const double rewritten = (T / (2.0 * kPi)) *
                           std::exp(-2.0 * kPi * kPi * sigma * sigma / (T * T)) /
                           kPi;
  CHECK(partial_convolution_bound(0.0, omega, sigma) ==
        doctest::Approx(rewritten).epsilon(1e-14));
  CHECK(partial_convolution_bound(kPi, 2.0, 0.1) ==
        doctest::Approx(std::exp(-kPi * kPi - 0.02) / (2.0 * kPi))
            .epsilon(1e-14));
  CHECK_THROWS_AS(partial_convolution_bound(0.5, 2.0, 0.0), PreconditionError);
}

TEST_CASE("alternating-bands advantage bound") {
  CHECK(bands_advantage_bound(0, 1.0 / kPi, 0.0) ==
        doctest::Approx(1.0 / (4.0 * kPi * kPi * kPi)).epsilon(1e-15));
  // Reference from 25-digit arithmetic.
  CHECK(bands_advantage_bound(0, 0.1, 0.005) ==
        doctest::Approx(0.0024110637283096496923).epsilon(1e-14));
  CHECK(bands_advantage_bound(2, 0.1, 0.0) ==
        doctest::Approx(0.1 * std::exp(-0.04) / (4.0 * kPi * kPi))
            .epsilon(1e-14));
  CHECK_THROWS_AS(bands_advantage_bound(0, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bands_advantage_bound(0, 0.0, 0.0), std::invalid_argument);

  // Monotone decreasing in both k and sigma for fixed T.
  for (double T : {0.05, 0.1, 1.0 / kPi}) {
    for (int k = 0; k < 4; ++k)
      CHECK(bands_advantage_bound(k + 1, T, 0.01) <
            bands_advantage_bound(k, T, 0.01));
    for (double s : {0.0, 0.01, 0.02, 0.04})
      CHECK(bands_advantage_bound(0, T, s + 0.005) <
            bands_advantage_bound(0, T, s));
  }
}

TEST_CASE("centering right-hand side") {
  CHECK(centering_rhs(1.0, 0.0, 0.0) == 0.0);
  CHECK(centering_rhs(1.0, 0.0, 2.0) ==
        doctest::Approx(0.53807950691276841914).epsilon(1e-12));
  // Far-phase case against a 25-digit reference of the left-hand side.
  CHECK(std::abs(centering_rhs(0.5, 2.0 * kPi, 1.0) -
                 6.1829604508006164106e-11) <= 1e-12);
  CHECK_THROWS_AS(centering_rhs(0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(centering_rhs(-1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("intermediate convolution bound undercuts the true integral") {
  CHECK(intermediate_conv_bound(0.5, 0.0, 2.0) ==
        doctest::Approx(0.53807950691276841914).epsilon(1e-12));

  auto lhs = [](double a, double alpha, double omega) {
    const double hi = alpha + 10.0 / std::sqrt(2.0 * a);
    return oracle::quad_bounded(
               [a, omega](double t) {
                 return std::exp(-a * t * t) * std::sin(omega * t);
               },
               alpha, hi, 1e-12, 100000, kPi / (2.0 * omega))
        .value;
  };
  CHECK(intermediate_conv_bound(0.5, 0.0, 0.1) <= lhs(0.5, 0.0, 0.1));
  CHECK(intermediate_conv_bound(0.5, kPi, 2.0) <= lhs(0.5, kPi, 2.0));
  CHECK(intermediate_conv_bound(0.5, kPi, 2.0) > 0.0);
  CHECK_THROWS_AS(intermediate_conv_bound(0.5, 1.0, 2.0), PreconditionError);
}

TEST_CASE("tail bound closed forms") {
  CHECK(subgaussian_tail_bound(0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(subgaussian_tail_bound(1.0, 1.0) ==
        doctest::Approx(std::exp(-1.0) / (2.0 + std::sqrt(2.0)))
            .epsilon(1e-15));
  // Extreme tail: the true integral (25-digit reference) still dominates.
  CHECK(subgaussian_tail_bound(1.0, 10.0) ==
        doctest::Approx(std::exp(-100.0) / (20.0 + std::sqrt(2.0)))
            .epsilon(1e-14));
  CHECK(1.8519376603684155464e-45 > subgaussian_tail_bound(1.0, 10.0));
  CHECK_THROWS_AS(subgaussian_tail_bound(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("inverse tail bound and its domain threshold") {
  CHECK(inverse_subgaussian_bound(1.0, 1.0) ==
        doctest::Approx(std::exp(1.0) / 3.0).epsilon(1e-15));
  CHECK(inverse_subgaussian_bound(1.0, 2.0) ==
        doctest::Approx(std::exp(4.0) / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(inverse_subgaussian_bound(4.0, 0.4), PreconditionError);
}

TEST_CASE("smoothed square wave series and truncation accounting") {
  // sigma = 0 routes to the exact band indicator.
  const auto hard = smoothed_square_wave(0.3, 2.0, 0.0);
  CHECK(hard.value == 1.0);
  CHECK(hard.truncation_bound == 0.0);
  CHECK(hard.terms == 0);
  CHECK(smoothed_square_wave(2.0, 2.0, 0.0).value == -1.0);

  const auto series = smoothed_square_wave(0.77, 2.0, 0.05);
  const auto wrapped =
      oracle::wrapped_half_band_probability(0.77, kPi, 0.05);
  CHECK(std::abs(series.value - (2.0 * wrapped.value - 1.0)) <=
        1e-10 + series.truncation_bound);
  CHECK(series.terms > 1);
  CHECK(series.truncation_bound < 1e-11);

  FourierTruncation tight{1e-12, 3};
  const auto capped = smoothed_square_wave(0.77, 2.0, 0.05, tight);
  CHECK(capped.terms <= 3);
  CHECK(capped.truncation_bound > 1e-12);

  CHECK_THROWS_AS(smoothed_square_wave(0.1, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("smoothed square wave matches a Monte Carlo of the expectation") {
  const double t = 0.4, omega = 5.0, sigma = 0.08;
  const auto series = smoothed_square_wave(t, omega, sigma);
  auto sample = [&](NormalSampler& gen) {
    return static_cast<double>(
        reduction::band_indicator(t + sigma * gen.next(), 2.0 * kPi / omega));
  };
  const auto mc = oracle::mc_expectation(sample, -1.0, 1.0, 2'000'000, 33);
  CHECK(std::abs(mc.value - series.value) <=
        3.0 * mc.half_width + series.truncation_bound);
}
