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

#include "clwe/common.hpp"
#include "clwe/oracle.hpp"
#include "clwe/reduction.hpp"

namespace clwe::closedform {

namespace {

constexpr double kPhaseTolerance = 1e-9;

// Residual of alpha*omega against the nearest multiple of 2*pi. The phase
// condition is checked on this absolute residual because alpha = 2k*pi/omega
// is itself constructed in floating point.
void check_phase(double alpha, double omega, const char* op) {
  const double product = alpha * omega;
  const double residual = product - 2.0 * kPi * std::round(product / (2.0 * kPi));
  if (std::abs(residual) > kPhaseTolerance) {
    throw PreconditionError(std::string(op) +
                            ": alpha*omega must be a multiple of 2*pi "
                            "(residual " +
                            std::to_string(residual) + ")");
  }
}

}  // namespace

double square_wave_partial_sum(double t, int terms) {
  if (terms < 1)
    throw std::invalid_argument("square_wave_partial_sum: terms must be >= 1");
  double sum = 0.0;
  for (int k = 1; k <= terms; ++k) {
    const double n = 2.0 * k - 1.0;
    sum += std::sin(n * t) / n;
  }
  return 4.0 / kPi * sum;
}

std::complex<double> gaussian_characteristic(double mu, double sigma,
                                             double omega) {
  if (!(sigma >= 0.0))
    throw std::invalid_argument("gaussian_characteristic: sigma must be >= 0");
  const double damping = std::exp(-0.5 * sigma * sigma * omega * omega);
  return {damping * std::cos(mu * omega), damping * std::sin(mu * omega)};
}

double subgaussian_sine_transform(double mu, double sigma, double omega) {
  if (!(sigma >= 0.0))
    throw std::invalid_argument("subgaussian_sine_transform: sigma >= 0");
  return std::sin(mu * omega) * std::exp(-0.5 * sigma * sigma * omega * omega);
}

double partial_gaussian_ft_bound(double alpha, double omega) {
  if (!(alpha >= 0.0))
    throw std::invalid_argument("partial_gaussian_ft_bound: alpha must be >= 0");
  if (!(omega >= 2.0))
    throw std::invalid_argument("partial_gaussian_ft_bound: omega must be >= 2");
  check_phase(alpha, omega, "partial_gaussian_ft_bound");
  return std::exp(-alpha * alpha) / (4.0 * omega);
}

double partial_convolution_bound(double alpha, double omega, double sigma) {
  if (!(alpha >= 0.0))
    throw std::invalid_argument("partial_convolution_bound: alpha must be >= 0");
  if (!(omega >= 2.0))
    throw std::invalid_argument("partial_convolution_bound: omega must be >= 2");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("partial_convolution_bound: sigma must be >= 0");
  check_phase(alpha, omega, "partial_convolution_bound");
  return std::exp(-alpha * alpha - 0.5 * sigma * sigma * omega * omega) /
         (kPi * omega);
}

double bands_advantage_bound(int k, double T, double sigma) {
  if (k < 0) throw std::invalid_argument("bands_advantage_bound: k must be >= 0");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("bands_advantage_bound: sigma must be >= 0");
  if (!(T > 0.0) || T > (1.0 / kPi) * (1.0 + 1e-9))
    throw std::invalid_argument(
        "bands_advantage_bound: T must lie in (0, 1/pi]");
  const double kT = static_cast<double>(k) * T;
  return T * std::exp(-kT * kT - 2.0 * kPi * kPi * sigma * sigma / (T * T)) /
         (4.0 * kPi * kPi);
}

double centering_rhs(double a, double alpha, double omega) {
  if (!(a > 0.0)) throw std::invalid_argument("centering_rhs: a must be > 0");
  if (!(alpha >= 0.0))
    throw std::invalid_argument("centering_rhs: alpha must be >= 0");
  const double upper = omega / (2.0 * std::sqrt(a));
  if (upper == 0.0) return 0.0;
  const double lo = std::min(0.0, upper);
  const double hi = std::max(0.0, upper);
  const double freq = 2.0 * alpha * std::sqrt(a);
  auto f = [freq](double t) { return std::exp(t * t) * std::cos(freq * t); };
  // The inner integrand peaks at e^{upper^2}; the prefactor cancels that
  // growth, so a tolerance relative to the peak keeps the product accurate
  // to ~1e-12 absolute.
  const double tol = 1e-12 * std::max(1.0, std::exp(upper * upper));
  double width = hi - lo;
  if (freq != 0.0) width = std::min(width, kPi / (2.0 * freq));
  auto inner =
      oracle::quad_bounded(f, lo, hi, tol, 100000, width, "centering_rhs");
  const double sign = upper > 0.0 ? 1.0 : -1.0;
  return sign * std::exp(-a * alpha * alpha - omega * omega / (4.0 * a)) /
         std::sqrt(a) * inner.value;
}

double intermediate_conv_bound(double a, double alpha, double omega) {
  if (!(a > 0.0))
    throw std::invalid_argument("intermediate_conv_bound: a must be > 0");
  if (!(alpha >= 0.0))
    throw std::invalid_argument("intermediate_conv_bound: alpha must be >= 0");
  check_phase(alpha, omega, "intermediate_conv_bound");
  const double upper = omega / (2.0 * std::sqrt(2.0 * a));
  if (upper == 0.0) return 0.0;
  const double lo = std::min(0.0, upper);
  const double hi = std::max(0.0, upper);
  auto f = [](double t) { return std::exp(t * t); };
  const double tol = 1e-12 * std::max(1.0, std::exp(upper * upper));
  auto inner = oracle::quad_bounded(f, lo, hi, tol, 100000, 0.0,
                                    "intermediate_conv_bound");
  const double sign = upper > 0.0 ? 1.0 : -1.0;
  return sign *
         std::exp(-2.0 * a * alpha * alpha - omega * omega / (8.0 * a)) /
         std::sqrt(2.0 * a) * inner.value;
}

double subgaussian_tail_bound(double a, double alpha) {
  if (!(a > 0.0))
    throw std::invalid_argument("subgaussian_tail_bound: a must be > 0");
  if (!(alpha >= 0.0))
    throw std::invalid_argument("subgaussian_tail_bound: alpha must be >= 0");
  return std::exp(-a * alpha * alpha) /
         (2.0 * a * alpha + std::sqrt(2.0 * a));
}

double inverse_subgaussian_bound(double a, double beta) {
  if (!(a > 0.0))
    throw std::invalid_argument("inverse_subgaussian_bound: a must be > 0");
  if (!(beta > 0.0) || beta * beta * a < 1.0 - 1e-12) {
    throw PreconditionError(
        "inverse_subgaussian_bound: beta must be >= sqrt(1/a), got beta = " +
        std::to_string(beta));
  }
  return std::exp(a * beta * beta) / (3.0 * a * beta);
}

SeriesValue smoothed_square_wave(double t, double omega, double sigma,
                                 const FourierTruncation& truncation) {
  if (!(omega > 0.0))
    throw std::invalid_argument("smoothed_square_wave: omega must be > 0");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("smoothed_square_wave: sigma must be >= 0");
  if (!(truncation.tolerance > 0.0) || truncation.max_terms < 1)
    throw std::invalid_argument("smoothed_square_wave: bad truncation policy");

  if (sigma == 0.0) {
    // Undamped case: the series target is the square wave itself.
    const double period = 2.0 * kPi / omega;
    return {static_cast<double>(reduction::band_indicator(t, period)), 0.0, 0};
  }

  const double c = 0.5 * sigma * sigma * omega * omega;
  double sum = 0.0;
  std::int64_t k = 1;
  double next_bound = 0.0;
  for (;; ++k) {
    const double n = 2.0 * static_cast<double>(k) - 1.0;
    const double damp = std::exp(-c * n * n);
    const double term_bound = 4.0 / (kPi * n) * damp;
    if (term_bound < truncation.tolerance || k > truncation.max_terms) {
      next_bound = term_bound;
      break;
    }
    sum += 4.0 / (kPi * n) * damp * std::sin(n * omega * t);
  }
  // Remaining terms shrink at least geometrically: the bound ratio between
  // consecutive odd harmonics n, n+2 is below e^{-4cn}. c > 0 here, so the
  // ratio is strictly below 1.
  const double n_next = 2.0 * static_cast<double>(k) - 1.0;
  const double ratio = std::exp(-4.0 * c * n_next);
  return {sum, next_bound / (1.0 - ratio), k - 1};
}

}  // namespace clwe::closedform
