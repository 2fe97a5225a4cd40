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

#ifndef CLWE_CLOSED_FORM_HPP_
#define CLWE_CLOSED_FORM_HPP_

#include <complex>
#include <cstdint>

namespace clwe::closedform {

// All lower-bound operations return the bound value only; certifying the
// inequality against a reference integral is the experiment module's job.

// Partial sum (4/pi) sum_{k=1..K} sin((2k-1)t) / (2k-1) of the square-wave
// Fourier series.
double square_wave_partial_sum(double t, int terms);

// E[e^{i omega z}] for z ~ N(mu, sigma^2): exp(i mu omega - sigma^2 omega^2/2).
std::complex<double> gaussian_characteristic(double mu, double sigma,
                                             double omega);

// E[sin(omega z)] for z ~ N(mu, sigma^2): sin(mu omega) e^{-sigma^2 omega^2/2}.
double subgaussian_sine_transform(double mu, double sigma, double omega);

// e^{-alpha^2} / (4 omega). Requires omega >= 2 and the phase condition
// alpha*omega = 2k*pi (residual checked to 1e-9 absolute); the stated
// equality only holds as a lower bound, which is how it is certified.
double partial_gaussian_ft_bound(double alpha, double omega);

// e^{-alpha^2 - sigma^2 omega^2 / 2} / (pi omega). Same phase condition;
// alpha = 0 is accepted as the k = 0 phase case.
double partial_convolution_bound(double alpha, double omega, double sigma);

// T e^{-k^2 T^2 - 2 pi^2 sigma^2 / T^2} / (4 pi^2), the planted-advantage
// lower bound on the alternating-band joint probability. Requires
// T in (0, 1/pi].
double bands_advantage_bound(int k, double T, double sigma);

// Right-hand side of the partial sub-Gaussian FT centering identity:
// (e^{-a alpha^2 - omega^2/4a} / sqrt(a)) * int_0^{omega/2sqrt(a)}
// e^{t^2} cos(2 alpha sqrt(a) t) dt, the inner integral by bounded-interval
// quadrature.
double centering_rhs(double a, double alpha, double omega);

// (e^{-2a alpha^2 - omega^2/8a} / sqrt(2a)) * int_0^{omega/2sqrt(2a)} e^{t^2} dt,
// under the phase condition alpha*omega = 2k*pi.
double intermediate_conv_bound(double a, double alpha, double omega);

// e^{-a alpha^2} / (2 a alpha + sqrt(2a)), lower bound on int_alpha^inf
// e^{-a t^2} dt.
double subgaussian_tail_bound(double a, double alpha);

// e^{a beta^2} / (3 a beta), lower bound on int_0^beta e^{t^2 a} dt for
// beta >= sqrt(1/a).
double inverse_subgaussian_bound(double a, double beta);

// Truncation policy for the damped square-wave series: stop when the next
// term's magnitude bound 4/(pi(2k-1)) e^{-sigma^2 omega^2 (2k-1)^2/2} falls
// below tolerance, or at max_terms.
struct FourierTruncation {
  double tolerance = 1e-12;
  std::int64_t max_terms = 1000000;
};

struct SeriesValue {
  double value = 0.0;
  double truncation_bound = 0.0;  // certified bound on the dropped tail
  std::int64_t terms = 0;
};

// E_{z~N(0,sigma^2)}[sgn(sin(omega (z+t)))] via the damped Fourier series
// (4/pi) sum sin(omega(2k-1)t) e^{-sigma^2 omega^2 (2k-1)^2/2} / (2k-1).
// The undamped sigma = 0 case is routed to the exact band indicator.
SeriesValue smoothed_square_wave(double t, double omega, double sigma,
                                 const FourierTruncation& truncation = {});

}  // namespace clwe::closedform

#endif  // CLWE_CLOSED_FORM_HPP_
