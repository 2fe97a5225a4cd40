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

#ifndef CLWE_ORACLE_HPP_
#define CLWE_ORACLE_HPP_

#include <cstdint>
#include <string>

#include "clwe/common.hpp"
#include "clwe/metrics.hpp"
#include "clwe/parallel.hpp"
#include "clwe/quadrature.hpp"
#include "clwe/rng.hpp"
#include "clwe/types.hpp"

namespace clwe::oracle {

// Accuracy contract for a reference computation. Every result carries an
// explicit error bound combining the quadrature error estimate with Gaussian
// tail mass beyond the truncation radius; inequality verdicts downstream
// require margins larger than this bound.
struct QuadratureSpec {
  double abs_tolerance = 1e-11;
  double truncation_radius = 10.0;  // in standard-deviation units
  std::size_t max_subdivisions = 200000;
};

struct OracleValue {
  double value = 0.0;
  double error_bound = 0.0;
};

// Upper tail P[g >= t] of the standard normal, evaluated as erfc(t/sqrt(2))/2.
// The C library erfc is a rational-approximation implementation; the tests
// pin it against 20-digit references to 1e-14 relative for |t| <= 8.
double normal_tail(double t);

// P_z[mod_period(t + z) in [lo, hi)] for z ~ N(0, sigma^2), as a lattice sum
// of normal_tail differences over shifts j*period, truncated once the shift
// exceeds tail_radius standard deviations. For sigma = 0 this is the exact
// indicator of mod_reduce(t, period).
OracleValue wrapped_interval_probability(double t, double period, double lo,
                                         double hi, double sigma,
                                         double tail_radius = 10.0);

// Shorthand for the lower half-band [0, period/2).
OracleValue wrapped_half_band_probability(double t, double period,
                                          double sigma,
                                          double tail_radius = 10.0);

// Integral of sin(omega z) phi(z) over [alpha, infinity), by adaptive
// quadrature on [alpha, alpha + truncation_radius] plus a certified tail
// bound. Throws AccuracyError if the subdivision budget is exhausted.
OracleValue quad_sine_gaussian(double alpha, double omega,
                               const QuadratureSpec& spec = {});

// Integral of sin(omega z) against the N(mu, sigma^2) density over the whole
// line (the smoothed-sine reference used by the identity checks).
OracleValue quad_sine_gaussian_general(double mu, double sigma, double omega,
                                       const QuadratureSpec& spec = {});

// Integral over [alpha, infinity) of E_z[f(omega (z+t))] phi(t) dt, where f
// is the unit square wave sgn(sin(.)). For sigma = 0 the integrand is exactly
// the alternating band indicator and the value is an exact series of
// normal_tail differences; for sigma > 0 the inner expectation is evaluated
// pointwise from the wrapped-Gaussian lattice sum and integrated adaptively.
OracleValue quad_partial_convolution(double alpha, double omega, double sigma,
                                     const QuadratureSpec& spec = {});

// P[<u,x> + z in S_T and <u,x> >= k T] for the alternating half-open band
// union S_T. sigma = 0 uses the exact tail-difference series; sigma > 0 the
// nested wrapped-Gaussian quadrature. band_sum_series / band_sum_quadrature
// expose the two routes for cross-checks.
OracleValue band_sum_probability(int k, double T, double sigma,
                                 const QuadratureSpec& spec = {});
OracleValue band_sum_series(int k, double T, const QuadratureSpec& spec = {});
OracleValue band_sum_quadrature(int k, double T, double sigma,
                                const QuadratureSpec& spec = {});

// Bounded-interval adaptive quadrature with the oracle's failure contract.
template <class F>
OracleValue quad_bounded(F&& f, double a, double b, double abs_tol,
                         std::size_t max_subdivisions,
                         double max_initial_width = 0.0,
                         const char* label = "quad_bounded") {
  auto r = adaptive_gk15(f, a, b, abs_tol, max_subdivisions,
                         max_initial_width);
  if (!r.converged) {
    throw AccuracyError(std::string(label) +
                            ": quadrature failed to reach tolerance",
                        r.value, r.error_estimate);
  }
  return {r.value, r.error_estimate};
}

// Same contract with caller-provided initial panel boundaries (used to pin
// band transitions to panel edges, where the error estimator is reliable).
template <class F>
OracleValue quad_bounded_cuts(F&& f, const std::vector<double>& cuts,
                              double abs_tol, std::size_t max_subdivisions,
                              const char* label = "quad_bounded") {
  auto r = adaptive_gk15_cuts(f, cuts, abs_tol, max_subdivisions);
  if (!r.converged) {
    throw AccuracyError(std::string(label) +
                            ": quadrature failed to reach tolerance",
                        r.value, r.error_estimate);
  }
  return {r.value, r.error_estimate};
}

// Seeded Monte Carlo mean of fn over its declared range [range_lo, range_hi]
// (Hoeffding needs boundedness). fn draws from the provided per-chunk
// generator; chunks have fixed size, so estimates are identical for any
// worker count.
template <class Fn>
EstimateWithCI mc_expectation(Fn&& fn, double range_lo, double range_hi,
                              std::uint64_t n, std::uint64_t seed,
                              double confidence = 0.95, int threads = 1) {
  if (n < 1) throw std::invalid_argument("mc_expectation: n must be >= 1");
  if (!std::isfinite(range_lo) || !std::isfinite(range_hi) ||
      !(range_hi >= range_lo)) {
    throw std::invalid_argument(
        "mc_expectation: declared range must be bounded");
  }
  constexpr std::uint64_t kChunk = 1u << 16;
  const std::size_t chunks = static_cast<std::size_t>((n + kChunk - 1) / kChunk);
  std::vector<double> partial(chunks, 0.0);
  parallel_for_index(chunks, threads, [&](std::size_t c) {
    NormalSampler gen(derive_seed(seed, c));
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t count = std::min(kChunk, n - begin);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) acc += fn(gen);
    partial[c] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  const double width = (range_hi - range_lo) *
                       metrics::hoeffding_half_width(n, confidence);
  return {total / static_cast<double>(n), width, static_cast<std::size_t>(n),
          confidence};
}

}  // namespace clwe::oracle

#endif  // CLWE_ORACLE_HPP_
