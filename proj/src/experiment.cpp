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

#include "clwe/experiment.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "clwe/closed_form.hpp"
#include "clwe/common.hpp"
#include "clwe/parallel.hpp"
#include "clwe/reduction.hpp"
#include "clwe/rng.hpp"
#include "clwe/sampler.hpp"

namespace clwe::experiment {

namespace {

using sampler::kStreamSamples;
using sampler::kStreamSecret;

double phi(double t) {
  return std::exp(-0.5 * t * t) * 0.39894228040143267794;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

// Lowers the quadrature target toward a fraction of the expected result
// magnitude, so inequality margins at extreme grid points (values down at
// e^{-alpha^2} scale) stay above the certified budget.
oracle::QuadratureSpec scale_spec(const oracle::QuadratureSpec& base,
                                  double magnitude) {
  oracle::QuadratureSpec spec = base;
  spec.abs_tolerance =
      std::min(base.abs_tolerance, std::max(0.01 * magnitude, 1e-250));
  return spec;
}

}  // namespace

double ExperimentConfig::effective_c_prime() const {
  if (c_prime > 0.0) return c_prime;
  return kPi / std::sqrt(eta * std::log(static_cast<double>(d)));
}

double ExperimentConfig::derived_period() const {
  return 1.0 /
         (effective_c_prime() * std::sqrt(eta * std::log(static_cast<double>(d))));
}

double ExperimentConfig::derived_sigma() const {
  return std::pow(eta, -static_cast<double>(kappa));
}

bool ExperimentConfig::in_hardness_regime() const {
  const double dd = static_cast<double>(d);
  return eta >= std::log(dd) && eta <= dd;
}

void ExperimentConfig::validate() const {
  if (d < 2) throw std::invalid_argument("ExperimentConfig: d must be >= 2");
  if (!(eta > 0.0)) throw std::invalid_argument("ExperimentConfig: eta > 0");
  if (kappa < 1) throw std::invalid_argument("ExperimentConfig: kappa >= 1");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("ExperimentConfig: confidence in (0,1)");
  if (threads < 1) throw std::invalid_argument("ExperimentConfig: threads >= 1");
  if (c_prime < 0.0)
    throw std::invalid_argument("ExperimentConfig: Cprime must be positive");
  const double T = derived_period();
  if (!(T > 0.0) || T > (1.0 / kPi) * (1.0 + 1e-9))
    throw std::invalid_argument(
        "ExperimentConfig: derived T must lie in (0, 1/pi]; increase Cprime");
  const double sigma = derived_sigma();
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("ExperimentConfig: derived sigma degenerate");
}

std::string problem_name(Problem p) {
  switch (p) {
    case Problem::kAgnostic: return "agnostic";
    case Problem::kReliable: return "reliable";
    case Problem::kFairness: return "fairness";
  }
  return "unknown";
}

std::string hypothesis_name(HypothesisKind k) {
  return k == HypothesisKind::kAlternative ? "alternative" : "null";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kAccuracyFailure: return "accuracy-failure";
  }
  return "unknown";
}

PipelineEvaluation evaluate_pipeline(const ContinuousLweParams& params,
                                     HypothesisKind hypothesis,
                                     std::uint64_t seed, double confidence,
                                     int threads) {
  params.validate();
  PipelineEvaluation out;
  out.hypothesis = hypothesis;

  Hypothesis hyp = Hypothesis::Null();
  if (hypothesis == HypothesisKind::kAlternative) {
    hyp = Hypothesis::Alternative(
        sampler::draw_secret(params.d, derive_seed(seed, kStreamSecret)));
    out.direction = hyp.secret;
  } else {
    out.direction.assign(params.d, 0.0);
    out.direction[0] = 1.0;
  }

  const std::uint64_t sample_root = derive_seed(seed, kStreamSamples);
  const std::size_t chunks = sampler::chunk_count(params.m);
  std::vector<metrics::MetricCounts> partial(chunks);
  parallel_for_index(chunks, threads, [&](std::size_t c) {
    sampler::SampleChunk chunk;
    sampler::generate_continuous_chunk(params, hyp, sample_root, c, chunk);
    std::vector<std::int8_t> labels(chunk.rows);
    reduction::binarize_span(chunk.y_prime, params.period, labels,
                             c * sampler::kChunkRows);
    metrics::MetricCounts counts;
    for (std::size_t i = 0; i < chunk.rows; ++i)
      counts.add(sampler::dot(chunk.x_row(i), out.direction), labels[i]);
    partial[c] = counts;
  });
  for (const auto& p : partial) out.counts += p;

  out.agreement = metrics::agreement_from(out.counts, confidence);
  out.reliable = metrics::positive_reliable_from(out.counts, confidence);
  out.unfairness = metrics::unfairness_from(out.counts, confidence);
  out.band_joint0 = {ratio(out.counts.joint_nonneg, out.counts.n),
                     metrics::hoeffding_half_width(out.counts.n, confidence),
                     out.counts.n, confidence};
  return out;
}

DistinguisherResult run_distinguisher(const ExperimentConfig& config,
                                      Problem problem,
                                      HypothesisKind hypothesis) {
  config.validate();
  const double T = config.derived_period();
  const double sigma = config.derived_sigma();
  const double bands = closedform::bands_advantage_bound(0, T, sigma);

  double bound = 0.0;
  double baseline = 0.0;
  switch (problem) {
    case Problem::kReliable:
    case Problem::kAgnostic:
      bound = 2.0 * bands;  // conditional/two-sided advantage
      baseline = 0.5;
      break;
    case Problem::kFairness:
      bound = bands;
      baseline = 0.0;
      break;
  }

  const std::size_t m =
      config.m > 0 ? config.m
                   : metrics::hoeffding_sample_size(bound / 6.0,
                                                    config.confidence);
  ContinuousLweParams params{config.d, m, sigma, T};
  const auto eval = evaluate_pipeline(params, hypothesis, config.seed,
                                      config.confidence, config.threads);

  DistinguisherResult r;
  r.hypothesis = hypothesis;
  switch (problem) {
    case Problem::kReliable:
      r.metric = "reliable";
      r.estimate = eval.reliable;
      break;
    case Problem::kAgnostic:
      r.metric = "agreement";
      r.estimate = eval.agreement;
      break;
    case Problem::kFairness:
      r.metric = "unfairness";
      r.estimate = eval.unfairness;
      break;
  }
  r.theoretical_bound = bound;
  r.baseline = baseline;
  r.decision_threshold = baseline + bound / 3.0;  // epsilon1 = epsilon2 = bound/3
  r.decision = (r.estimate.value - r.decision_threshold >
                config.decision_margin_scale * r.estimate.half_width)
                   ? HypothesisKind::kAlternative
                   : HypothesisKind::kNull;
  r.d = config.d;
  r.m = m;
  r.period = T;
  r.sigma = sigma;
  r.seed = config.seed;
  return r;
}

namespace {

using Params = std::vector<std::pair<std::string, double>>;

BoundReport inequality_report(std::string label, Params params,
                              const oracle::OracleValue& o, double bound) {
  BoundReport r;
  r.label = std::move(label);
  r.parameters = std::move(params);
  r.oracle_value = o.value;
  r.bound_value = bound;
  r.error_budget = o.error_bound;
  r.margin = o.value - bound;
  r.verdict = r.margin > r.error_budget ? Verdict::kPass : Verdict::kFail;
  return r;
}

BoundReport identity_report(std::string label, Params params, double oracle,
                            double oracle_budget, double closed,
                            double tolerance) {
  BoundReport r;
  r.label = std::move(label);
  r.parameters = std::move(params);
  r.oracle_value = oracle;
  r.bound_value = closed;
  r.error_budget = oracle_budget;
  r.margin = tolerance - std::abs(oracle - closed);
  r.verdict = r.margin > r.error_budget ? Verdict::kPass : Verdict::kFail;
  return r;
}

BoundReport failure_report(std::string label, Params params,
                           const AccuracyError& err, double bound) {
  BoundReport r;
  r.label = std::move(label);
  r.parameters = std::move(params);
  r.oracle_value = err.best_estimate;
  r.bound_value = bound;
  r.error_budget = err.error_estimate;
  r.margin = err.best_estimate - bound;
  r.verdict = Verdict::kAccuracyFailure;
  return r;
}

// int_X^inf e^{-a t^2} dt = sqrt(pi/a) * normal_tail(X sqrt(2a)).
double gaussian_kernel_tail(double a, double x) {
  return std::sqrt(kPi / a) * oracle::normal_tail(x * std::sqrt(2.0 * a));
}

}  // namespace

std::vector<BoundReport> verify_lemma_suite(const oracle::QuadratureSpec& spec) {
  std::vector<BoundReport> reports;

  // Smoothed-sine identity: closed form sin(mu w) e^{-s^2 w^2/2} against
  // direct quadrature of the Gaussian expectation.
  for (double mu : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    for (double s : {0.01, 0.1, 0.5, 1.0, 2.0}) {
      for (double w : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        Params p{{"mu", mu}, {"sigma", s}, {"omega", w}};
        const double closed = closedform::subgaussian_sine_transform(mu, s, w);
        try {
          const auto o = oracle::quad_sine_gaussian_general(mu, s, w, spec);
          reports.push_back(identity_report("smoothed-sine-identity", p,
                                            o.value, o.error_bound, closed,
                                            1e-8));
        } catch (const AccuracyError& e) {
          reports.push_back(failure_report("smoothed-sine-identity", p, e,
                                           closed));
        }
      }
    }
  }

  // Partial Gaussian sine-transform lower bound e^{-a^2}/(4w) on the phase
  // grid a = 2k pi / w.
  for (double w : {2.0, 4.0, 8.0}) {
    for (int k = 0; k <= 3; ++k) {
      const double alpha = 2.0 * kPi * k / w;
      Params p{{"alpha", alpha}, {"omega", w}};
      const double bound = closedform::partial_gaussian_ft_bound(alpha, w);
      try {
        const auto o = oracle::quad_sine_gaussian(
            alpha, w, scale_spec(spec, phi(alpha) / w));
        reports.push_back(
            inequality_report("partial-sine-transform-bound", p, o, bound));
      } catch (const AccuracyError& e) {
        reports.push_back(
            failure_report("partial-sine-transform-bound", p, e, bound));
      }
    }
  }

  // Partial square-wave convolution lower bound e^{-a^2 - s^2w^2/2}/(pi w).
  for (double w : {2.0, 4.0, 8.0}) {
    for (int k = 0; k <= 3; ++k) {
      for (double s : {0.0, 0.01, 0.05}) {
        const double alpha = 2.0 * kPi * k / w;
        Params p{{"alpha", alpha}, {"omega", w}, {"sigma", s}};
        const double bound = closedform::partial_convolution_bound(alpha, w, s);
        const double scale =
            phi(alpha) * std::exp(-0.5 * s * s * w * w) / w;
        try {
          const auto o = oracle::quad_partial_convolution(
              alpha, w, s, scale_spec(spec, scale));
          reports.push_back(
              inequality_report("partial-convolution-bound", p, o, bound));
        } catch (const AccuracyError& e) {
          reports.push_back(
              failure_report("partial-convolution-bound", p, e, bound));
        }
      }
    }
  }

  // Alternating-bands advantage: band mass above k T beats half the tail by
  // at least T e^{-k^2T^2 - 2pi^2 s^2/T^2}/(4 pi^2).
  for (double T : {0.05, 0.1, 1.0 / kPi}) {
    for (double frac : {0.0, 0.1, 0.25}) {
      for (int k = 0; k <= 2; ++k) {
        const double s = frac * T;
        Params p{{"k", static_cast<double>(k)}, {"T", T}, {"sigma", s}};
        const double bound = closedform::bands_advantage_bound(k, T, s);
        try {
          const auto o = oracle::band_sum_probability(k, T, s, spec);
          oracle::OracleValue adv{
              o.value - 0.5 * oracle::normal_tail(k * T),
              o.error_bound + DBL_EPSILON};
          reports.push_back(
              inequality_report("noisy-bands-advantage", p, adv, bound));
        } catch (const AccuracyError& e) {
          reports.push_back(
              failure_report("noisy-bands-advantage", p, e, bound));
        }
      }
    }
  }

  // Centering identity: the partial sine transform of e^{-a t^2} equals its
  // bounded-interval reformulation.
  for (double a : {0.5, 1.0, 2.0}) {
    for (double alpha : {0.0, 1.0, 2.0}) {
      for (double w : {1.0, 2.0, 4.0}) {
        Params p{{"a", a}, {"alpha", alpha}, {"omega", w}};
        const double rhs = closedform::centering_rhs(a, alpha, w);
        const double hi = alpha + 10.0 / std::sqrt(2.0 * a);
        auto f = [a, w](double t) {
          return std::exp(-a * t * t) * std::sin(w * t);
        };
        try {
          const auto lhs = oracle::quad_bounded(
              f, alpha, hi, spec.abs_tolerance, spec.max_subdivisions,
              kPi / (2.0 * w), "centering-lhs");
          const double budget = lhs.error_bound +
                                gaussian_kernel_tail(a, hi) +
                                1e-11;  // allowance for the RHS inner quad
          reports.push_back(identity_report("centering-identity", p,
                                            lhs.value, budget, rhs, 1e-8));
        } catch (const AccuracyError& e) {
          reports.push_back(failure_report("centering-identity", p, e, rhs));
        }
      }
    }
  }

  // Gaussian-kernel tail lower bound e^{-a x^2}/(2 a x + sqrt(2a)).
  for (double a : {0.5, 1.0, 2.0}) {
    for (double alpha : {0.0, 1.0, 3.0, 10.0}) {
      Params p{{"a", a}, {"alpha", alpha}};
      const double bound = closedform::subgaussian_tail_bound(a, alpha);
      const double hi = alpha + 10.0 / std::sqrt(2.0 * a);
      auto f = [a](double t) { return std::exp(-a * t * t); };
      try {
        auto o = oracle::quad_bounded(
            f, alpha, hi, scale_spec(spec, bound).abs_tolerance,
            spec.max_subdivisions, (hi - alpha) / 8.0, "kernel-tail");
        o.error_bound += gaussian_kernel_tail(a, hi);
        reports.push_back(
            inequality_report("gaussian-kernel-tail-bound", p, o, bound));
      } catch (const AccuracyError& e) {
        reports.push_back(
            failure_report("gaussian-kernel-tail-bound", p, e, bound));
      }
    }
  }

  // Growing-exponential body lower bound e^{a b^2}/(3 a b) for b >= 1/sqrt(a).
  {
    const std::pair<double, double> points[] = {
        {1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0},          {2.0, 1.0},
        {2.0, 2.0}, {0.5, std::sqrt(2.0)}, {0.5, 2.5}};
    for (const auto& [a, beta] : points) {
      Params p{{"a", a}, {"beta", beta}};
      const double bound = closedform::inverse_subgaussian_bound(a, beta);
      auto f = [a](double t) { return std::exp(a * t * t); };
      const double tol = 1e-9 * std::max(1.0, std::exp(a * beta * beta));
      try {
        const auto o = oracle::quad_bounded(f, 0.0, beta, tol,
                                            spec.max_subdivisions, 0.0,
                                            "exp-growth-body");
        reports.push_back(
            inequality_report("exp-growth-body-bound", p, o, bound));
      } catch (const AccuracyError& e) {
        reports.push_back(
            failure_report("exp-growth-body-bound", p, e, bound));
      }
    }
  }

  // Damped square-wave series against the wrapped-Gaussian evaluation of the
  // same expectation.
  for (double w : {2.0, 2.0 * kPi / 0.1}) {
    for (double sw : {0.1, 0.5}) {
      for (double t : {0.13, 0.77, 1.9}) {
        const double s = sw / w;
        Params p{{"t", t}, {"omega", w}, {"sigma", s}};
        const auto series = closedform::smoothed_square_wave(t, w, s);
        const auto half = oracle::wrapped_half_band_probability(
            t, 2.0 * kPi / w, s, spec.truncation_radius);
        const double oracle_value = 2.0 * half.value - 1.0;
        const double budget = 2.0 * half.error_bound + series.truncation_bound;
        reports.push_back(identity_report("smoothed-square-wave-series", p,
                                          oracle_value, budget, series.value,
                                          1e-9));
      }
    }
  }

  return reports;
}

bool all_pass(const std::vector<BoundReport>& reports) {
  for (const auto& r : reports)
    if (r.verdict != Verdict::kPass) return false;
  return true;
}

std::vector<ScanRow> scan_grid(const ExperimentConfig& base,
                               const GridSpec& grid, Problem problem) {
  if (grid.etas.empty() && grid.ds.empty() && grid.ms.empty()) return {};
  const std::vector<double> etas = grid.etas.empty()
                                       ? std::vector<double>{base.eta}
                                       : grid.etas;
  const std::vector<std::size_t> ds =
      grid.ds.empty() ? std::vector<std::size_t>{base.d} : grid.ds;
  const std::vector<std::size_t> ms =
      grid.ms.empty() ? std::vector<std::size_t>{base.m} : grid.ms;

  std::vector<ScanRow> rows;
  for (double eta : etas) {
    for (std::size_t d : ds) {
      for (std::size_t m : ms) {
        for (HypothesisKind hyp :
             {HypothesisKind::kAlternative, HypothesisKind::kNull}) {
          ScanRow row;
          row.eta = eta;
          row.d = d;
          row.m = m;
          row.problem = problem_name(problem);
          ExperimentConfig config = base;
          config.eta = eta;
          config.d = d;
          config.m = m;
          try {
            row.result = run_distinguisher(config, problem, hyp);
            row.ok = true;
          } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.result.hypothesis = hyp;
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace clwe::experiment
