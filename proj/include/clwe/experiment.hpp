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

#ifndef CLWE_EXPERIMENT_HPP_
#define CLWE_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "clwe/metrics.hpp"
#include "clwe/oracle.hpp"
#include "clwe/types.hpp"

namespace clwe::experiment {

// Hardness-style parameterization: T = 1/(Cprime sqrt(eta ln d)) and
// sigma = eta^{-kappa}. The regime window log^gamma d <= eta <= c d is
// reported by in_hardness_regime(), never enforced.
struct ExperimentConfig {
  std::size_t d = 100;
  double eta = 200.0;
  int kappa = 1;
  double c_prime = 0.0;  // 0 selects the smallest value keeping T <= 1/pi
  std::size_t m = 0;     // 0 selects hoeffding_sample_size(bound/6, confidence)
  std::uint64_t seed = 0;
  double confidence = 0.95;
  int threads = 1;
  // Decision rule: alternative iff estimate - threshold exceeds this many
  // half-widths (0 = plain threshold comparison).
  double decision_margin_scale = 0.0;

  double effective_c_prime() const;
  double derived_period() const;  // T
  double derived_sigma() const;
  bool in_hardness_regime() const;  // ln d <= eta <= d
  void validate() const;
};

enum class Problem { kAgnostic, kReliable, kFairness };

std::string problem_name(Problem p);
std::string hypothesis_name(HypothesisKind k);

// Every estimator evaluated on one pass over the pipeline stream
// sample_continuous -> binarize -> metrics at direction u (the planted secret
// under the alternative, e1 under the null).
struct PipelineEvaluation {
  HypothesisKind hypothesis = HypothesisKind::kNull;
  metrics::MetricCounts counts;
  EstimateWithCI agreement;
  EstimateWithCI reliable;
  EstimateWithCI unfairness;
  EstimateWithCI band_joint0;
  std::vector<double> direction;
};

PipelineEvaluation evaluate_pipeline(const ContinuousLweParams& params,
                                     HypothesisKind hypothesis,
                                     std::uint64_t seed, double confidence,
                                     int threads = 1);

struct DistinguisherResult {
  HypothesisKind hypothesis = HypothesisKind::kNull;
  std::string metric;
  EstimateWithCI estimate;
  double theoretical_bound = 0.0;  // advantage bound over the baseline
  double baseline = 0.0;
  double decision_threshold = 0.0;
  HypothesisKind decision = HypothesisKind::kNull;
  // Derived instance parameters, recorded for reports.
  std::size_t d = 0;
  std::size_t m = 0;
  double period = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// Full pipeline with derived (T, sigma); evaluates the problem's metric at
// the planted secret (alternative) or at e1 (null) and applies the
// epsilon1 = epsilon2 = bound/3 threshold rule.
DistinguisherResult run_distinguisher(const ExperimentConfig& config,
                                      Problem problem,
                                      HypothesisKind hypothesis);

// Lemma-verification suite. Identity rows report margin = tolerance - |diff|,
// inequality rows margin = oracle - bound; a row passes iff its margin
// exceeds the reported error budget. Oracle accuracy failures become their
// own verdict kind.
enum class Verdict { kPass, kFail, kAccuracyFailure };

std::string verdict_name(Verdict v);

struct BoundReport {
  std::string label;
  std::vector<std::pair<std::string, double>> parameters;
  double oracle_value = 0.0;
  double bound_value = 0.0;
  double error_budget = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::kFail;
};

std::vector<BoundReport> verify_lemma_suite(
    const oracle::QuadratureSpec& spec = {});

bool all_pass(const std::vector<BoundReport>& reports);

// Grid scan over (eta, d, m); every point runs both hypotheses. Per-point
// failures are recorded in-row and the scan continues.
struct GridSpec {
  std::vector<double> etas;
  std::vector<std::size_t> ds;
  std::vector<std::size_t> ms;
};

struct ScanRow {
  double eta = 0.0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::string problem;
  bool ok = false;
  std::string error;
  DistinguisherResult result;
};

std::vector<ScanRow> scan_grid(const ExperimentConfig& base,
                               const GridSpec& grid, Problem problem);

}  // namespace clwe::experiment

#endif  // CLWE_EXPERIMENT_HPP_
