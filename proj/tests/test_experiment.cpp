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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "clwe/closed_form.hpp"
#include "clwe/report.hpp"

using namespace clwe;
using namespace clwe::experiment;

namespace {

ExperimentConfig criterion_config(std::uint64_t seed) {
  ExperimentConfig config;
  config.d = 100;
  config.eta = 200.0;
  config.kappa = 1;
  config.c_prime = 1.0 / (0.1 * std::sqrt(200.0 * std::log(100.0)));
  config.m = 200000;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("config derives the hardness-style parameters") {
  const auto config = criterion_config(1);
  CHECK(config.derived_period() == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(config.derived_sigma() == 0.005);
  CHECK_FALSE(config.in_hardness_regime());  // eta = 200 exceeds the d = 100 cap
}

TEST_CASE("regime window is reported, not enforced") {
  ExperimentConfig config;
  config.d = 100;
  config.eta = 200.0;  // above the c*d window
  CHECK_FALSE(config.in_hardness_regime());
  config.eta = 50.0;
  CHECK(config.in_hardness_regime());
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("default Cprime is the smallest keeping T at 1/pi") {
  ExperimentConfig config;
  config.d = 64;
  config.eta = 30.0;
  CHECK(config.c_prime == 0.0);
  CHECK(config.derived_period() ==
        doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("config validation rejects out-of-domain parameters") {
  ExperimentConfig config;
  config.d = 1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.d = 100;
  config.eta = -1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.eta = 200.0;
  config.kappa = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.kappa = 1;
  config.c_prime = 0.01;  // T = 1/(0.01 sqrt(...)) >> 1/pi
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("pipeline evaluation is deterministic across worker counts") {
  ContinuousLweParams params{10, 120000, 0.005, 0.1};
  const auto one =
      evaluate_pipeline(params, HypothesisKind::kAlternative, 42, 0.95, 1);
  const auto four =
      evaluate_pipeline(params, HypothesisKind::kAlternative, 42, 0.95, 4);
  CHECK(one.counts.joint_nonneg == four.counts.joint_nonneg);
  CHECK(one.counts.side_pos == four.counts.side_pos);
  CHECK(one.agreement.value == four.agreement.value);
  CHECK(one.direction == four.direction);
}

TEST_CASE("distinguisher wiring: thresholds, metrics and decisions") {
  const auto config = criterion_config(9);
  const double bands = closedform::bands_advantage_bound(
      0, config.derived_period(), config.derived_sigma());

  const auto alt =
      run_distinguisher(config, Problem::kReliable, HypothesisKind::kAlternative);
  CHECK(alt.metric == "reliable");
  CHECK(alt.theoretical_bound == doctest::Approx(2.0 * bands).epsilon(1e-12));
  CHECK(alt.baseline == 0.5);
  CHECK(alt.decision_threshold ==
        doctest::Approx(0.5 + 2.0 * bands / 3.0).epsilon(1e-12));
  CHECK(alt.m == config.m);
  CHECK(alt.estimate.n < config.m);  // conditional count

  const auto fair =
      run_distinguisher(config, Problem::kFairness, HypothesisKind::kNull);
  CHECK(fair.metric == "unfairness");
  CHECK(fair.baseline == 0.0);
  CHECK(fair.theoretical_bound == doctest::Approx(bands).epsilon(1e-12));

  const auto agn =
      run_distinguisher(config, Problem::kAgnostic, HypothesisKind::kAlternative);
  CHECK(agn.metric == "agreement");
  CHECK(agn.estimate.n == config.m);
}

TEST_CASE("decisions separate the hypotheses once adequately powered") {
  // The bound/3 threshold needs the estimate noise well below bound/3; at
  // m = 2e6 the null noise sits 3-4 sigma under it for every problem.
  ExperimentConfig config = criterion_config(31);
  config.d = 8;
  config.m = 2'000'000;
  for (Problem problem :
       {Problem::kReliable, Problem::kAgnostic, Problem::kFairness}) {
    const auto alt =
        run_distinguisher(config, problem, HypothesisKind::kAlternative);
    CHECK(alt.decision == HypothesisKind::kAlternative);
    const auto null =
        run_distinguisher(config, problem, HypothesisKind::kNull);
    CHECK(null.decision == HypothesisKind::kNull);
  }
}

TEST_CASE("default m comes from the Hoeffding power rule") {
  auto config = criterion_config(3);
  config.m = 0;
  const double bands = closedform::bands_advantage_bound(
      0, config.derived_period(), config.derived_sigma());
  const std::size_t expected =
      metrics::hoeffding_sample_size(2.0 * bands / 6.0, config.confidence);
  // Probe via the result record without paying for the full default run:
  // expected is about 2.9e6 at these parameters, so just check the value.
  CHECK(expected == metrics::hoeffding_sample_size(
                        run_distinguisher(criterion_config(3),
                                          Problem::kReliable,
                                          HypothesisKind::kNull)
                                .theoretical_bound /
                            6.0,
                        config.confidence));
}

TEST_CASE("agnostic agreement decomposes into twice the band joint") {
  ContinuousLweParams params{8, 400000, 0.005, 0.1};
  const auto eval =
      evaluate_pipeline(params, HypothesisKind::kAlternative, 2026, 0.95, 1);
  const double combined =
      eval.agreement.half_width + 2.0 * eval.band_joint0.half_width;
  CHECK(std::abs(eval.agreement.value - 2.0 * eval.band_joint0.value) <=
        3.0 * combined);
}

TEST_CASE("fairness bridge holds on planted data") {
  ContinuousLweParams params{8, 400000, 0.005, 0.1};
  const auto eval =
      evaluate_pipeline(params, HypothesisKind::kAlternative, 4096, 0.95, 1);
  CHECK(std::abs(2.0 * eval.unfairness.value -
                 std::abs(0.5 - eval.reliable.value)) <=
        6.0 * (eval.unfairness.half_width + eval.reliable.half_width));
}

TEST_CASE("lemma suite composition and verdicts") {
  const auto reports = verify_lemma_suite();
  CHECK(all_pass(reports));

  std::size_t sine_identity = 0, partial_sine = 0, convolution = 0, bands = 0,
              centering = 0, kernel_tail = 0, growth = 0, series = 0;
  for (const auto& r : reports) {
    if (r.label == "smoothed-sine-identity") ++sine_identity;
    if (r.label == "partial-sine-transform-bound") ++partial_sine;
    if (r.label == "partial-convolution-bound") ++convolution;
    if (r.label == "noisy-bands-advantage") ++bands;
    if (r.label == "centering-identity") ++centering;
    if (r.label == "gaussian-kernel-tail-bound") ++kernel_tail;
    if (r.label == "exp-growth-body-bound") ++growth;
    if (r.label == "smoothed-square-wave-series") ++series;
  }
  CHECK(sine_identity == 125);
  CHECK(partial_sine == 12);
  CHECK(convolution == 36);
  CHECK(bands == 27);
  CHECK(centering == 27);
  CHECK(kernel_tail == 12);
  CHECK(growth == 7);
  CHECK(series == 12);
  CHECK(reports.size() ==
        sine_identity + partial_sine + convolution + bands + centering +
            kernel_tail + growth + series);

  // Margins must clear their budgets strictly, never by tolerance fudging.
  for (const auto& r : reports) {
    REQUIRE(r.verdict == Verdict::kPass);
    REQUIRE(r.margin > r.error_budget);
  }
}

TEST_CASE("scan grid layout, consistency and per-point failures") {
  auto base = criterion_config(5);
  base.m = 60000;

  SUBCASE("empty grid produces an empty table") {
    const auto rows = scan_grid(base, GridSpec{}, Problem::kReliable);
    CHECK(rows.empty());
    CHECK(report::render(rows, report::Format::kCsv).find("eta,d,m") == 0);
  }

  SUBCASE("single point equals run_distinguisher") {
    GridSpec grid;
    grid.etas = {base.eta};
    const auto rows = scan_grid(base, grid, Problem::kReliable);
    REQUIRE(rows.size() == 2);
    const auto direct =
        run_distinguisher(base, Problem::kReliable, HypothesisKind::kAlternative);
    CHECK(rows[0].ok);
    CHECK(rows[0].result.estimate.value == direct.estimate.value);
    CHECK(rows[1].result.hypothesis == HypothesisKind::kNull);
  }

  SUBCASE("bound column tracks the closed form per point") {
    GridSpec grid;
    grid.etas = {100.0, 200.0, 400.0};
    const auto rows = scan_grid(base, grid, Problem::kFairness);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
      REQUIRE(row.ok);
      ExperimentConfig config = base;
      config.eta = row.eta;
      CHECK(row.result.theoretical_bound ==
            doctest::Approx(closedform::bands_advantage_bound(
                                0, config.derived_period(),
                                config.derived_sigma()))
                .epsilon(1e-12));
    }
  }

  SUBCASE("failures are recorded in-row and the scan continues") {
    GridSpec grid;
    grid.etas = {-5.0, base.eta};
    const auto rows = scan_grid(base, grid, Problem::kReliable);
    REQUIRE(rows.size() == 4);
    CHECK_FALSE(rows[0].ok);
    CHECK(!rows[0].error.empty());
    CHECK(rows[2].ok);
  }
}

TEST_CASE("reports render deterministically in declared field order") {
  const auto config = criterion_config(8);
  std::vector<DistinguisherResult> results{
      run_distinguisher(config, Problem::kReliable, HypothesisKind::kNull)};

  const auto csv = report::render(results, report::Format::kCsv);
  CHECK(csv.find("hypothesis,metric,value") == 0);
  CHECK(report::render(results, report::Format::kCsv) == csv);

  const auto json = report::render(results, report::Format::kJson);
  CHECK(json.rfind("[\n{\"hypothesis\":", 0) == 0);
  CHECK(json.find("\"metric\":") < json.find("\"estimate\":"));
  CHECK(json.find("\"estimate\":") < json.find("\"decision\":"));

  CHECK(report::render(std::vector<DistinguisherResult>{},
                       report::Format::kCsv) ==
        std::string("hypothesis,metric,value,halfWidth,n,confidence,"
                    "theoreticalBound,baseline,decisionThreshold,decision,d,"
                    "m,period,sigma,seed\n"));

  const std::string path_a = "report_a.tmp.json";
  const std::string path_b = "report_b.tmp.json";
  report::emit_report(results, report::Format::kJson, path_a);
  report::emit_report(results, report::Format::kJson, path_b);
  std::ifstream fa(path_a, std::ios::binary), fb(path_b, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(sa.str() == json);
  std::remove(path_a.c_str());
  std::remove(path_b.c_str());
}

TEST_CASE("17-digit float formatting is stable") {
  CHECK(report::format_double(0.1) == "0.10000000000000001");
  CHECK(report::format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(report::format_double(2.0) == "2");
}
