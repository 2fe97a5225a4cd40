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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clwe/experiment.hpp"
#include "clwe/metrics.hpp"
#include "clwe/parallel.hpp"
#include "clwe/reduction.hpp"
#include "clwe/report.hpp"
#include "clwe/rng.hpp"
#include "clwe/sample_io.hpp"
#include "clwe/sampler.hpp"

namespace {

struct GlobalFlags {
  std::uint64_t seed = 0;
  int threads = 1;
  double confidence = 0.95;
  std::string out;
  std::string format = "csv";
};

void add_global_flags(CLI::App* cmd, GlobalFlags* g) {
  cmd->add_option("--seed", g->seed, "Root seed");
  cmd->add_option("--threads", g->threads, "Worker count (content-neutral)");
  cmd->add_option("--confidence", g->confidence, "Confidence level");
  cmd->add_option("--out", g->out, "Output path (default stdout)");
  cmd->add_option("--format", g->format, "Report format: csv or json");
}

void write_or_print(const GlobalFlags& g, const std::string& content) {
  if (g.out.empty()) {
    std::cout << content;
  } else {
    clwe::report::write_file(g.out, content);
  }
}

std::vector<double> load_vector_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open vector file: " + path);
  nlohmann::json j;
  f >> j;
  return j.get<std::vector<double>>();
}

struct EvalInput {
  clwe::BinaryExampleSet examples;
  double period = 0.0;
  std::string path;
};

EvalInput load_eval_input(const std::string& path) {
  EvalInput input;
  input.path = path;
  const auto kind = clwe::io::read_file_kind(path);
  if (kind == "LWEB1") {
    auto loaded = clwe::io::read_example_file(path);
    input.examples = std::move(loaded.set);
    input.period = loaded.period;
  } else {
    auto loaded = clwe::io::read_sample_file(path);
    input.period = loaded.period;
    input.examples = clwe::reduction::binarize(loaded.set, loaded.period);
  }
  return input;
}

int run_gen(const GlobalFlags& g, std::size_t d, std::size_t m, double sigma,
            double period, std::uint64_t q, const std::string& kind,
            const std::string& hypothesis, bool store_secret,
            const std::string& out) {
  using namespace clwe;
  if (out.empty()) throw std::runtime_error("gen: --out is required");
  const bool discrete = kind == "discrete";
  const bool alternative = hypothesis == "alternative";

  Hypothesis hyp = Hypothesis::Null();
  const std::uint64_t secret_seed = derive_seed(g.seed, sampler::kStreamSecret);
  const std::uint64_t sample_root = derive_seed(g.seed, sampler::kStreamSamples);
  if (alternative) {
    hyp = Hypothesis::Alternative(
        discrete ? sampler::draw_discrete_secret(d, q, secret_seed)
                 : sampler::draw_secret(d, secret_seed));
  }

  const double file_period = discrete ? static_cast<double>(q) : period;
  io::SampleFileWriter writer(out, {d, m, file_period});
  const std::size_t chunks = sampler::chunk_count(m);
  ContinuousLweParams cparams{d, m, sigma, period};
  DiscreteLweParams dparams{d, m, q, sigma};
  parallel_chunks_ordered<sampler::SampleChunk>(
      chunks, g.threads, 2 * static_cast<std::size_t>(g.threads) + 2,
      [&](std::size_t c) {
        sampler::SampleChunk chunk;
        if (discrete) {
          sampler::generate_discrete_chunk(dparams, hyp, sample_root, c, chunk);
        } else {
          sampler::generate_continuous_chunk(cparams, hyp, sample_root, c,
                                             chunk);
        }
        return chunk;
      },
      [&](std::size_t, sampler::SampleChunk&& chunk) {
        writer.append(chunk.xs, chunk.y_prime);
      });
  writer.finish();

  io::SampleFileMeta meta;
  meta.kind = discrete ? "discrete" : "continuous";
  meta.hypothesis = alternative ? "alternative" : "null";
  meta.d = d;
  meta.m = m;
  meta.sigma = sigma;
  meta.period = file_period;
  meta.seed = g.seed;
  if (store_secret && alternative) {
    meta.has_secret = true;
    meta.secret = hyp.secret;
  }
  io::write_sidecar(out, meta);
  return 0;
}

int run_eval(const GlobalFlags& g, const std::string& input_path,
             const std::string& u_spec, const std::string& metric, int k) {
  using namespace clwe;
  auto input = load_eval_input(input_path);

  std::vector<double> u;
  if (u_spec == "secret") {
    const auto meta = io::read_sidecar(input_path);
    if (!meta.has_secret)
      throw std::runtime_error(
          "eval: sidecar has no stored secret (generate with --store-secret)");
    u = meta.secret;
  } else {
    u = load_vector_file(u_spec);
  }

  EstimateWithCI est;
  if (metric == "agreement") {
    est = metrics::empirical_agreement(input.examples, u, g.confidence);
  } else if (metric == "reliable") {
    est = metrics::empirical_positive_reliable(input.examples, u,
                                               g.confidence);
  } else if (metric == "unfairness") {
    est = metrics::empirical_unfairness(input.examples, u, g.confidence);
  } else if (metric == "band") {
    est = metrics::empirical_band_joint(input.examples, u, k, input.period,
                                        g.confidence);
  } else {
    throw std::runtime_error("eval: unknown metric " + metric);
  }

  std::string json = "{\"metric\":\"" + metric +
                     "\",\"value\":" + report::format_double(est.value) +
                     ",\"halfWidth\":" + report::format_double(est.half_width) +
                     ",\"n\":" + std::to_string(est.n) +
                     ",\"confidence\":" + report::format_double(est.confidence);
  if (metric == "band") json += ",\"k\":" + std::to_string(k);
  json += "}\n";
  write_or_print(g, json);
  return 0;
}

clwe::experiment::ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  f >> j;
  clwe::experiment::ExperimentConfig config;
  if (j.contains("d")) config.d = j.at("d").get<std::size_t>();
  if (j.contains("eta")) config.eta = j.at("eta").get<double>();
  if (j.contains("kappa")) config.kappa = j.at("kappa").get<int>();
  if (j.contains("Cprime")) config.c_prime = j.at("Cprime").get<double>();
  if (j.contains("m")) config.m = j.at("m").get<std::size_t>();
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("confidence"))
    config.confidence = j.at("confidence").get<double>();
  return config;
}

clwe::experiment::Problem parse_problem(const std::string& name) {
  using clwe::experiment::Problem;
  if (name == "agnostic") return Problem::kAgnostic;
  if (name == "reliable") return Problem::kReliable;
  if (name == "fairness") return Problem::kFairness;
  throw std::runtime_error("unknown problem: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "clwe-lab: continuous-LWE sampling, halfspace reduction, and "
      "advantage-bound verification"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an LWE sample file");
  GlobalFlags gen_flags;
  add_global_flags(gen, &gen_flags);
  std::size_t gen_d = 4, gen_m = 1000;
  double gen_sigma = 0.0, gen_period = 1.0;
  std::uint64_t gen_q = 16;
  std::string gen_kind = "continuous", gen_hyp = "null", gen_out_pos;
  bool gen_store_secret = false;
  gen->add_option("--d", gen_d, "Dimension");
  gen->add_option("--m", gen_m, "Sample count");
  gen->add_option("--sigma", gen_sigma, "Noise standard deviation");
  gen->add_option("--period,-T", gen_period, "Modulus period (continuous)");
  gen->add_option("--q", gen_q, "Modulus (discrete)");
  gen->add_option("--kind", gen_kind, "continuous or discrete")
      ->check(CLI::IsMember({"continuous", "discrete"}));
  gen->add_option("--hypothesis", gen_hyp, "alternative or null")
      ->check(CLI::IsMember({"alternative", "null"}));
  gen->add_flag("--store-secret", gen_store_secret,
                "Record the secret in the JSON sidecar");

  // reduce
  auto* reduce = app.add_subcommand(
      "reduce", "Binarize a sample file into a halfspace-example file");
  GlobalFlags reduce_flags;
  add_global_flags(reduce, &reduce_flags);
  std::string reduce_in;
  std::size_t reduce_block = clwe::reduction::kDefaultBlockRows;
  reduce->add_option("--input", reduce_in, "Sampler file")->required();
  reduce->add_option("--block-size", reduce_block, "Streaming block rows");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a metric on a file");
  GlobalFlags eval_flags;
  add_global_flags(eval, &eval_flags);
  std::string eval_in, eval_u = "secret", eval_metric = "agreement";
  int eval_k = 0;
  eval->add_option("--input", eval_in, "Sample or example file")->required();
  eval->add_option("--u", eval_u,
                   "Direction: 'secret' (from sidecar) or a JSON vector file");
  eval->add_option("--metric", eval_metric,
                   "agreement | reliable | unfairness | band")
      ->check(CLI::IsMember({"agreement", "reliable", "unfairness", "band"}));
  eval->add_option("--k", eval_k, "Band index for --metric band");

  // verify-lemmas
  auto* verify = app.add_subcommand(
      "verify-lemmas", "Certify every closed-form bound and identity grid");
  GlobalFlags verify_flags;
  add_global_flags(verify, &verify_flags);
  double verify_tol = 1e-11;
  verify->add_option("--tolerance", verify_tol,
                     "Base quadrature tolerance for the oracle");

  // experiment
  auto* exp = app.add_subcommand(
      "experiment", "Run the distinguisher pipeline or a grid scan");
  GlobalFlags exp_flags;
  add_global_flags(exp, &exp_flags);
  std::string exp_config_path, exp_problem = "reliable", exp_hyp = "both";
  std::size_t exp_d = 100, exp_m = 0;
  double exp_eta = 200.0, exp_cprime = 0.0;
  int exp_kappa = 1;
  std::vector<double> exp_grid_eta;
  std::vector<std::size_t> exp_grid_d, exp_grid_m;
  exp->add_option("--config", exp_config_path,
                  "JSON config mirroring ExperimentConfig fields");
  exp->add_option("--problem", exp_problem, "agnostic | reliable | fairness")
      ->check(CLI::IsMember({"agnostic", "reliable", "fairness"}));
  exp->add_option("--hypothesis", exp_hyp, "alternative | null | both")
      ->check(CLI::IsMember({"alternative", "null", "both"}));
  exp->add_option("--d", exp_d, "Dimension");
  exp->add_option("--eta", exp_eta, "Hardness parameter");
  exp->add_option("--kappa", exp_kappa, "Noise exponent: sigma = eta^-kappa");
  exp->add_option("--cprime", exp_cprime,
                  "Period constant (0 = smallest keeping T <= 1/pi)");
  exp->add_option("--m", exp_m, "Sample count (0 = Hoeffding default)");
  exp->add_option("--grid-eta", exp_grid_eta, "Grid values for eta")
      ->delimiter(',');
  exp->add_option("--grid-d", exp_grid_d, "Grid values for d")->delimiter(',');
  exp->add_option("--grid-m", exp_grid_m, "Grid values for m")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return run_gen(gen_flags, gen_d, gen_m, gen_sigma, gen_period, gen_q,
                     gen_kind, gen_hyp, gen_store_secret, gen_flags.out);
    }
    if (reduce->parsed()) {
      const std::string out =
          reduce_flags.out.empty() ? reduce_in : reduce_flags.out;
      clwe::io::reduce_file(reduce_in, out, reduce_block);
      // Carry the sidecar along so eval --u secret keeps working.
      const auto sidecar = clwe::io::sidecar_path(reduce_in);
      if (out != reduce_in && std::filesystem::exists(sidecar)) {
        std::filesystem::copy_file(
            sidecar, clwe::io::sidecar_path(out),
            std::filesystem::copy_options::overwrite_existing);
      }
      return 0;
    }
    if (eval->parsed()) {
      return run_eval(eval_flags, eval_in, eval_u, eval_metric, eval_k);
    }
    if (verify->parsed()) {
      clwe::oracle::QuadratureSpec spec;
      spec.abs_tolerance = verify_tol;
      const auto reports = clwe::experiment::verify_lemma_suite(spec);
      write_or_print(verify_flags,
                     clwe::report::render(
                         reports, clwe::report::parse_format(verify_flags.format)));
      return clwe::experiment::all_pass(reports) ? 0 : 1;
    }
    if (exp->parsed()) {
      using namespace clwe::experiment;
      ExperimentConfig config;
      if (!exp_config_path.empty()) {
        config = load_config(exp_config_path);
      } else {
        config.d = exp_d;
        config.eta = exp_eta;
        config.kappa = exp_kappa;
        config.c_prime = exp_cprime;
        config.m = exp_m;
      }
      if (exp->count("--seed") || exp_config_path.empty())
        config.seed = exp_flags.seed;
      if (exp->count("--confidence") || exp_config_path.empty())
        config.confidence = exp_flags.confidence;
      config.threads = exp_flags.threads;
      const Problem problem = parse_problem(exp_problem);
      const auto format = clwe::report::parse_format(exp_flags.format);

      bool ok = true;
      std::string rendered;
      if (!exp_grid_eta.empty() || !exp_grid_d.empty() ||
          !exp_grid_m.empty()) {
        GridSpec grid{exp_grid_eta, exp_grid_d, exp_grid_m};
        const auto rows = scan_grid(config, grid, problem);
        for (const auto& row : rows)
          ok = ok && row.ok && row.result.decision == row.result.hypothesis;
        rendered = clwe::report::render(rows, format);
      } else {
        std::vector<DistinguisherResult> results;
        std::vector<clwe::HypothesisKind> hyps;
        if (exp_hyp == "alternative" || exp_hyp == "both")
          hyps.push_back(clwe::HypothesisKind::kAlternative);
        if (exp_hyp == "null" || exp_hyp == "both")
          hyps.push_back(clwe::HypothesisKind::kNull);
        for (auto hyp : hyps) {
          results.push_back(run_distinguisher(config, problem, hyp));
          ok = ok && results.back().decision == hyp;
        }
        rendered = clwe::report::render(results, format);
      }
      write_or_print(exp_flags, rendered);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
