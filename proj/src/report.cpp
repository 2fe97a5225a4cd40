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

#include "clwe/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace clwe::report {

namespace {

using experiment::BoundReport;
using experiment::DistinguisherResult;
using experiment::ScanRow;

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// Key-value parameters joined as "k=v;..." so they fit in one CSV cell.
std::string parameters_cell(const BoundReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    if (i) out += ';';
    out += r.parameters[i].first + "=" + format_double(r.parameters[i].second);
  }
  return out;
}

std::string json_parameters(const BoundReport& r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    if (i) out += ",";
    out += quote(r.parameters[i].first) + ":" +
           format_double(r.parameters[i].second);
  }
  out += "}";
  return out;
}

std::string estimate_json(const EstimateWithCI& e) {
  return "{\"value\":" + format_double(e.value) +
         ",\"halfWidth\":" + format_double(e.half_width) +
         ",\"n\":" + std::to_string(e.n) +
         ",\"confidence\":" + format_double(e.confidence) + "}";
}

std::string result_json(const DistinguisherResult& r) {
  return "{\"hypothesis\":" + quote(experiment::hypothesis_name(r.hypothesis)) +
         ",\"metric\":" + quote(r.metric) +
         ",\"estimate\":" + estimate_json(r.estimate) +
         ",\"theoreticalBound\":" + format_double(r.theoretical_bound) +
         ",\"baseline\":" + format_double(r.baseline) +
         ",\"decisionThreshold\":" + format_double(r.decision_threshold) +
         ",\"decision\":" + quote(experiment::hypothesis_name(r.decision)) +
         ",\"d\":" + std::to_string(r.d) + ",\"m\":" + std::to_string(r.m) +
         ",\"period\":" + format_double(r.period) +
         ",\"sigma\":" + format_double(r.sigma) +
         ",\"seed\":" + std::to_string(r.seed) + "}";
}

const char* result_csv_header() {
  return "hypothesis,metric,value,halfWidth,n,confidence,theoreticalBound,"
         "baseline,decisionThreshold,decision,d,m,period,sigma,seed";
}

std::string result_csv_row(const DistinguisherResult& r) {
  return experiment::hypothesis_name(r.hypothesis) + "," + r.metric + "," +
         format_double(r.estimate.value) + "," +
         format_double(r.estimate.half_width) + "," +
         std::to_string(r.estimate.n) + "," +
         format_double(r.estimate.confidence) + "," +
         format_double(r.theoretical_bound) + "," +
         format_double(r.baseline) + "," +
         format_double(r.decision_threshold) + "," +
         experiment::hypothesis_name(r.decision) + "," + std::to_string(r.d) +
         "," + std::to_string(r.m) + "," + format_double(r.period) + "," +
         format_double(r.sigma) + "," + std::to_string(r.seed);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render(const std::vector<BoundReport>& reports, Format format) {
  std::string out;
  if (format == Format::kCsv) {
    out = "lemma,parameters,oracleValue,boundValue,margin,verdict\n";
    for (const auto& r : reports) {
      out += r.label + "," + parameters_cell(r) + "," +
             format_double(r.oracle_value) + "," +
             format_double(r.bound_value) + "," + format_double(r.margin) +
             "," + experiment::verdict_name(r.verdict) + "\n";
    }
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (i) out += ",";
    out += "\n{\"lemma\":" + quote(r.label) +
           ",\"parameters\":" + json_parameters(r) +
           ",\"oracleValue\":" + format_double(r.oracle_value) +
           ",\"boundValue\":" + format_double(r.bound_value) +
           ",\"errorBudget\":" + format_double(r.error_budget) +
           ",\"margin\":" + format_double(r.margin) +
           ",\"verdict\":" + quote(experiment::verdict_name(r.verdict)) + "}";
  }
  out += "\n]\n";
  return out;
}

std::string render(const std::vector<DistinguisherResult>& results,
                   Format format) {
  std::string out;
  if (format == Format::kCsv) {
    out = std::string(result_csv_header()) + "\n";
    for (const auto& r : results) out += result_csv_row(r) + "\n";
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i) out += ",";
    out += "\n" + result_json(results[i]);
  }
  out += "\n]\n";
  return out;
}

std::string render(const std::vector<ScanRow>& rows, Format format) {
  std::string out;
  if (format == Format::kCsv) {
    out = std::string("eta,d,m,problem,status,error,") + result_csv_header() +
          "\n";
    for (const auto& r : rows) {
      out += format_double(r.eta) + "," + std::to_string(r.d) + "," +
             std::to_string(r.m) + "," + r.problem + "," +
             (r.ok ? "ok" : "error") + "," + r.error + ",";
      if (r.ok) {
        out += result_csv_row(r.result);
      } else {
        out += experiment::hypothesis_name(r.result.hypothesis);
        out += ",,,,,,,,,,,,,,";
      }
      out += "\n";
    }
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i) out += ",";
    out += "\n{\"eta\":" + format_double(r.eta) +
           ",\"d\":" + std::to_string(r.d) + ",\"m\":" + std::to_string(r.m) +
           ",\"problem\":" + quote(r.problem) +
           ",\"status\":" + quote(r.ok ? "ok" : "error") +
           ",\"error\":" + quote(r.error);
    if (r.ok) out += ",\"result\":" + result_json(r.result);
    out += "}";
  }
  out += "\n]\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace clwe::report
