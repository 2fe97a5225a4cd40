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

#ifndef CLWE_REPORT_HPP_
#define CLWE_REPORT_HPP_

#include <string>
#include <vector>

#include "clwe/experiment.hpp"

namespace clwe::report {

enum class Format { kCsv, kJson };

Format parse_format(const std::string& name);

// 17 significant digits, '.' decimal separator; reports are byte-identical
// for identical inputs.
std::string format_double(double v);

std::string render(const std::vector<experiment::BoundReport>& reports,
                   Format format);
std::string render(const std::vector<experiment::DistinguisherResult>& results,
                   Format format);
std::string render(const std::vector<experiment::ScanRow>& rows,
                   Format format);

// Writes `content` to `path`; throws std::runtime_error naming the path on
// failure.
void write_file(const std::string& path, const std::string& content);

template <class T>
void emit_report(const std::vector<T>& results, Format format,
                 const std::string& path) {
  write_file(path, render(results, format));
}

}  // namespace clwe::report

#endif  // CLWE_REPORT_HPP_
