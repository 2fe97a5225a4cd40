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

#ifndef CLWE_COMMON_HPP_
#define CLWE_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace clwe {

inline constexpr double kPi = 3.14159265358979323846;

// A stated precondition (phase condition, domain threshold) does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A conditional estimator has an empty conditioning event.
class DegenerateConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A reference computation could not reach its accuracy target. Carries the
// best estimate so callers can report it instead of silently passing.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate,
                double error_estimate)
      : std::runtime_error(what),
        best_estimate(best_estimate),
        error_estimate(error_estimate) {}

  double best_estimate;
  double error_estimate;
};

}  // namespace clwe

#endif  // CLWE_COMMON_HPP_
