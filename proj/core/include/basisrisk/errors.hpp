// Copyright 2026 The basisrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BASISRISK_ERRORS_HPP_
#define BASISRISK_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace basisrisk {

// Input data cannot support the requested estimate (empty sample, trigger
// with no observations on one side, constant ranks, ...).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class NumericDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// V1 / V2 traces are not monotone, typically because the utility is not
// concave on the wealth support.
class MonotonicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rank-1 reconstruction of a conditional expectile surface failed.
class SeparabilityError : public std::runtime_error {
 public:
  SeparabilityError(const std::string& what, double residual,
                    std::vector<std::vector<double>> residual_map)
      : std::runtime_error(what),
        residual_(residual),
        residual_map_(std::move(residual_map)) {}

  double residual() const noexcept { return residual_; }
  // Rows follow the index knots, columns the level grid.
  const std::vector<std::vector<double>>& residual_map() const noexcept {
    return residual_map_;
  }

 private:
  double residual_;
  std::vector<std::vector<double>> residual_map_;
};

}  // namespace basisrisk

#endif  // BASISRISK_ERRORS_HPP_
