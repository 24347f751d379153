// causal_filter/distribution.hpp
//
// Copyright 2026 The causal-filter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAUSAL_FILTER_DISTRIBUTION_HPP
#define CAUSAL_FILTER_DISTRIBUTION_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace causal_filter {

// A probability distribution over an indexed finite support.
//
// The constructor accepts masses whose sum is within kNormalizationTol of 1,
// rescales them to sum to exactly 1, and keeps the original residual (sum
// minus one) for diagnostics.  Producers working from counts must divide by
// the total before constructing.
class DiscreteDistribution {
 public:
  static constexpr double kNormalizationTol = 1e-9;

  explicit DiscreteDistribution(std::vector<double> masses)
      : masses_(std::move(masses)) {
    if (masses_.empty())
      throw std::invalid_argument("DiscreteDistribution: empty support");
    double sum = 0.0;
    for (double m : masses_) {
      if (!(m >= 0.0))
        throw std::invalid_argument(
            "DiscreteDistribution: negative or NaN mass " + std::to_string(m));
      sum += m;
    }
    residual_ = sum - 1.0;
    if (std::abs(residual_) > kNormalizationTol)
      throw std::invalid_argument(
          "DiscreteDistribution: masses sum to " + std::to_string(sum));
    for (double& m : masses_) m /= sum;
  }

  static DiscreteDistribution uniform(std::size_t size) {
    return DiscreteDistribution(
        std::vector<double>(size, 1.0 / static_cast<double>(size)));
  }

  static DiscreteDistribution point_mass(std::size_t size, std::size_t index) {
    std::vector<double> m(size, 0.0);
    m.at(index) = 1.0;
    return DiscreteDistribution(std::move(m));
  }

  // Normalizes an arbitrary nonnegative weight vector with positive total.
  static DiscreteDistribution from_weights(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0))
        throw std::invalid_argument("DiscreteDistribution: negative weight");
      sum += w;
    }
    if (sum <= 0.0)
      throw std::invalid_argument("DiscreteDistribution: zero total weight");
    for (double& w : weights) w /= sum;
    return DiscreteDistribution(std::move(weights));
  }

  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }
  const std::vector<double>& masses() const { return masses_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> masses_;
  double residual_ = 0.0;
};

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_DISTRIBUTION_HPP
