// causal_filter/info_theory.hpp
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

#ifndef CAUSAL_FILTER_INFO_THEORY_HPP
#define CAUSAL_FILTER_INFO_THEORY_HPP

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "causal_filter/distribution.hpp"
#include "causal_filter/word_joint.hpp"

namespace causal_filter {

// All information quantities are in bits.  Zero masses contribute nothing
// (0 log 0 = 0), and an absolute-continuity violation in the divergence is
// reported as +infinity rather than thrown, so argmin loops can treat it as
// an ordinary value.

inline double entropy(std::span<const double> masses) {
  double h = 0.0;
  for (double p : masses)
    if (p > 0.0) h -= p * std::log2(p);
  return h < 0.0 ? 0.0 : h;
}

inline double entropy(const DiscreteDistribution& p) {
  return entropy(std::span<const double>(p.masses()));
}

inline double kl_divergence(std::span<const double> p,
                            std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("kl_divergence: mismatched supports");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
      d += p[i] * std::log2(p[i] / q[i]);
    }
  }
  return d < 0.0 ? 0.0 : d;
}

inline double kl_divergence(const DiscreteDistribution& p,
                            const DiscreteDistribution& q) {
  return kl_divergence(std::span<const double>(p.masses()),
                       std::span<const double>(q.masses()));
}

// Total variation distance, (1/2) sum |p - q|.
inline double total_variation(std::span<const double> p,
                              std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("total_variation: mismatched supports");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return 0.5 * d;
}

inline double total_variation(const DiscreteDistribution& p,
                              const DiscreteDistribution& q) {
  return total_variation(std::span<const double>(p.masses()),
                         std::span<const double>(q.masses()));
}

// Mutual information of a generic joint matrix given its marginals.
inline double mutual_information(std::span<const double> joint,
                                 std::span<const double> row_marginal,
                                 std::span<const double> col_marginal) {
  const std::size_t R = row_marginal.size(), C = col_marginal.size();
  if (joint.size() != R * C)
    throw std::invalid_argument("mutual_information: size mismatch");
  double info = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    if (row_marginal[r] <= 0.0) continue;
    for (std::size_t c = 0; c < C; ++c) {
      const double p = joint[r * C + c];
      if (p > 0.0 && col_marginal[c] > 0.0)
        info += p * std::log2(p / (row_marginal[r] * col_marginal[c]));
    }
  }
  // tiny negative values are floating-point residue of an exact zero
  return info < 0.0 && info > -1e-12 ? 0.0 : info;
}

inline double mutual_information(const WordJoint& j) {
  const auto hm = j.history_marginal();
  const auto fm = j.future_marginal();
  return mutual_information(std::span<const double>(j.joint), hm, fm);
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_INFO_THEORY_HPP
