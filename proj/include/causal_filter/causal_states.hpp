// causal_filter/causal_states.hpp
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

#ifndef CAUSAL_FILTER_CAUSAL_STATES_HPP
#define CAUSAL_FILTER_CAUSAL_STATES_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "causal_filter/distribution.hpp"
#include "causal_filter/info_theory.hpp"
#include "causal_filter/word_joint.hpp"

namespace causal_filter {

// Deterministic grouping of histories with per-state weights and morphs.
// Zero-mass histories carry the label kUnassigned.
struct Partition {
  static constexpr int kUnassigned = -1;

  std::vector<int> assignment;             // per history index
  std::vector<double> state_weights;       // p(state)
  std::vector<std::vector<double>> morphs; // P(future | state)

  int n_states() const { return static_cast<int>(state_weights.size()); }

  DiscreteDistribution weight_distribution() const {
    return DiscreteDistribution(state_weights);
  }
};

// Builds a Partition from an explicit history -> label map, recomputing
// weights and morphs from the joint.  Labels are renumbered so that states
// appear in order of their smallest member history; empty labels vanish.
inline Partition partition_from_assignment(const WordJoint& j,
                                           const std::vector<int>& labels) {
  const std::size_t R = j.n_histories(), C = j.n_futures();
  if (labels.size() != R)
    throw std::invalid_argument("partition_from_assignment: label count");
  const auto hm = j.history_marginal();

  Partition part;
  part.assignment.assign(R, Partition::kUnassigned);
  std::vector<int> relabel;  // old label -> new label, discovered in row order
  std::vector<int> seen;     // old labels in order of first appearance
  for (std::size_t h = 0; h < R; ++h) {
    if (hm[h] <= 0.0) continue;
    const int old_label = labels[h];
    if (old_label < 0)
      throw std::invalid_argument(
          "partition_from_assignment: positive-mass history unassigned");
    int new_label = -1;
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == old_label) new_label = static_cast<int>(i);
    if (new_label < 0) {
      new_label = static_cast<int>(seen.size());
      seen.push_back(old_label);
    }
    part.assignment[h] = new_label;
  }

  const int S = static_cast<int>(seen.size());
  if (S == 0)
    throw std::invalid_argument("partition_from_assignment: empty support");
  part.state_weights.assign(S, 0.0);
  part.morphs.assign(S, std::vector<double>(C, 0.0));
  for (std::size_t h = 0; h < R; ++h) {
    const int s = part.assignment[h];
    if (s < 0) continue;
    part.state_weights[s] += hm[h];
    for (std::size_t f = 0; f < C; ++f) part.morphs[s][f] += j.at(h, f);
  }
  for (int s = 0; s < S; ++s) {
    if (part.state_weights[s] <= 0.0)
      throw std::logic_error("partition_from_assignment: zero-weight state");
    for (double& v : part.morphs[s]) v /= part.state_weights[s];
  }
  return part;
}

// Groups histories whose conditional future distributions agree within tol
// in total variation, closing the relation by single linkage.  State labels
// follow the lexicographically smallest member history.
inline Partition causal_partition(const WordJoint& j, double tol = 1e-9) {
  if (tol < 0.0) throw std::invalid_argument("causal_partition: tol < 0");
  const std::size_t R = j.n_histories();
  const auto hm = j.history_marginal();

  std::vector<std::size_t> support;
  std::vector<std::vector<double>> conds;
  for (std::size_t h = 0; h < R; ++h) {
    if (hm[h] > 0.0) {
      support.push_back(h);
      conds.push_back(j.conditional_future(h));
    }
  }
  if (support.empty())
    throw std::invalid_argument("causal_partition: no positive-mass history");

  // union-find over the support
  std::vector<std::size_t> parent(support.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&parent](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b)
      if (total_variation(std::span<const double>(conds[a]),
                          std::span<const double>(conds[b])) <= tol) {
        const auto ra = find(a), rb = find(b);
        if (ra != rb) parent[rb] = ra;
      }

  std::vector<int> labels(R, Partition::kUnassigned);
  for (std::size_t i = 0; i < support.size(); ++i)
    labels[support[i]] = static_cast<int>(find(i));
  return partition_from_assignment(j, labels);
}

inline double statistical_complexity(const Partition& p) {
  return entropy(std::span<const double>(p.state_weights));
}

// The full predictive information I[Past;Future]; a named alias so reports
// can label the quantity E.
inline double excess_entropy(const WordJoint& j) {
  return mutual_information(j);
}

// I[state; future] of the joint induced by a deterministic partition.
inline double state_future_information(const WordJoint& j,
                                       const Partition& p) {
  const std::size_t R = j.n_histories(), C = j.n_futures();
  const int S = p.n_states();
  std::vector<double> induced(static_cast<std::size_t>(S) * C, 0.0);
  for (std::size_t h = 0; h < R; ++h) {
    const int s = p.assignment[h];
    if (s < 0) continue;
    for (std::size_t f = 0; f < C; ++f) induced[s * C + f] += j.at(h, f);
  }
  const auto fm = j.future_marginal();
  return mutual_information(induced, p.state_weights, fm);
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_CAUSAL_STATES_HPP
