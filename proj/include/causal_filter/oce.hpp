// causal_filter/oce.hpp
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

#ifndef CAUSAL_FILTER_OCE_HPP
#define CAUSAL_FILTER_OCE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "causal_filter/ib_core.hpp"
#include "causal_filter/info_plane.hpp"
#include "causal_filter/parallel.hpp"
#include "causal_filter/process_models.hpp"
#include "causal_filter/word_joint.hpp"

namespace causal_filter {

// Sliding-window histogram over (history, future) pairs: a length-T series
// yields M = T - (K + L - 1) windows.
struct EmpiricalEstimate {
  std::vector<std::uint64_t> counts;  // row-major [history][future]
  std::uint64_t window_count = 0;     // M
  std::size_t series_length = 0;      // T
  int history_length = 0;
  int future_length = 0;
  int alphabet_size = 0;
  WordJoint joint;                    // counts / M
};

inline EmpiricalEstimate empirical_joint(const SymbolSeries& series, int K,
                                         int L) {
  series.validate();
  if (K < 1 || L < 1)
    throw std::invalid_argument("empirical_joint: K, L must be >= 1");
  const std::size_t T = series.length();
  const std::size_t window = static_cast<std::size_t>(K) + L;
  if (T < window)
    throw std::invalid_argument("empirical_joint: series shorter than K+L");

  EmpiricalEstimate e;
  e.series_length = T;
  e.history_length = K;
  e.future_length = L;
  e.alphabet_size = series.alphabet_size;
  const std::size_t R = word_count(e.alphabet_size, K);
  const std::size_t C = word_count(e.alphabet_size, L);
  e.counts.assign(R * C, 0);
  e.window_count = static_cast<std::uint64_t>(T - (window - 1));

  for (std::size_t t = 0; t + window <= T; ++t) {
    std::size_t h = 0, f = 0;
    for (int i = 0; i < K; ++i)
      h = h * e.alphabet_size + series.symbols[t + i];
    for (int i = 0; i < L; ++i)
      f = f * e.alphabet_size + series.symbols[t + K + i];
    ++e.counts[h * C + f];
  }

  e.joint.history_length = K;
  e.joint.future_length = L;
  e.joint.alphabet_size = e.alphabet_size;
  e.joint.source = WordJoint::Source::empirical;
  e.joint.sample_size = e.window_count;
  e.joint.joint.resize(R * C);
  for (std::size_t i = 0; i < e.counts.size(); ++i)
    e.joint.joint[i] =
        static_cast<double>(e.counts[i]) / static_cast<double>(e.window_count);
  return e;
}

// Finite-sample complexity-control term in bits,
// (k^L - 1) / (2 ln 2) * N_c / M.
inline double correction(int n_clusters, int alphabet_size, int future_length,
                         std::uint64_t window_count) {
  if (window_count == 0) throw std::invalid_argument("correction: M = 0");
  if (n_clusters < 0) throw std::invalid_argument("correction: N_c < 0");
  const double futures =
      static_cast<double>(word_count(alphabet_size, future_length));
  return (futures - 1.0) / (2.0 * std::log(2.0)) *
         static_cast<double>(n_clusters) / static_cast<double>(window_count);
}

struct SelectionRow {
  int n_clusters = 0;
  double information_raw = 0.0;
  double correction_bits = 0.0;
  double information_corrected = 0.0;
};

struct SelectionTable {
  std::vector<SelectionRow> rows;
  int chosen_n = 0;                 // N_c maximizing the corrected row
  Partition winning_partition;      // hard partition of the chosen run
  SoftModel winning_model;
};

namespace detail {

struct FixedNResult {
  double information = 0.0;
  Partition partition;
  SoftModel model;
};

// Anneals with exactly n_clusters clusters and takes the deterministic
// limit; of `chains` independently seeded runs the one with the largest
// hard-partition predictive information wins (ties to the earliest chain).
inline FixedNResult best_fixed_n(const WordJoint& j, int n_clusters,
                                 const AnnealingSchedule& sched, int chains) {
  std::vector<FixedNResult> results(chains);
  parallel_for_index(static_cast<std::size_t>(chains), [&](std::size_t chain) {
    AnnealingSchedule chain_sched = sched;
    chain_sched.seed = mix_seed(sched.seed, static_cast<std::uint64_t>(n_clusters),
                                static_cast<std::uint64_t>(chain));
    const InfoPlaneCurve curve =
        anneal_trace(j, chain_sched, static_cast<std::size_t>(n_clusters));
    results[chain].information = state_future_information(j, curve.terminal_partition);
    results[chain].partition = curve.terminal_partition;
    results[chain].model = curve.terminal_model;
  });
  FixedNResult best = std::move(results.front());
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].information > best.information + 1e-15)
      best = std::move(results[i]);
  return best;
}

}  // namespace detail

// Raw-vs-corrected information over candidate state counts.  Each N_c is
// optimized at fixed cardinality; the previous winner padded with an unused
// cluster also competes, since it is itself a valid N_c-cluster model, so
// the raw curve cannot decrease.  The corrected column subtracts the
// finite-sample term, and the winner is its argmax (ties to the smaller N_c).
inline SelectionTable corrected_curve(const EmpiricalEstimate& e,
                                      const std::vector<int>& n_range,
                                      const AnnealingSchedule& sched,
                                      int restarts_per_n = 10) {
  if (n_range.empty()) throw std::invalid_argument("corrected_curve: empty range");
  for (int n : n_range)
    if (n < 1) throw std::invalid_argument("corrected_curve: N_c must be >= 1");

  SelectionTable table;
  detail::FixedNResult previous;
  bool have_previous = false;
  double best_corrected = 0.0;

  for (int n : n_range) {
    detail::FixedNResult result =
        detail::best_fixed_n(e.joint, n, sched, restarts_per_n);
    if (have_previous && previous.information > result.information)
      result = previous;  // embedding the previous winner keeps raw monotone

    SelectionRow row;
    row.n_clusters = n;
    row.information_raw = result.information;
    row.correction_bits =
        correction(n, e.alphabet_size, e.future_length, e.window_count);
    row.information_corrected = row.information_raw - row.correction_bits;
    table.rows.push_back(row);

    const bool wins =
        table.rows.size() == 1 ||
        row.information_corrected > best_corrected + 1e-12;
    if (wins) {
      best_corrected = row.information_corrected;
      table.chosen_n = n;
      table.winning_partition = result.partition;
      table.winning_model = result.model;
    }
    previous = std::move(result);
    have_previous = true;
  }
  return table;
}

// H[S] of the hard partition from the winning fixed-N_c run.
inline double estimated_complexity(const EmpiricalEstimate& e, int n_clusters,
                                   const AnnealingSchedule& sched,
                                   int restarts_per_n = 10) {
  if (n_clusters < 1)
    throw std::invalid_argument("estimated_complexity: N_c must be >= 1");
  const auto result =
      detail::best_fixed_n(e.joint, n_clusters, sched, restarts_per_n);
  return statistical_complexity(result.partition);
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_OCE_HPP
