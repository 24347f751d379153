// causal_filter/process_models.hpp
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

#ifndef CAUSAL_FILTER_PROCESS_MODELS_HPP
#define CAUSAL_FILTER_PROCESS_MODELS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "causal_filter/distribution.hpp"
#include "causal_filter/rng.hpp"
#include "causal_filter/word_joint.hpp"

namespace causal_filter {

// Finite labeled-transition stochastic process generator.  For each symbol x
// the matrix T^(x)[i][j] holds the probability of emitting x while moving
// from internal state i to internal state j.  Rows of the summed matrix are
// stochastic and the summed chain must have a single recurrent class.
struct HiddenMarkovProcess {
  int n_states = 0;
  int alphabet_size = 0;
  // transitions[x][i * n_states + j] = Prob(emit x, i -> j)
  std::vector<std::vector<double>> transitions;
  std::string name;

  double entry(int symbol, int from, int to) const {
    return transitions[symbol][static_cast<std::size_t>(from) * n_states + to];
  }

  void validate() const {
    if (n_states < 1 || alphabet_size < 1)
      throw std::invalid_argument("HiddenMarkovProcess: bad dimensions");
    if (transitions.size() != static_cast<std::size_t>(alphabet_size))
      throw std::invalid_argument("HiddenMarkovProcess: need one matrix per symbol");
    for (const auto& t : transitions) {
      if (t.size() != static_cast<std::size_t>(n_states) * n_states)
        throw std::invalid_argument("HiddenMarkovProcess: matrix size mismatch");
      for (double v : t)
        if (!(v >= 0.0))
          throw std::invalid_argument("HiddenMarkovProcess: negative entry");
    }
    for (int i = 0; i < n_states; ++i) {
      double row = 0.0;
      for (int x = 0; x < alphabet_size; ++x)
        for (int j = 0; j < n_states; ++j) row += entry(x, i, j);
      if (std::abs(row - 1.0) > 1e-12)
        throw std::invalid_argument(
            "HiddenMarkovProcess: row " + std::to_string(i) + " sums to " +
            std::to_string(row));
    }
    if (count_recurrent_classes() != 1)
      throw std::invalid_argument(
          "HiddenMarkovProcess: summed chain must have a single recurrent "
          "class for a unique stationary distribution");
  }

  // Recurrent classes of the summed chain: states mutually reachable with
  // no escape.  Exactly one such class guarantees a unique stationary
  // distribution.
  int count_recurrent_classes() const {
    const int n = n_states;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
      std::vector<int> queue{i};
      reach[i][i] = true;
      while (!queue.empty()) {
        const int p = queue.back();
        queue.pop_back();
        for (int q = 0; q < n; ++q) {
          if (reach[i][q]) continue;
          double mass = 0.0;
          for (int x = 0; x < alphabet_size; ++x) mass += entry(x, p, q);
          if (mass > 0.0) {
            reach[i][q] = true;
            queue.push_back(q);
          }
        }
      }
    }
    std::vector<bool> counted(n, false);
    int classes = 0;
    for (int i = 0; i < n; ++i) {
      if (counted[i]) continue;
      bool recurrent = true;
      for (int j = 0; j < n && recurrent; ++j)
        if (reach[i][j] && !reach[j][i]) recurrent = false;
      if (!recurrent) continue;
      ++classes;
      for (int j = 0; j < n; ++j)
        if (reach[i][j]) counted[j] = true;
    }
    return classes;
  }
};

struct SymbolSeries {
  int alphabet_size = 0;
  std::vector<std::uint8_t> symbols;

  std::size_t length() const { return symbols.size(); }

  void validate() const {
    if (alphabet_size < 1) throw std::invalid_argument("SymbolSeries: bad alphabet");
    for (auto s : symbols)
      if (s >= alphabet_size)
        throw std::invalid_argument("SymbolSeries: symbol outside alphabet");
  }
};

enum class BuiltinProcess { period4, golden_mean, even, rrxor };

inline std::optional<BuiltinProcess> builtin_from_string(std::string_view s) {
  if (s == "period4") return BuiltinProcess::period4;
  if (s == "golden_mean") return BuiltinProcess::golden_mean;
  if (s == "even") return BuiltinProcess::even;
  if (s == "rrxor") return BuiltinProcess::rrxor;
  return std::nullopt;
}

inline std::string builtin_name(BuiltinProcess p) {
  switch (p) {
    case BuiltinProcess::period4: return "period4";
    case BuiltinProcess::golden_mean: return "golden_mean";
    case BuiltinProcess::even: return "even";
    case BuiltinProcess::rrxor: return "rrxor";
  }
  throw std::logic_error("builtin_name: bad enum");
}

inline HiddenMarkovProcess build_builtin(BuiltinProcess which) {
  HiddenMarkovProcess hmm;
  hmm.alphabet_size = 2;
  hmm.name = builtin_name(which);
  auto set = [&hmm](int symbol, int from, int to, double p) {
    hmm.transitions[symbol][static_cast<std::size_t>(from) * hmm.n_states + to] = p;
  };
  switch (which) {
    case BuiltinProcess::period4:
      // four phase states cycling through the emissions 0,0,1,1
      hmm.n_states = 4;
      hmm.transitions.assign(2, std::vector<double>(16, 0.0));
      set(0, 0, 1, 1.0);
      set(0, 1, 2, 1.0);
      set(1, 2, 3, 1.0);
      set(1, 3, 0, 1.0);
      break;
    case BuiltinProcess::golden_mean:
      // from A emit 0 -> B or 1 -> A with equal probability; B always emits 1
      hmm.n_states = 2;
      hmm.transitions.assign(2, std::vector<double>(4, 0.0));
      set(0, 0, 1, 0.5);
      set(1, 0, 0, 0.5);
      set(1, 1, 0, 1.0);
      break;
    case BuiltinProcess::even:
      // 1s are emitted in pairs: A emits 0 -> A or 1 -> B; B must emit 1 -> A
      hmm.n_states = 2;
      hmm.transitions.assign(2, std::vector<double>(4, 0.0));
      set(0, 0, 0, 0.5);
      set(1, 0, 1, 0.5);
      set(1, 1, 0, 1.0);
      break;
    case BuiltinProcess::rrxor:
      // phase-augmented chain: state 0 emits the first fair bit, states 1-2
      // emit the second bit remembering the first, states 3-4 emit the XOR
      hmm.n_states = 5;
      hmm.transitions.assign(2, std::vector<double>(25, 0.0));
      set(0, 0, 1, 0.5);
      set(1, 0, 2, 0.5);
      set(0, 1, 3, 0.5);
      set(1, 1, 4, 0.5);
      set(0, 2, 4, 0.5);
      set(1, 2, 3, 0.5);
      set(0, 3, 0, 1.0);
      set(1, 4, 0, 1.0);
      break;
  }
  hmm.validate();
  return hmm;
}

// Stationary distribution of the summed chain.  Power iteration is run on
// the half-lazy kernel (P + I)/2, which has the same stationary vector but
// converges for periodic chains such as the phase cycles above.
inline DiscreteDistribution stationary_distribution(
    const HiddenMarkovProcess& hmm, double residual_tol = 1e-14,
    std::size_t max_iterations = 1000000) {
  hmm.validate();
  const int n = hmm.n_states;
  std::vector<double> summed(static_cast<std::size_t>(n) * n, 0.0);
  for (int x = 0; x < hmm.alphabet_size; ++x)
    for (std::size_t i = 0; i < summed.size(); ++i)
      summed[i] += hmm.transitions[x][i];

  std::vector<double> pi(n, 1.0 / n), next(n);
  double residual = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += pi[i] * summed[static_cast<std::size_t>(i) * n + j];
      next[j] = 0.5 * (acc + pi[j]);
    }
    double total = 0.0;
    for (double v : next) total += v;
    for (double& v : next) v /= total;

    // residual against the original (non-lazy) kernel
    residual = 0.0;
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += next[i] * summed[static_cast<std::size_t>(i) * n + j];
      residual = std::max(residual, std::abs(acc - next[j]));
    }
    pi.swap(next);
    if (residual <= residual_tol) return DiscreteDistribution(pi);
  }
  throw std::runtime_error(
      "stationary_distribution: no convergence after iteration cap, residual " +
      std::to_string(residual));
}

// Exact joint P(past^K, future^L) from the stationary start.  A window of
// K+L symbols is contiguous, so the joint of a (history, future) pair is the
// probability of the concatenated word.
inline WordJoint exact_joint(const HiddenMarkovProcess& hmm, int K, int L,
                             std::size_t word_cap = (std::size_t{1} << 22)) {
  hmm.validate();
  if (K < 1 || L < 1) throw std::invalid_argument("exact_joint: K, L must be >= 1");
  const std::size_t R = word_count(hmm.alphabet_size, K);
  const std::size_t C = word_count(hmm.alphabet_size, L);
  if (R > word_cap / C)
    throw std::invalid_argument("exact_joint: k^(K+L) exceeds word cap");

  const auto pi = stationary_distribution(hmm);
  const int n = hmm.n_states;

  WordJoint j;
  j.history_length = K;
  j.future_length = L;
  j.alphabet_size = hmm.alphabet_size;
  j.source = WordJoint::Source::exact;
  j.joint.assign(R * C, 0.0);

  // depth-first over symbols, propagating the state-occupancy vector
  std::vector<std::vector<double>> stack(K + L + 1,
                                         std::vector<double>(n, 0.0));
  stack[0] = pi.masses();
  std::vector<int> word(K + L, 0);
  int depth = 0;
  while (true) {
    if (depth == K + L) {
      double mass = 0.0;
      for (double v : stack[depth]) mass += v;
      const std::size_t h =
          word_to_index(std::span<const int>(word.data(), K), hmm.alphabet_size);
      const std::size_t f = word_to_index(
          std::span<const int>(word.data() + K, L), hmm.alphabet_size);
      j.joint[h * C + f] = mass;
      --depth;
      while (depth >= 0 && word[depth] == hmm.alphabet_size - 1) {
        word[depth] = 0;
        --depth;
      }
      if (depth < 0) break;
      ++word[depth];
      continue;
    }
    // advance occupancy through T^(word[depth])
    const auto& t = hmm.transitions[word[depth]];
    auto& out = stack[depth + 1];
    const auto& in = stack[depth];
    for (int q = 0; q < n; ++q) out[q] = 0.0;
    for (int p = 0; p < n; ++p) {
      if (in[p] == 0.0) continue;
      for (int q = 0; q < n; ++q)
        out[q] += in[p] * t[static_cast<std::size_t>(p) * n + q];
    }
    ++depth;
  }
  j.validate(1e-12);
  return j;
}

// Draws a length-T series starting from a stationary internal state.
inline SymbolSeries sample_series(const HiddenMarkovProcess& hmm,
                                  std::size_t T, std::uint64_t seed) {
  hmm.validate();
  if (T < 1) throw std::invalid_argument("sample_series: T must be >= 1");
  const auto pi = stationary_distribution(hmm);
  const int n = hmm.n_states;
  const int k = hmm.alphabet_size;

  Rng rng(mix_seed(seed, 0x5e51e5u));
  std::size_t state = rng.next_index(pi.masses());

  SymbolSeries series;
  series.alphabet_size = k;
  series.symbols.resize(T);
  std::vector<double> weights(static_cast<std::size_t>(k) * n);
  for (std::size_t t = 0; t < T; ++t) {
    // joint draw of (symbol, next state) given the current state
    for (int x = 0; x < k; ++x)
      for (int q = 0; q < n; ++q)
        weights[static_cast<std::size_t>(x) * n + q] =
            hmm.entry(x, static_cast<int>(state), q);
    const std::size_t pick = rng.next_index(weights);
    series.symbols[t] = static_cast<std::uint8_t>(pick / n);
    state = pick % n;
  }
  return series;
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_PROCESS_MODELS_HPP
