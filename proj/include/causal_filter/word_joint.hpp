// causal_filter/word_joint.hpp
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

#ifndef CAUSAL_FILTER_WORD_JOINT_HPP
#define CAUSAL_FILTER_WORD_JOINT_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace causal_filter {

// Words over the alphabet {0..k-1} are identified with their base-k value
// read left to right.  For histories the leftmost symbol is the oldest one
// (most recent symbol last); for futures the leftmost symbol is the next one
// to be emitted.  Both orders are exactly the lexicographic order of the
// rendered digit strings.
inline std::size_t word_count(int alphabet_size, int length) {
  std::size_t n = 1;
  for (int i = 0; i < length; ++i) {
    if (n > static_cast<std::size_t>(-1) / alphabet_size)
      throw std::overflow_error("word_count: k^length overflows");
    n *= static_cast<std::size_t>(alphabet_size);
  }
  return n;
}

inline std::size_t word_to_index(std::span<const int> word, int alphabet_size) {
  std::size_t idx = 0;
  for (int s : word) {
    if (s < 0 || s >= alphabet_size)
      throw std::out_of_range("word_to_index: symbol outside alphabet");
    idx = idx * alphabet_size + static_cast<std::size_t>(s);
  }
  return idx;
}

inline std::vector<int> index_to_word(std::size_t index, int alphabet_size,
                                      int length) {
  std::vector<int> word(length);
  for (int i = length - 1; i >= 0; --i) {
    word[i] = static_cast<int>(index % alphabet_size);
    index /= alphabet_size;
  }
  if (index != 0) throw std::out_of_range("index_to_word: index too large");
  return word;
}

inline std::string word_string(std::size_t index, int alphabet_size,
                               int length) {
  std::string s(length, '0');
  for (int i = length - 1; i >= 0; --i) {
    s[i] = static_cast<char>('0' + index % alphabet_size);
    index /= alphabet_size;
  }
  return s;
}

inline std::size_t word_from_string(const std::string& s, int alphabet_size) {
  std::size_t idx = 0;
  for (char c : s) {
    int digit = c - '0';
    if (digit < 0 || digit >= alphabet_size)
      throw std::invalid_argument("word_from_string: bad digit in '" + s + "'");
    idx = idx * alphabet_size + static_cast<std::size_t>(digit);
  }
  return idx;
}

// Joint distribution over (length-K history, length-L future) word pairs,
// stored densely so that zero-probability histories keep their row.
struct WordJoint {
  enum class Source { exact, empirical };

  int history_length = 0;
  int future_length = 0;
  int alphabet_size = 0;
  Source source = Source::exact;
  std::uint64_t sample_size = 0;  // number of windows when empirical
  std::vector<double> joint;      // row-major [history][future]

  std::size_t n_histories() const {
    return word_count(alphabet_size, history_length);
  }
  std::size_t n_futures() const {
    return word_count(alphabet_size, future_length);
  }

  double at(std::size_t h, std::size_t f) const {
    return joint[h * n_futures() + f];
  }
  double& at(std::size_t h, std::size_t f) {
    return joint[h * n_futures() + f];
  }
  std::span<const double> row(std::size_t h) const {
    return {joint.data() + h * n_futures(), n_futures()};
  }

  std::vector<double> history_marginal() const {
    const std::size_t R = n_histories(), C = n_futures();
    std::vector<double> m(R, 0.0);
    for (std::size_t h = 0; h < R; ++h)
      for (std::size_t f = 0; f < C; ++f) m[h] += joint[h * C + f];
    return m;
  }

  std::vector<double> future_marginal() const {
    const std::size_t R = n_histories(), C = n_futures();
    std::vector<double> m(C, 0.0);
    for (std::size_t h = 0; h < R; ++h)
      for (std::size_t f = 0; f < C; ++f) m[f] += joint[h * C + f];
    return m;
  }

  // P(future | history); requires the history to have positive mass.
  std::vector<double> conditional_future(std::size_t h) const {
    const std::size_t C = n_futures();
    double mass = 0.0;
    for (std::size_t f = 0; f < C; ++f) mass += at(h, f);
    if (mass <= 0.0)
      throw std::domain_error("conditional_future: zero-mass history " +
                              word_string(h, alphabet_size, history_length));
    std::vector<double> cond(C);
    for (std::size_t f = 0; f < C; ++f) cond[f] = at(h, f) / mass;
    return cond;
  }

  double total() const {
    double t = 0.0;
    for (double p : joint) t += p;
    return t;
  }

  void validate(double tol = 1e-9) const {
    if (history_length < 1 || future_length < 1 || alphabet_size < 1)
      throw std::invalid_argument("WordJoint: bad dimensions");
    if (joint.size() != n_histories() * n_futures())
      throw std::invalid_argument("WordJoint: matrix size mismatch");
    for (double p : joint)
      if (!(p >= 0.0)) throw std::invalid_argument("WordJoint: negative mass");
    if (std::abs(total() - 1.0) > tol)
      throw std::invalid_argument("WordJoint: total mass " +
                                  std::to_string(total()));
  }
};

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_WORD_JOINT_HPP
