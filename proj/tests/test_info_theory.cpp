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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "causal_filter/distribution.hpp"
#include "causal_filter/info_theory.hpp"
#include "causal_filter/process_models.hpp"
#include "causal_filter/rng.hpp"

using namespace causal_filter;

namespace {

DiscreteDistribution random_distribution(Rng& rng, std::size_t size,
                                         bool with_zeros = false) {
  std::vector<double> w(size);
  for (auto& v : w) {
    v = rng.next_double();
    if (with_zeros && rng.next_double() < 0.25) v = 0.0;
  }
  double sum = 0.0;
  for (double v : w) sum += v;
  if (sum <= 0.0) w[0] = 1.0;
  return DiscreteDistribution::from_weights(std::move(w));
}

}  // namespace

TEST_CASE("distribution constructor") {
  DiscreteDistribution u = DiscreteDistribution::uniform(4);
  REQUIRE(u.size() == 4);
  REQUIRE(u[2] == Catch::Approx(0.25));

  CHECK_THROWS(DiscreteDistribution({0.5, 0.6}));     // off by 0.1
  CHECK_THROWS(DiscreteDistribution({-0.1, 1.1}));    // negative mass
  CHECK_THROWS(DiscreteDistribution(std::vector<double>{}));

  DiscreteDistribution p({0.5, 0.5 + 4e-10});
  CHECK(p.residual() == Catch::Approx(4e-10).margin(1e-12));
  CHECK(p[0] + p[1] == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("entropy") {
  CHECK(entropy(DiscreteDistribution::uniform(4)) ==
        Catch::Approx(2.0).margin(1e-12));
  CHECK(entropy(DiscreteDistribution({2.0 / 3.0, 1.0 / 3.0})) ==
        Catch::Approx(0.9182958340544896).margin(1e-12));
  CHECK(entropy(DiscreteDistribution::point_mass(5, 3)) == 0.0);
}

TEST_CASE("kl divergence") {
  const DiscreteDistribution p({0.3, 0.7});
  CHECK(kl_divergence(p, p) == 0.0);

  CHECK(kl_divergence(DiscreteDistribution({1.0, 0.0}),
                      DiscreteDistribution::uniform(2)) ==
        Catch::Approx(1.0).margin(1e-12));

  CHECK(std::isinf(kl_divergence(DiscreteDistribution::uniform(2),
                                 DiscreteDistribution({1.0, 0.0}))));

  CHECK_THROWS(kl_divergence(p, DiscreteDistribution::uniform(3)));
}

TEST_CASE("kl divergence is zero exactly when the distributions agree") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_distribution(rng, 6, true);
    auto q = random_distribution(rng, 6, true);
    const double d = kl_divergence(p, q);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      max_diff = std::max(max_diff, std::abs(p[i] - q[i]));
    if (max_diff <= 1e-12) CHECK(d <= 1e-10);
    if (d == 0.0) CHECK(max_diff <= 1e-12);
    CHECK(d >= 0.0);
  }
}

TEST_CASE("mutual information on exact joints") {
  const auto gm = build_builtin(BuiltinProcess::golden_mean);
  const auto j = exact_joint(gm, 3, 2);
  CHECK(mutual_information(j) == Catch::Approx(0.25).margin(0.01));

  const auto even = build_builtin(BuiltinProcess::even);
  CHECK(mutual_information(exact_joint(even, 3, 2)) ==
        Catch::Approx(0.292).margin(0.0005));
}

TEST_CASE("mutual information of a product joint is zero") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_distribution(rng, 8);
    auto q = random_distribution(rng, 4);
    WordJoint j;
    j.history_length = 3;
    j.future_length = 2;
    j.alphabet_size = 2;
    j.joint.resize(32);
    for (std::size_t h = 0; h < 8; ++h)
      for (std::size_t f = 0; f < 4; ++f) j.at(h, f) = p[h] * q[f];
    CHECK(mutual_information(j) == Catch::Approx(0.0).margin(1e-10));
  }
}

TEST_CASE("mutual information bounds and divergence decomposition") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    // random joint over 8 x 4 cells, some structural zeros
    WordJoint j;
    j.history_length = 3;
    j.future_length = 2;
    j.alphabet_size = 2;
    j.joint.resize(32);
    double sum = 0.0;
    for (auto& v : j.joint) {
      v = rng.next_double() < 0.3 ? 0.0 : rng.next_double();
      sum += v;
    }
    if (sum <= 0.0) { j.joint[0] = 1.0; sum = 1.0; }
    for (auto& v : j.joint) v /= sum;

    const double info = mutual_information(j);
    const auto hm = j.history_marginal();
    const auto fm = j.future_marginal();
    CHECK(info >= 0.0);
    CHECK(info <= entropy(std::span<const double>(hm)) + 1e-9);
    CHECK(info <= entropy(std::span<const double>(fm)) + 1e-9);

    // I[Past;Future] = E_past[ D(P(.|past) || P(future)) ]
    double expected = 0.0;
    for (std::size_t h = 0; h < 8; ++h) {
      if (hm[h] <= 0.0) continue;
      const auto cond = j.conditional_future(h);
      expected += hm[h] * kl_divergence(std::span<const double>(cond),
                                        std::span<const double>(fm));
    }
    CHECK(info == Catch::Approx(expected).margin(1e-10));
  }
}

TEST_CASE("word indexing round trip") {
  for (std::size_t idx = 0; idx < 27; ++idx) {
    const auto w = index_to_word(idx, 3, 3);
    CHECK(word_to_index(std::span<const int>(w), 3) == idx);
    CHECK(word_from_string(word_string(idx, 3, 3), 3) == idx);
  }
  CHECK(word_string(5, 2, 4) == "0101");
  CHECK_THROWS(word_from_string("012", 2));
}
