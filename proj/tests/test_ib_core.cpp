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

#include <algorithm>
#include <cmath>
#include <vector>

#include "causal_filter/causal_states.hpp"
#include "causal_filter/ib_core.hpp"
#include "causal_filter/info_theory.hpp"
#include "causal_filter/process_models.hpp"

using namespace causal_filter;

namespace {

WordJoint joint_for(BuiltinProcess which) {
  return exact_joint(build_builtin(which), 3, 2);
}

double max_row_sum_error(const SoftModel& m, const WordJoint& j) {
  const auto hm = j.history_marginal();
  double worst = 0.0;
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    double sum = 0.0;
    for (std::size_t s = 0; s < m.n_clusters; ++s) sum += m.q_at(h, s);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  (void)hm;
  return worst;
}

}  // namespace

TEST_CASE("single cluster is a fixed point at any lambda") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  const auto fm = j.future_marginal();
  for (double lambda : {10.0, 0.5, 1e-3}) {
    auto m = init_soft_model(j, 1, lambda, 5);
    const auto stepped = ib_step(j, m);
    for (std::size_t h = 0; h < stepped.n_histories; ++h)
      CHECK(stepped.q_at(h, 0) == 1.0);
    for (std::size_t f = 0; f < stepped.n_futures; ++f)
      CHECK(stepped.morph(0)[f] == Catch::Approx(fm[f]).margin(1e-12));
  }
}

TEST_CASE("ib_step rejects nonpositive lambda") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  auto m = init_soft_model(j, 2, 1.0, 5);
  m.lambda = 0.0;
  CHECK_THROWS(ib_step(j, m));
  m.lambda = -1.0;
  CHECK_THROWS(ib_step(j, m));
}

TEST_CASE("causal-partition model is a fixed point of the sweep") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  const auto causal = causal_partition(j);
  auto m = soft_model_from_partition(j, causal, 1e-3);
  const auto stepped = ib_step(j, m);
  double change = 0.0;
  for (std::size_t i = 0; i < m.q.size(); ++i)
    change = std::max(change, std::abs(stepped.q[i] - m.q[i]));
  CHECK(change < 1e-9);
}

TEST_CASE("two clusters at low temperature recover the causal morphs") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  auto [m, report] = ib_converge(j, init_soft_model(j, 2, 1e-3, 11), 1e-12, 10000);
  REQUIRE(report.converged);

  const auto hm = j.history_marginal();
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    if (hm[h] <= 0.0) continue;
    const double top = std::max(m.q_at(h, 0), m.q_at(h, 1));
    CHECK(top > 1.0 - 1e-6);  // deterministic assignments
  }

  const std::vector<std::vector<double>> expected = {
      {0.0, 0.5, 0.25, 0.25}, {0.0, 0.0, 0.5, 0.5}};
  double best = 1.0;
  for (int flip = 0; flip < 2; ++flip) {
    double worst = 0.0;
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t f = 0; f < 4; ++f)
        worst = std::max(worst, std::abs(m.morph(flip ? 1 - s : s)[f] -
                                         expected[s][f]));
    best = std::min(best, worst);
  }
  CHECK(best < 1e-6);
}

TEST_CASE("convergence from a single cluster happens immediately") {
  const auto j = joint_for(BuiltinProcess::even);
  auto [m, report] = ib_converge(j, init_soft_model(j, 1, 2.0, 3), 1e-10, 100);
  CHECK(report.converged);
  CHECK(report.iterations == 1);
  (void)m;
}

TEST_CASE("eight clusters at low temperature find two effective states") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  auto [m, report] = ib_converge(j, init_soft_model(j, 8, 1e-3, 17), 1e-10, 10000);
  CHECK(report.converged);
  CHECK(effective_states(m) == 2);
}

TEST_CASE("high temperature compresses to one effective state") {
  const auto j = joint_for(BuiltinProcess::period4);
  for (double lambda : {10.0, 50.0}) {
    auto [m, report] = ib_converge(j, init_soft_model(j, 8, lambda, 23), 1e-10, 10000);
    CHECK(report.converged);
    CHECK(effective_states(m) == 1);
    CHECK(state_future_information(j, m) == Catch::Approx(0.0).margin(1e-6));
  }
}

TEST_CASE("hard assignment of causal morphs returns the causal partition") {
  for (auto which : {BuiltinProcess::golden_mean, BuiltinProcess::even,
                     BuiltinProcess::rrxor, BuiltinProcess::period4}) {
    const auto j = joint_for(which);
    const auto causal = causal_partition(j);
    const auto m = soft_model_from_partition(j, causal, 1e-3);
    const auto hard = hard_assignment(j, m);
    CHECK(hard.assignment == causal.assignment);
  }
}

TEST_CASE("hard assignment with a single cluster groups everything") {
  const auto j = joint_for(BuiltinProcess::even);
  const auto m = init_soft_model(j, 1, 1.0, 2);
  const auto hard = hard_assignment(j, m);
  CHECK(hard.n_states() == 1);
}

TEST_CASE("objective values") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  const auto causal = causal_partition(j);
  const auto causal_model = soft_model_from_partition(j, causal, 1.0);

  // lambda = 0: the full predictive information of the causal model
  CHECK(objective(j, causal_model, 0.0) ==
        Catch::Approx(mutual_information(j)).margin(1e-10));
  CHECK(mutual_information(j) == Catch::Approx(0.25).margin(0.01));

  const auto single = init_soft_model(j, 1, 1.0, 1);
  for (double lambda : {0.0, 0.3, 2.0})
    CHECK(objective(j, single, lambda) == Catch::Approx(0.0).margin(1e-12));

  // identity rival pays lambda (H[Past] - C_mu) relative to the causal model
  const auto hm = j.history_marginal();
  std::vector<int> identity(j.n_histories(), Partition::kUnassigned);
  for (std::size_t h = 0; h < identity.size(); ++h)
    if (hm[h] > 0.0) identity[h] = static_cast<int>(h);
  const auto rival_model =
      soft_model_from_partition(j, partition_from_assignment(j, identity), 1.0);
  for (double lambda : {0.25, 1.0}) {
    // rival objective = causal objective - lambda (H[Past] - Cmu)
    const double gap =
        objective(j, causal_model, lambda) - objective(j, rival_model, lambda);
    const double expected =
        lambda * (entropy(std::span<const double>(hm)) -
                  statistical_complexity(causal));
    CHECK(gap == Catch::Approx(expected).margin(1e-9));
  }
}

TEST_CASE("lambda zero makes causal and identity models degenerate") {
  const auto j = joint_for(BuiltinProcess::even);
  const auto hm = j.history_marginal();
  std::vector<int> identity(j.n_histories(), Partition::kUnassigned);
  for (std::size_t h = 0; h < identity.size(); ++h)
    if (hm[h] > 0.0) identity[h] = static_cast<int>(h);
  const auto causal_model =
      soft_model_from_partition(j, causal_partition(j), 1.0);
  const auto rival_model =
      soft_model_from_partition(j, partition_from_assignment(j, identity), 1.0);
  CHECK(objective(j, causal_model, 0.0) ==
        Catch::Approx(objective(j, rival_model, 0.0)).margin(1e-9));
}

TEST_CASE("causal partition maximizes the deterministic objective among prescient rivals") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  const auto causal = causal_partition(j);

  std::vector<std::vector<int>> rivals;
  // identity partition
  {
    const auto hm = j.history_marginal();
    std::vector<int> labels(j.n_histories(), Partition::kUnassigned);
    for (std::size_t h = 0; h < labels.size(); ++h)
      if (hm[h] > 0.0) labels[h] = static_cast<int>(h);
    rivals.push_back(labels);
  }
  // split the heavier causal state into its members
  {
    std::vector<int> labels = causal.assignment;
    for (std::size_t h = 0; h < labels.size(); ++h)
      if (labels[h] == 1) labels[h] = 10 + static_cast<int>(h);
    rivals.push_back(labels);
  }

  for (double lambda : {0.01, 0.1, 1.0}) {
    const double causal_value =
        objective(j, soft_model_from_partition(j, causal, lambda), lambda);
    for (const auto& labels : rivals) {
      const auto rival = partition_from_assignment(j, labels);
      const double rival_value =
          objective(j, soft_model_from_partition(j, rival, lambda), lambda);
      CHECK(causal_value >= rival_value - 1e-12);
    }
  }
}

TEST_CASE("weights and morphs stay self-consistent with the assignments") {
  const auto j = joint_for(BuiltinProcess::rrxor);
  const auto hm = j.history_marginal();
  auto m = init_soft_model(j, 5, 0.3, 19);
  for (int sweep = 0; sweep < 25; ++sweep) {
    m = ib_step(j, m);
    for (std::size_t s = 0; s < m.n_clusters; ++s) {
      double weight = 0.0;
      std::vector<double> morph(m.n_futures, 0.0);
      for (std::size_t h = 0; h < m.n_histories; ++h) {
        if (hm[h] <= 0.0) continue;
        weight += hm[h] * m.q_at(h, s);
        for (std::size_t f = 0; f < m.n_futures; ++f)
          morph[f] += m.q_at(h, s) * j.at(h, f);
      }
      CHECK(m.cluster_weights[s] == Catch::Approx(weight).margin(1e-10));
      if (weight >= kDormantWeight)
        for (std::size_t f = 0; f < m.n_futures; ++f)
          CHECK(m.morph(s)[f] == Catch::Approx(morph[f] / weight).margin(1e-10));
    }
  }
}

TEST_CASE("sweeps keep rows normalized and the objective non-decreasing") {
  for (auto which : {BuiltinProcess::golden_mean, BuiltinProcess::even,
                     BuiltinProcess::rrxor}) {
    const auto j = joint_for(which);
    for (double lambda : {2.0, 0.5, 0.05}) {
      auto m = init_soft_model(j, 6, lambda, 41);
      double previous = objective(j, m, lambda);
      for (int sweep = 0; sweep < 60; ++sweep) {
        m = ib_step(j, m);
        CHECK(max_row_sum_error(m, j) <= 1e-12);
        const double value = objective(j, m, lambda);
        CHECK(value >= previous - 1e-9);
        previous = value;
      }
    }
  }
}

TEST_CASE("models never exceed the information bounds") {
  for (auto which : {BuiltinProcess::golden_mean, BuiltinProcess::rrxor}) {
    const auto j = joint_for(which);
    const double excess = mutual_information(j);
    const auto hm = j.history_marginal();
    const double block_entropy = entropy(std::span<const double>(hm));
    for (double lambda : {5.0, 1.0, 0.2, 0.01}) {
      auto [m, report] =
          ib_converge(j, init_soft_model(j, 8, lambda, 77), 1e-10, 10000);
      CHECK(state_future_information(j, m) <= excess + 1e-9);
      CHECK(past_state_information(j, m) <= block_entropy + 1e-9);
      (void)report;
    }
  }
}

TEST_CASE("morphs cover the supports of their members") {
  const auto j = joint_for(BuiltinProcess::even);
  const auto hm = j.history_marginal();
  for (double lambda : {1.0, 0.1, 0.01}) {
    auto m = init_soft_model(j, 4, lambda, 13);
    for (int sweep = 0; sweep < 30; ++sweep) {
      m = ib_step(j, m);
      for (std::size_t h = 0; h < m.n_histories; ++h) {
        if (hm[h] <= 0.0) continue;
        const auto cond = j.conditional_future(h);
        for (std::size_t s = 0; s < m.n_clusters; ++s) {
          if (m.q_at(h, s) <= 0.0 || m.dormant[s]) continue;
          for (std::size_t f = 0; f < m.n_futures; ++f)
            if (cond[f] > 0.0) CHECK(m.morph(s)[f] > 0.0);
        }
      }
    }
  }
}

TEST_CASE("effective state counting merges duplicates and drops dust") {
  const auto j = joint_for(BuiltinProcess::golden_mean);
  // unperturbed uniform rows leave all morphs identical
  SoftModel m;
  m.lambda = 1.0;
  m.n_histories = j.n_histories();
  m.n_clusters = 5;
  m.n_futures = j.n_futures();
  m.q.assign(m.n_histories * m.n_clusters, 1.0 / 5.0);
  m.morphs.assign(m.n_clusters * m.n_futures, 0.0);
  m.dormant.assign(m.n_clusters, false);
  const auto fm = j.future_marginal();
  for (std::size_t s = 0; s < m.n_clusters; ++s)
    for (std::size_t f = 0; f < m.n_futures; ++f) m.morphs[s * m.n_futures + f] = fm[f];
  m.cluster_weights.assign(m.n_clusters, 1.0 / 5.0);
  CHECK(effective_states(m) == 1);

  // push one cluster to a distinct morph but negligible weight
  m.cluster_weights = {0.2, 0.2, 0.2, 0.4 - 1e-9, 1e-9};
  for (std::size_t f = 0; f < m.n_futures; ++f)
    m.morphs[4 * m.n_futures + f] = f == 0 ? 1.0 : 0.0;
  CHECK(effective_states(m, 1e-3, 1e-6) == 1);
  CHECK(effective_states(m, 1e-3, 1e-10) == 2);
}
