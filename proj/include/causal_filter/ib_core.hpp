// causal_filter/ib_core.hpp
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

#ifndef CAUSAL_FILTER_IB_CORE_HPP
#define CAUSAL_FILTER_IB_CORE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "causal_filter/causal_states.hpp"
#include "causal_filter/info_theory.hpp"
#include "causal_filter/rng.hpp"
#include "causal_filter/word_joint.hpp"

namespace causal_filter {

constexpr double kDormantWeight = 1e-12;

// Stochastic assignment of histories to clusters together with the cluster
// weights and morphs it induces.  Rows of q sum to one; rows belonging to
// zero-mass histories are kept at the uniform distribution and never enter
// the weight or morph sums.
struct SoftModel {
  double lambda = 0.0;
  std::size_t n_histories = 0;
  std::size_t n_clusters = 0;
  std::size_t n_futures = 0;
  std::vector<double> q;                // row-major [history][cluster]
  std::vector<double> cluster_weights;  // p(s)
  std::vector<double> morphs;           // row-major [cluster][future]
  std::vector<bool> dormant;            // p(s) fell below kDormantWeight

  double q_at(std::size_t h, std::size_t s) const {
    return q[h * n_clusters + s];
  }
  std::span<const double> morph(std::size_t s) const {
    return {morphs.data() + s * n_futures, n_futures};
  }
};

namespace detail {

// Divergence in bits from a history's conditional to a morph, given the
// conditional's entropy.  +infinity when the morph misses support.
inline double divergence_to_morph(std::span<const double> cond,
                                  double cond_entropy,
                                  std::span<const double> morph) {
  double cross = 0.0;
  for (std::size_t f = 0; f < cond.size(); ++f) {
    if (cond[f] > 0.0) {
      if (morph[f] <= 0.0) return std::numeric_limits<double>::infinity();
      cross -= cond[f] * std::log2(morph[f]);
    }
  }
  const double d = cross - cond_entropy;
  return d < 0.0 ? 0.0 : d;
}

struct JointView {
  std::vector<double> history_mass;
  std::vector<double> future_marginal;
  std::vector<std::vector<double>> conditionals;  // empty for zero-mass rows
  std::vector<double> conditional_entropy;

  explicit JointView(const WordJoint& j)
      : history_mass(j.history_marginal()),
        future_marginal(j.future_marginal()),
        conditionals(j.n_histories()),
        conditional_entropy(j.n_histories(), 0.0) {
    for (std::size_t h = 0; h < j.n_histories(); ++h) {
      if (history_mass[h] > 0.0) {
        conditionals[h] = j.conditional_future(h);
        conditional_entropy[h] =
            entropy(std::span<const double>(conditionals[h]));
      }
    }
  }
};

// Recomputes cluster weights and morphs from q (the self-consistency
// conditions for p(s) and P(future|s)).  Clusters whose weight collapses
// keep their previous morph and are flagged dormant.
inline void refresh(const WordJoint& j, const JointView& view, SoftModel& m) {
  const std::size_t R = m.n_histories, N = m.n_clusters, C = m.n_futures;
  std::vector<double> weights(N, 0.0);
  std::vector<double> morphs(N * C, 0.0);
  for (std::size_t h = 0; h < R; ++h) {
    const double ph = view.history_mass[h];
    if (ph <= 0.0) continue;
    const double* qrow = m.q.data() + h * N;
    for (std::size_t s = 0; s < N; ++s) {
      const double w = qrow[s];
      if (w <= 0.0) continue;
      weights[s] += ph * w;
      for (std::size_t f = 0; f < C; ++f) morphs[s * C + f] += w * j.at(h, f);
    }
  }
  m.dormant.assign(N, false);
  for (std::size_t s = 0; s < N; ++s) {
    if (weights[s] < kDormantWeight) {
      m.dormant[s] = true;  // morph row keeps its previous value
      for (std::size_t f = 0; f < C; ++f) morphs[s * C + f] = m.morphs[s * C + f];
    } else {
      for (std::size_t f = 0; f < C; ++f) morphs[s * C + f] /= weights[s];
    }
  }
  m.cluster_weights = std::move(weights);
  m.morphs = std::move(morphs);
}

// One optimal-assignment sweep at fixed lambda: q(s|h) is proportional to
// p(s) 2^(-D[P(.|h) || morph_s]/lambda), normalized per history by the
// partition function.  Computed through shifted exponentials so that large
// divergences underflow to exact zeros instead of producing 0/0.
inline void update_assignments(const JointView& view, SoftModel& m) {
  const std::size_t R = m.n_histories, N = m.n_clusters;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double bits_to_nats = std::log(2.0) / m.lambda;
  std::vector<double> logits(N);
  for (std::size_t h = 0; h < R; ++h) {
    if (view.history_mass[h] <= 0.0) continue;
    const auto& cond = view.conditionals[h];
    double best = kNegInf;
    for (std::size_t s = 0; s < N; ++s) {
      const double ps = m.cluster_weights[s];
      if (ps <= 0.0) {
        logits[s] = kNegInf;
        continue;
      }
      const double d = divergence_to_morph(cond, view.conditional_entropy[h],
                                           m.morph(s));
      logits[s] = std::isinf(d) ? kNegInf : std::log(ps) - d * bits_to_nats;
      if (logits[s] > best) best = logits[s];
    }
    if (best == kNegInf)
      throw std::domain_error(
          "ib update: no cluster has finite divergence for history " +
          std::to_string(h));
    double z = 0.0;
    double* qrow = m.q.data() + h * N;
    for (std::size_t s = 0; s < N; ++s) {
      qrow[s] = logits[s] == kNegInf ? 0.0 : std::exp(logits[s] - best);
      z += qrow[s];
    }
    for (std::size_t s = 0; s < N; ++s) qrow[s] /= z;
  }
}

inline double past_state_information(const JointView& view,
                                     const SoftModel& m) {
  double info = 0.0;
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    const double ph = view.history_mass[h];
    if (ph <= 0.0) continue;
    const double* qrow = m.q.data() + h * m.n_clusters;
    for (std::size_t s = 0; s < m.n_clusters; ++s) {
      if (qrow[s] > 0.0 && m.cluster_weights[s] > 0.0)
        info += ph * qrow[s] * std::log2(qrow[s] / m.cluster_weights[s]);
    }
  }
  return info < 0.0 && info > -1e-12 ? 0.0 : info;
}

inline double state_future_information(const JointView& view,
                                       const SoftModel& m) {
  double info = 0.0;
  for (std::size_t s = 0; s < m.n_clusters; ++s) {
    const double ps = m.cluster_weights[s];
    if (ps <= 0.0) continue;
    const auto morph = m.morph(s);
    for (std::size_t f = 0; f < m.n_futures; ++f) {
      if (morph[f] > 0.0 && view.future_marginal[f] > 0.0)
        info += ps * morph[f] * std::log2(morph[f] / view.future_marginal[f]);
    }
  }
  return info < 0.0 && info > -1e-12 ? 0.0 : info;
}

}  // namespace detail

// Perturbed-uniform initial model: every positive-mass row is the uniform
// distribution scaled entrywise by (1 + sigma u), u ~ Uniform(-1,1), then
// renormalized.  Symmetry breaking is required; exactly uniform rows are a
// fixed point at every lambda.
inline SoftModel init_soft_model(const WordJoint& j, std::size_t n_clusters,
                                 double lambda, std::uint64_t seed,
                                 double sigma = 0.01) {
  if (n_clusters < 1) throw std::invalid_argument("init_soft_model: clusters");
  detail::JointView view(j);
  SoftModel m;
  m.lambda = lambda;
  m.n_histories = j.n_histories();
  m.n_clusters = n_clusters;
  m.n_futures = j.n_futures();
  m.q.assign(m.n_histories * n_clusters, 1.0 / static_cast<double>(n_clusters));
  m.morphs.assign(n_clusters * m.n_futures, 0.0);
  Rng rng(mix_seed(seed, 0x1b17u));
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    if (view.history_mass[h] <= 0.0) continue;
    double* qrow = m.q.data() + h * n_clusters;
    double sum = 0.0;
    for (std::size_t s = 0; s < n_clusters; ++s) {
      qrow[s] *= 1.0 + sigma * rng.next_signed();
      sum += qrow[s];
    }
    for (std::size_t s = 0; s < n_clusters; ++s) qrow[s] /= sum;
  }
  detail::refresh(j, view, m);
  return m;
}

// Multiplicative noise on the assignment rows of positive-mass histories,
// followed by renormalization and a refresh.
inline void perturb_model(const WordJoint& j, SoftModel& m, std::uint64_t seed,
                          double sigma = 0.01) {
  detail::JointView view(j);
  Rng rng(mix_seed(seed, 0x9e27u));
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    if (view.history_mass[h] <= 0.0) continue;
    double* qrow = m.q.data() + h * m.n_clusters;
    double sum = 0.0;
    for (std::size_t s = 0; s < m.n_clusters; ++s) {
      qrow[s] *= 1.0 + sigma * rng.next_signed();
      sum += qrow[s];
    }
    for (std::size_t s = 0; s < m.n_clusters; ++s) qrow[s] /= sum;
  }
  detail::refresh(j, view, m);
}

// Builds a deterministic model from a partition; its weights and morphs then
// coincide with the partition's own.
inline SoftModel soft_model_from_partition(const WordJoint& j,
                                           const Partition& p, double lambda) {
  detail::JointView view(j);
  SoftModel m;
  m.lambda = lambda;
  m.n_histories = j.n_histories();
  m.n_clusters = static_cast<std::size_t>(p.n_states());
  m.n_futures = j.n_futures();
  m.q.assign(m.n_histories * m.n_clusters,
             1.0 / static_cast<double>(m.n_clusters));
  m.morphs.assign(m.n_clusters * m.n_futures, 0.0);
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    const int s = p.assignment[h];
    if (s < 0) continue;
    double* qrow = m.q.data() + h * m.n_clusters;
    for (std::size_t t = 0; t < m.n_clusters; ++t) qrow[t] = 0.0;
    qrow[s] = 1.0;
  }
  detail::refresh(j, view, m);
  return m;
}

// One full self-consistent sweep: assignments, then weights and morphs.
inline SoftModel ib_step(const WordJoint& j, const SoftModel& model) {
  if (!(model.lambda > 0.0))
    throw std::invalid_argument(
        "ib_step: lambda must be positive; use hard_assignment for the "
        "deterministic limit");
  detail::JointView view(j);
  SoftModel m = model;
  detail::update_assignments(view, m);
  detail::refresh(j, view, m);
  return m;
}

// Coding rate I[past;S] of the model's induced joint.
inline double past_state_information(const WordJoint& j, const SoftModel& m) {
  detail::JointView view(j);
  return detail::past_state_information(view, m);
}

// Predictive information I[S;future] of the model's induced joint.
inline double state_future_information(const WordJoint& j,
                                       const SoftModel& m) {
  detail::JointView view(j);
  return detail::state_future_information(view, m);
}

// The trade-off objective I[S;future] - lambda I[past;S].  For deterministic
// assignments I[past;S] equals H[S], giving the deterministic form.
inline double objective(const WordJoint& j, const SoftModel& m,
                        double lambda) {
  detail::JointView view(j);
  return detail::state_future_information(view, m) -
         lambda * detail::past_state_information(view, m);
}

struct ConvergenceReport {
  std::size_t iterations = 0;
  double objective = 0.0;
  double max_row_change = 0.0;
  bool converged = false;
};

// Iterates sweeps until the largest entrywise change of q drops to tol or
// the iteration cap is reached.  Non-convergence is reported, not thrown.
inline std::pair<SoftModel, ConvergenceReport> ib_converge(
    const WordJoint& j, SoftModel init, double tol = 1e-10,
    std::size_t max_iterations = 10000) {
  if (!(tol > 0.0)) throw std::invalid_argument("ib_converge: tol");
  if (!(init.lambda > 0.0)) throw std::invalid_argument("ib_converge: lambda");
  detail::JointView view(j);
  SoftModel m = std::move(init);
  std::vector<double> previous(m.q.size());
  ConvergenceReport report;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    previous = m.q;
    detail::update_assignments(view, m);
    detail::refresh(j, view, m);
    double delta = 0.0;
    for (std::size_t i = 0; i < m.q.size(); ++i)
      delta = std::max(delta, std::abs(m.q[i] - previous[i]));
    report.iterations = it + 1;
    report.max_row_change = delta;
    if (delta <= tol) {
      report.converged = true;
      break;
    }
  }
  report.objective = detail::state_future_information(view, m) -
                     m.lambda * detail::past_state_information(view, m);
  return {std::move(m), report};
}

// Deterministic limit of the model: each positive-mass history goes to the
// cluster with the smallest divergence.  Near-ties (within tie_tol bits) are
// broken toward the lowest cluster index so that clusters left as exact
// duplicates by the annealing collapse into one state.
inline Partition hard_assignment(const WordJoint& j, const SoftModel& m,
                                 double tie_tol = 1e-9) {
  detail::JointView view(j);
  std::vector<int> labels(m.n_histories, Partition::kUnassigned);
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    if (view.history_mass[h] <= 0.0) continue;
    double best = std::numeric_limits<double>::infinity();
    int best_s = -1;
    for (std::size_t s = 0; s < m.n_clusters; ++s) {
      if (m.dormant[s] || m.cluster_weights[s] <= 0.0) continue;
      const double d = detail::divergence_to_morph(
          view.conditionals[h], view.conditional_entropy[h], m.morph(s));
      if (d < best - tie_tol) {
        best = d;
        best_s = static_cast<int>(s);
      }
    }
    if (best_s < 0)
      throw std::domain_error(
          "hard_assignment: every morph is infinitely far from history " +
          std::to_string(h));
    labels[h] = best_s;
  }
  return partition_from_assignment(j, labels);
}

// Number of distinguishable clusters: greedy merge of morphs within
// merge_tol total variation, then a weight floor on the merged groups.
inline int effective_states(const SoftModel& m, double merge_tol = 1e-3,
                            double weight_floor = 1e-6) {
  std::vector<std::vector<double>> reps;
  std::vector<double> group_weight;
  for (std::size_t s = 0; s < m.n_clusters; ++s) {
    if (m.dormant[s]) continue;
    const auto morph = m.morph(s);
    bool merged = false;
    for (std::size_t g = 0; g < reps.size(); ++g) {
      if (total_variation(std::span<const double>(reps[g]), morph) <=
          merge_tol) {
        group_weight[g] += m.cluster_weights[s];
        merged = true;
        break;
      }
    }
    if (!merged) {
      reps.emplace_back(morph.begin(), morph.end());
      group_weight.push_back(m.cluster_weights[s]);
    }
  }
  int count = 0;
  for (double w : group_weight)
    if (w > weight_floor) ++count;
  return count;
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_IB_CORE_HPP
