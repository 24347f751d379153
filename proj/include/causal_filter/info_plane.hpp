// causal_filter/info_plane.hpp
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

#ifndef CAUSAL_FILTER_INFO_PLANE_HPP
#define CAUSAL_FILTER_INFO_PLANE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "causal_filter/ib_core.hpp"
#include "causal_filter/word_joint.hpp"

namespace causal_filter {

struct AnnealingSchedule {
  double lambda_start = 10.0;
  double rate = 0.952;
  double lambda_end = 1e-3;
  int restarts = 4;  // perturbed warm starts per lambda, best objective kept
  std::uint64_t seed = 0;

  void validate() const {
    if (!(lambda_start > 0.0) || !(lambda_end > 0.0))
      throw std::invalid_argument("AnnealingSchedule: lambdas must be positive");
    if (!(lambda_end < lambda_start))
      throw std::invalid_argument("AnnealingSchedule: lambda_end >= lambda_start");
    if (!(rate > 0.0 && rate < 1.0))
      throw std::invalid_argument("AnnealingSchedule: rate outside (0,1)");
    if (restarts < 1)
      throw std::invalid_argument("AnnealingSchedule: restarts < 1");
  }
};

struct CurvePoint {
  double lambda = 0.0;
  double i_past_state = 0.0;
  double i_state_future = 0.0;
  int n_effective = 0;
  double objective = 0.0;
  bool converged = true;
};

// Trace of solutions across the annealing run, lambda strictly decreasing.
// The terminal entries hold the model at the last lambda and its
// deterministic-limit partition.
struct InfoPlaneCurve {
  std::vector<CurvePoint> points;
  SoftModel terminal_model;
  Partition terminal_partition;
};

// Deterministic-annealing driver.  Starts from a perturbed-uniform model at
// lambda_start; at every lambda it converges `restarts` freshly perturbed
// copies of the warm start and keeps the best objective; the deterministic
// limit is taken as the hard assignment of the final converged model rather
// than iterating at lambda = 0, where the assignment rule is singular.
inline InfoPlaneCurve anneal_trace(const WordJoint& j,
                                   const AnnealingSchedule& sched,
                                   std::size_t max_clusters,
                                   double merge_tol = 1e-3,
                                   double weight_floor = 1e-6,
                                   double converge_tol = 1e-10,
                                   std::size_t max_sweeps = 10000) {
  sched.validate();
  if (max_clusters < 1) throw std::invalid_argument("anneal_trace: clusters");

  InfoPlaneCurve curve;
  SoftModel current = init_soft_model(
      j, max_clusters, sched.lambda_start, mix_seed(sched.seed, 0xa11eadu));

  double lambda = sched.lambda_start;
  std::size_t step = 0;
  while (lambda >= sched.lambda_end) {
    SoftModel best;
    ConvergenceReport best_report;
    bool have_best = false;
    for (int r = 0; r < sched.restarts; ++r) {
      SoftModel candidate = current;
      candidate.lambda = lambda;
      perturb_model(j, candidate, mix_seed(sched.seed, step, r));
      auto [converged_model, report] =
          ib_converge(j, std::move(candidate), converge_tol, max_sweeps);
      if (!have_best || report.objective > best_report.objective) {
        best = std::move(converged_model);
        best_report = report;
        have_best = true;
      }
    }
    current = std::move(best);

    CurvePoint point;
    point.lambda = lambda;
    point.i_past_state = past_state_information(j, current);
    point.i_state_future = state_future_information(j, current);
    point.n_effective = effective_states(current, merge_tol, weight_floor);
    point.objective = best_report.objective;
    point.converged = best_report.converged;
    curve.points.push_back(point);

    lambda *= sched.rate;
    ++step;
  }
  if (curve.points.empty())
    throw std::logic_error("anneal_trace: empty schedule");

  curve.terminal_model = current;
  curve.terminal_partition = hard_assignment(j, current);
  return curve;
}

// Earliest (largest-lambda) point at which each effective-state count
// appears; keys are the observed counts.
inline std::map<int, std::pair<double, std::size_t>> first_occurrence_markers(
    const InfoPlaneCurve& curve) {
  if (curve.points.empty())
    throw std::invalid_argument("first_occurrence_markers: empty curve");
  std::map<int, std::pair<double, std::size_t>> markers;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    if (!markers.count(p.n_effective))
      markers[p.n_effective] = {p.lambda, i};
  }
  return markers;
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_INFO_PLANE_HPP
