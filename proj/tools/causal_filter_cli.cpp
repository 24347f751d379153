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

// Command-line surface for the causal-filter pipeline.
//
//   causal-filter generate --process golden_mean --length 100 --seed 1 --out DIR
//   causal-filter exact    --process even --history 3 --future 2 --out DIR
//   causal-filter ocf      --process period4 --out DIR
//   causal-filter oce      --process golden_mean --length 100 --seed 7 --out DIR
//
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "causal_filter/causal_filter.hpp"

namespace cf = causal_filter;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonOptions {
  std::string process;
  std::string spec_path;
  int history = 3;
  int future = 2;
  double lambda_start = 10.0;
  double rate = 0.952;
  double lambda_end = 1e-3;
  int restarts = 4;
  std::uint64_t seed = 0;
  int max_clusters = 0;  // 0: use k^K
  double merge_tol = 1e-3;
  double weight_floor = 1e-6;
  std::string out_dir;
};

void add_process_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--process", opt.process,
                  "builtin process: period4, golden_mean, even, rrxor");
  cmd->add_option("--spec", opt.spec_path, "path to a process spec JSON file");
}

void add_window_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--history", opt.history, "history length K")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--future", opt.future, "future length L")
      ->check(CLI::PositiveNumber);
}

void add_schedule_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--lambda-start", opt.lambda_start, "initial temperature");
  cmd->add_option("--rate", opt.rate, "annealing rate in (0,1)");
  cmd->add_option("--lambda-end", opt.lambda_end, "final temperature");
  cmd->add_option("--restarts", opt.restarts, "perturbed restarts per lambda");
  cmd->add_option("--max-clusters", opt.max_clusters,
                  "cluster budget (default k^K)");
  cmd->add_option("--merge-tol", opt.merge_tol,
                  "morph merge tolerance for effective-state counting");
  cmd->add_option("--weight-floor", opt.weight_floor,
                  "weight floor for effective-state counting");
}

cf::HiddenMarkovProcess resolve_process(const CommonOptions& opt) {
  if (!opt.process.empty() && !opt.spec_path.empty())
    throw CLI::ValidationError("--process and --spec are mutually exclusive");
  if (!opt.process.empty()) {
    const auto builtin = cf::builtin_from_string(opt.process);
    if (!builtin)
      throw CLI::ValidationError("unknown process '" + opt.process + "'");
    return cf::build_builtin(*builtin);
  }
  if (!opt.spec_path.empty())
    return cf::process_from_json(cf::read_file(opt.spec_path));
  throw CLI::ValidationError("one of --process or --spec is required");
}

cf::AnnealingSchedule resolve_schedule(const CommonOptions& opt) {
  cf::AnnealingSchedule sched;
  sched.lambda_start = opt.lambda_start;
  sched.rate = opt.rate;
  sched.lambda_end = opt.lambda_end;
  sched.restarts = opt.restarts;
  sched.seed = opt.seed;
  sched.validate();
  return sched;
}

fs::path prepare_out_dir(const CommonOptions& opt) {
  if (opt.out_dir.empty())
    throw CLI::ValidationError("--out DIR is required");
  fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

int run_generate(const CommonOptions& opt, std::size_t length) {
  const auto hmm = resolve_process(opt);
  const auto dir = prepare_out_dir(opt);
  const auto series = cf::sample_series(hmm, length, opt.seed);
  cf::atomic_write_file(dir / "series.txt", cf::series_to_text(series));
  std::cout << "wrote " << (dir / "series.txt").string() << "\n";
  return kExitOk;
}

int run_exact(const CommonOptions& opt) {
  const auto hmm = resolve_process(opt);
  const auto dir = prepare_out_dir(opt);
  const auto joint = cf::exact_joint(hmm, opt.history, opt.future);
  const auto partition = cf::causal_partition(joint);

  cf::atomic_write_file(dir / "joint.csv", cf::word_joint_to_csv(joint));
  cf::atomic_write_file(
      dir / "partition.json",
      cf::partition_to_json(partition, joint.alphabet_size, opt.history,
                            opt.future));

  const auto hm = joint.history_marginal();
  nlohmann::ordered_json summary;
  summary["process"] = hmm.name;
  summary["history_length"] = opt.history;
  summary["future_length"] = opt.future;
  summary["excess_entropy"] = cf::excess_entropy(joint);
  summary["statistical_complexity"] = cf::statistical_complexity(partition);
  summary["history_block_entropy"] =
      cf::entropy(std::span<const double>(hm));
  summary["n_causal_states"] = partition.n_states();
  cf::atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int run_ocf(const CommonOptions& opt) {
  const auto hmm = resolve_process(opt);
  const auto dir = prepare_out_dir(opt);
  const auto joint = cf::exact_joint(hmm, opt.history, opt.future);
  const auto sched = resolve_schedule(opt);
  const std::size_t clusters =
      opt.max_clusters > 0 ? static_cast<std::size_t>(opt.max_clusters)
                           : joint.n_histories();

  const auto curve = cf::anneal_trace(joint, sched, clusters, opt.merge_tol,
                                      opt.weight_floor);
  const auto markers = cf::first_occurrence_markers(curve);

  cf::atomic_write_file(dir / "curve.csv", cf::curve_to_csv(curve));
  cf::atomic_write_file(dir / "markers.json", cf::markers_to_json(markers));
  cf::atomic_write_file(
      dir / "partition.json",
      cf::partition_to_json(curve.terminal_partition, joint.alphabet_size,
                            opt.history, opt.future));
  cf::atomic_write_file(dir / "model.json",
                        cf::model_to_json(curve.terminal_model));
  std::cout << "traced " << curve.points.size() << " points; terminal states: "
            << curve.terminal_partition.n_states() << "\n";
  return kExitOk;
}

int run_oce(const CommonOptions& opt, const std::string& data_path,
            std::size_t length, int nc_min, int nc_max, int chains) {
  const auto dir = prepare_out_dir(opt);

  cf::SymbolSeries series;
  if (!data_path.empty()) {
    series = cf::series_from_text(cf::read_file(data_path));
  } else {
    const auto hmm = resolve_process(opt);
    series = cf::sample_series(hmm, length, opt.seed);
  }

  const auto estimate = cf::empirical_joint(series, opt.history, opt.future);
  const auto sched = resolve_schedule(opt);
  if (nc_min < 1 || nc_max < nc_min)
    throw CLI::ValidationError("need 1 <= --nc-min <= --nc-max");
  std::vector<int> range;
  for (int n = nc_min; n <= nc_max; ++n) range.push_back(n);

  const auto table = cf::corrected_curve(estimate, range, sched, chains);
  cf::atomic_write_file(dir / "selection.csv", cf::selection_to_csv(table));
  cf::atomic_write_file(
      dir / "partition.json",
      cf::partition_to_json(table.winning_partition, estimate.alphabet_size,
                            opt.history, opt.future));
  std::cout << "selected N_c = " << table.chosen_n << " (M = "
            << estimate.window_count << " windows)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal causal filtering and estimation for discrete processes"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::size_t length = 100;
  std::string data_path;
  int nc_min = 1, nc_max = 6, chains = 10;

  app.add_option("--seed", opt.seed, "master random seed");
  app.add_option("--out", opt.out_dir, "output directory");

  auto* generate = app.add_subcommand("generate", "sample a symbol series");
  add_process_flags(generate, opt);
  generate->add_option("--length", length, "series length T")
      ->check(CLI::PositiveNumber);

  auto* exact = app.add_subcommand("exact", "exact joint, causal states, summary");
  add_process_flags(exact, opt);
  add_window_flags(exact, opt);

  auto* ocf = app.add_subcommand("ocf", "trace the information-plane curve");
  add_process_flags(ocf, opt);
  add_window_flags(ocf, opt);
  add_schedule_flags(ocf, opt);

  auto* oce = app.add_subcommand("oce", "finite-sample state-count selection");
  add_process_flags(oce, opt);
  add_window_flags(oce, opt);
  add_schedule_flags(oce, opt);
  oce->add_option("--data", data_path, "existing series file (digits)");
  oce->add_option("--length", length, "series length T when sampling")
      ->check(CLI::PositiveNumber);
  oce->add_option("--nc-min", nc_min, "smallest candidate state count");
  oce->add_option("--nc-max", nc_max, "largest candidate state count");
  oce->add_option("--chains", chains, "independent runs per candidate count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (generate->parsed()) return run_generate(opt, length);
    if (exact->parsed()) return run_exact(opt);
    if (ocf->parsed()) return run_ocf(opt);
    if (oce->parsed())
      return run_oce(opt, data_path, length, nc_min, nc_max, chains);
    return kExitConfig;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
