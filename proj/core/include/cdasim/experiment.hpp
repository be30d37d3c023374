#pragma once

#include <map>
#include <string>
#include <vector>

#include "cdasim/session.hpp"

namespace cdasim {

// One market configuration inside an experiment (e.g. a sweep point or a
// supply/demand scenario).
struct ExperimentPoint {
  std::string name;
  SessionConfig config;
};

// A pairwise profit comparison evaluated over trials. Within-point when
// point_a == point_b, across markets otherwise. `test` is "welch" or
// "mann_whitney".
struct Comparison {
  std::string point_a;
  std::string strategy_a;
  std::string point_b;
  std::string strategy_b;
  std::string test{"welch"};
};

struct Experiment {
  std::string name;
  std::string description;
  std::vector<ExperimentPoint> points;
  std::vector<Comparison> comparisons;
  int default_trials{100};
};

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
// Throws ConfigError on an unknown name. `data_dir` is searched for the
// profiled reaction time table.
Experiment make_preset(const std::string& name, const std::string& data_dir = "data");

// Wraps a standalone session config as a single-point experiment.
Experiment experiment_from_config(const SessionConfig& cfg, const std::string& name);

struct PointResult {
  std::string point;
  // per strategy: one entry per trial, mean profit per trader of the strategy
  std::map<std::string, std::vector<double>> per_trial_profit;
  SessionRecord first_trial;  // full record of trial 0, for event-level output
  std::int64_t theoretical_max_surplus_per_period{0};
};

struct ComparisonResult {
  Comparison comparison;
  double p_value{1.0};
  double mean_a{0.0};
  double mean_b{0.0};
};

struct ExperimentResult {
  std::string experiment;
  int trials{0};
  std::vector<PointResult> points;
  std::vector<ComparisonResult> comparisons;
};

// Runs `trials` independent sessions per point. Trial seeds derive from
// (seed, point index, trial index), so results are reproducible for any
// parallelism level.
ExperimentResult run_experiment(const Experiment& exp, int trials, std::uint64_t seed,
                                int parallel = 1);

const PointResult* find_point(const ExperimentResult& res, const std::string& name);

// Writes trades/quotes/profits per point plus summary.csv and comparison.csv
// into out_dir/<experiment name>/.
void write_experiment_output(const ExperimentResult& res, const Experiment& exp,
                             const std::string& out_dir);

// Reads strategy,reaction_time_us rows (header line expected).
std::map<std::string, double> load_reaction_times_csv(const std::string& path);

}  // namespace cdasim
