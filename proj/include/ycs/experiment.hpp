#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ycs/engine.hpp"
#include "ycs/multiplexer.hpp"

namespace ycs {

// A full experiment: one task, one parameterization, num_runs
// independent seeded runs of alternating explore/exploit cycles.
struct ExperimentConfig {
  LcsParams params;
  MuxVariant task = MuxVariant::kStandard;
  int k = 4;
  double bias = 0.8;  // imbalanced task only
  std::int64_t num_exploit_trials = 0;
  int num_runs = 20;
  std::uint64_t seed = 0;
  int ma_window = 50;
  int optimality_hold = 50;
  int metric_stride = 1;  // record every Nth exploit trial
  bool capture_rule_dump = false;

  MultiplexerEnv make_env() const { return MultiplexerEnv(k, task, bias); }
  std::uint64_t run_seed(int run_index) const {
    return seed + static_cast<std::uint64_t>(run_index);
  }
  std::int64_t recorded_points() const {
    return (num_exploit_trials + metric_stride - 1) / metric_stride;
  }
  std::int64_t recorded_trial(std::int64_t point) const {
    return point * metric_stride;
  }
};

struct RunResult {
  std::vector<std::uint8_t> correct;  // per exploit trial, stride-free
  std::vector<double> performance;    // running average, recorded points
  std::vector<double> specificity;    // population mean, recorded points
  std::vector<double> mean_error;     // mean ledger error, recorded points
  std::optional<std::int64_t> time_to_optimality;
  std::string rule_dump;  // final population, when requested
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunResult> runs;
  // Pointwise means across runs, on the recorded grid.
  std::vector<double> performance;
  std::vector<double> specificity;
  std::vector<double> mean_error;
  // Per-run time to optimality; runs that never reach it contribute a
  // censored sample equal to num_exploit_trials.
  std::vector<double> tto_censored;
  int censored_runs = 0;
};

// Mean of the trailing `window` values; the warm-up prefix uses however
// many values exist so the series starts at index 0.
std::vector<double> moving_average(std::span<const std::uint8_t> series,
                                   int window);

// Smallest index t with series[t .. t+hold-1] all correct.
std::optional<std::int64_t> time_to_optimality(
    std::span<const std::uint8_t> series, int hold);

// One seeded run; deterministic given (config, run_index).
RunResult run_single(const ExperimentConfig& config, int run_index);

// Same loop against a caller-built engine (e.g. a pre-seeded population).
RunResult run_with_engine(YcsEngine& engine, const Environment& env,
                          const ExperimentConfig& config);

ExperimentResult aggregate(const ExperimentConfig& config,
                           std::vector<RunResult> runs);

// Runs all num_runs runs, `jobs` at a time (0 = hardware concurrency),
// and aggregates. Output is independent of the parallelism level.
ExperimentResult run_experiment(const ExperimentConfig& config, int jobs = 0);

// First recorded trial whose running-average performance reaches
// `level`, if any.
std::optional<std::int64_t> first_trial_at_level(const ExperimentConfig& config,
                                                 const RunResult& run,
                                                 double level);

}  // namespace ycs
