#include "ycs/experiment.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>
#include <thread>

namespace ycs {

std::vector<double> moving_average(std::span<const std::uint8_t> series,
                                   int window) {
  assert(window >= 1);
  std::vector<double> out(series.size());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    sum += series[i];
    if (i >= static_cast<std::size_t>(window)) sum -= series[i - window];
    const auto used = std::min<std::size_t>(i + 1, window);
    out[i] = static_cast<double>(sum) / static_cast<double>(used);
  }
  return out;
}

std::optional<std::int64_t> time_to_optimality(
    std::span<const std::uint8_t> series, int hold) {
  assert(hold >= 1);
  std::int64_t streak = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    streak = series[i] ? streak + 1 : 0;
    if (streak >= hold) return static_cast<std::int64_t>(i) - hold + 1;
  }
  return std::nullopt;
}

RunResult run_with_engine(YcsEngine& engine, const Environment& env,
                          const ExperimentConfig& config) {
  RunResult run;
  const std::int64_t trials = config.num_exploit_trials;
  const std::int64_t points = config.recorded_points();
  run.correct.reserve(trials);
  run.performance.reserve(points);
  run.specificity.reserve(points);
  run.mean_error.reserve(points);

  // Running-average state over the full-resolution correctness series.
  const int window = config.ma_window;
  std::int64_t window_sum = 0;

  for (std::int64_t t = 0; t < trials; ++t) {
    engine.step(env, /*explore=*/true);
    const StepOutcome exploit = engine.step(env, /*explore=*/false);
    const std::uint8_t correct = exploit.correct ? 1 : 0;
    run.correct.push_back(correct);
    window_sum += correct;
    if (t >= window) window_sum -= run.correct[t - window];
    if (t % config.metric_stride == 0) {
      const auto used = std::min<std::int64_t>(t + 1, window);
      run.performance.push_back(static_cast<double>(window_sum) /
                                static_cast<double>(used));
      run.specificity.push_back(engine.mean_specificity());
      run.mean_error.push_back(engine.mean_error());
    }
  }
  run.time_to_optimality = time_to_optimality(run.correct,
                                              config.optimality_hold);
  if (config.capture_rule_dump) run.rule_dump = engine.dump_rules();
  return run;
}

RunResult run_single(const ExperimentConfig& config, int run_index) {
  const MultiplexerEnv env = config.make_env();
  YcsEngine engine(config.params, env.input_length(), env.action_count(),
                   config.run_seed(run_index));
  return run_with_engine(engine, env, config);
}

ExperimentResult aggregate(const ExperimentConfig& config,
                           std::vector<RunResult> runs) {
  assert(!runs.empty());
  ExperimentResult result;
  result.config = config;
  const std::size_t points = runs[0].performance.size();
  for (const RunResult& run : runs) {
    if (run.performance.size() != points) {
      throw std::invalid_argument("runs disagree on recorded series length");
    }
  }
  result.performance.assign(points, 0.0);
  result.specificity.assign(points, 0.0);
  result.mean_error.assign(points, 0.0);
  for (const RunResult& run : runs) {
    for (std::size_t i = 0; i < points; ++i) {
      result.performance[i] += run.performance[i];
      result.specificity[i] += run.specificity[i];
      result.mean_error[i] += run.mean_error[i];
    }
    if (run.time_to_optimality) {
      result.tto_censored.push_back(
          static_cast<double>(*run.time_to_optimality));
    } else {
      result.tto_censored.push_back(
          static_cast<double>(config.num_exploit_trials));
      ++result.censored_runs;
    }
  }
  const double n = static_cast<double>(runs.size());
  for (std::size_t i = 0; i < points; ++i) {
    result.performance[i] /= n;
    result.specificity[i] /= n;
    result.mean_error[i] /= n;
  }
  result.runs = std::move(runs);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs) {
  if (config.num_runs < 1) {
    throw std::invalid_argument("num_runs must be >= 1");
  }
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }
  jobs = std::min(jobs, config.num_runs);

  std::vector<RunResult> runs(config.num_runs);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= config.num_runs) return;
      runs[i] = run_single(config, i);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return aggregate(config, std::move(runs));
}

std::optional<std::int64_t> first_trial_at_level(
    const ExperimentConfig& config, const RunResult& run, double level) {
  for (std::size_t i = 0; i < run.performance.size(); ++i) {
    if (run.performance[i] >= level) {
      return config.recorded_trial(static_cast<std::int64_t>(i));
    }
  }
  return std::nullopt;
}

}  // namespace ycs
