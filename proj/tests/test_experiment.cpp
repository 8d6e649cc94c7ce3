#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ycs/experiment.hpp"

using namespace ycs;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.task = MuxVariant::kStandard;
  config.k = 2;
  config.params.population_size = 60;
  config.params.mode = RuleMode::kMulti;
  config.num_exploit_trials = 400;
  config.num_runs = 3;
  config.seed = 900;
  return config;
}

}  // namespace

TEST_CASE("moving average with warm-up prefix") {
  const std::vector<std::uint8_t> ones(10, 1);
  for (double v : moving_average(ones, 50)) CHECK(v == 1.0);

  const std::vector<std::uint8_t> pair{0, 1};
  const auto ma = moving_average(pair, 2);
  CHECK(ma == std::vector<double>{0.0, 0.5});

  std::vector<std::uint8_t> alternating(200);
  for (std::size_t i = 0; i < alternating.size(); ++i) {
    alternating[i] = i % 2;
  }
  const auto alt = moving_average(alternating, 50);
  for (std::size_t i = 49; i < alt.size(); ++i) {
    CHECK(alt[i] == doctest::Approx(0.5).epsilon(0.02));
  }

  // Sliding window leaves old values behind.
  const std::vector<std::uint8_t> step{1, 1, 1, 0, 0, 0};
  const auto ms = moving_average(step, 3);
  CHECK(ms[2] == doctest::Approx(1.0));
  CHECK(ms[5] == doctest::Approx(0.0));
}

TEST_CASE("moving average has the prefix property") {
  std::vector<std::uint8_t> series;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) series.push_back(rng() & 1);
  const auto full = moving_average(series, 50);
  for (const std::size_t cut : {1u, 7u, 50u, 299u}) {
    const auto part = moving_average(
        std::span<const std::uint8_t>(series.data(), cut), 50);
    for (std::size_t i = 0; i < cut; ++i) CHECK(part[i] == full[i]);
  }
}

TEST_CASE("time to optimality finds the first sustained streak") {
  const std::vector<std::uint8_t> perfect(100, 1);
  CHECK(time_to_optimality(perfect, 50) == 0);

  std::vector<std::uint8_t> blip(200, 1);
  blip[10] = 0;
  CHECK(time_to_optimality(blip, 50) == 11);

  std::vector<std::uint8_t> hopeless(200, 1);
  for (std::size_t i = 0; i < hopeless.size(); i += 40) hopeless[i] = 0;
  CHECK_FALSE(time_to_optimality(hopeless, 50).has_value());

  // Non-decreasing in the hold length.
  std::vector<std::uint8_t> series;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) series.push_back(rng() % 4 != 0);
  std::int64_t previous = -1;
  for (int hold = 1; hold <= 12; ++hold) {
    const auto t = time_to_optimality(series, hold);
    if (!t) break;
    CHECK(*t >= previous);
    previous = *t;
  }
}

TEST_CASE("aggregate averages runs pointwise and censors missing tto") {
  ExperimentConfig config = small_config();
  config.num_exploit_trials = 4;
  config.num_runs = 2;

  RunResult low;
  low.correct = {0, 0, 0, 0};
  low.performance = {0.0, 0.0, 0.0, 0.0};
  low.specificity = {0.5, 0.5, 0.5, 0.5};
  low.mean_error = {10, 10, 10, 10};
  low.time_to_optimality = std::nullopt;

  RunResult high;
  high.correct = {1, 1, 1, 1};
  high.performance = {1.0, 1.0, 1.0, 1.0};
  high.specificity = {0.25, 0.25, 0.25, 0.25};
  high.mean_error = {0, 0, 0, 0};
  high.time_to_optimality = 1;

  const ExperimentResult ab = aggregate(config, {low, high});
  for (double v : ab.performance) CHECK(v == 0.5);
  for (double v : ab.specificity) CHECK(v == doctest::Approx(0.375));
  for (double v : ab.mean_error) CHECK(v == doctest::Approx(5.0));
  CHECK(ab.tto_censored == std::vector<double>{4.0, 1.0});
  CHECK(ab.censored_runs == 1);

  // Permutation invariance over run order.
  const ExperimentResult ba = aggregate(config, {high, low});
  CHECK(ba.performance == ab.performance);
  CHECK(ba.specificity == ab.specificity);

  // A single run aggregates to itself.
  const ExperimentResult solo = aggregate(config, {high});
  CHECK(solo.performance == high.performance);
  CHECK(solo.censored_runs == 0);
}

TEST_CASE("run_single is deterministic and matches its own moving average") {
  const ExperimentConfig config = small_config();
  const RunResult a = run_single(config, 0);
  const RunResult b = run_single(config, 0);
  CHECK(a.correct == b.correct);
  CHECK(a.performance == b.performance);
  CHECK(a.specificity == b.specificity);
  CHECK(a.mean_error == b.mean_error);
  CHECK(a.time_to_optimality == b.time_to_optimality);

  // Different run index, different stream.
  const RunResult c = run_single(config, 1);
  CHECK(a.correct != c.correct);

  // The recorded series equals the reference op applied to the full
  // correctness series.
  const auto reference = moving_average(a.correct, config.ma_window);
  REQUIRE(a.performance.size() == reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    CHECK(a.performance[i] == reference[i]);
  }
  CHECK(a.time_to_optimality ==
        time_to_optimality(a.correct, config.optimality_hold));
}

TEST_CASE("zero trials produce empty series") {
  ExperimentConfig config = small_config();
  config.num_exploit_trials = 0;
  const RunResult run = run_single(config, 0);
  CHECK(run.correct.empty());
  CHECK(run.performance.empty());
  CHECK_FALSE(run.time_to_optimality.has_value());
}

TEST_CASE("metric stride subsamples the recorded grid") {
  ExperimentConfig config = small_config();
  config.num_exploit_trials = 10;
  config.metric_stride = 3;
  CHECK(config.recorded_points() == 4);  // trials 0, 3, 6, 9
  CHECK(config.recorded_trial(3) == 9);
  const RunResult strided = run_single(config, 0);
  CHECK(strided.performance.size() == 4);
  CHECK(strided.correct.size() == 10);  // full resolution underneath

  config.metric_stride = 1;
  const RunResult full = run_single(config, 0);
  for (int i = 0; i < 4; ++i) {
    CHECK(strided.performance[i] == full.performance[3 * i]);
  }
}

TEST_CASE("parallel execution does not change the result") {
  const ExperimentConfig config = small_config();
  const ExperimentResult serial = run_experiment(config, 1);
  const ExperimentResult parallel = run_experiment(config, 3);
  CHECK(serial.performance == parallel.performance);
  CHECK(serial.tto_censored == parallel.tto_censored);
  for (int i = 0; i < config.num_runs; ++i) {
    CHECK(serial.runs[i].correct == parallel.runs[i].correct);
  }
  // Per-run series equal the standalone computation: runs are
  // independent of each other.
  for (int i = 0; i < config.num_runs; ++i) {
    CHECK(serial.runs[i].correct == run_single(config, i).correct);
  }
}

TEST_CASE("a pre-seeded optimal population is perfect from trial zero") {
  // The 16 optimal TRADITIONAL rules for the 6-bit multiplexer: for
  // every address and indexed-bit value, one rule per action with
  // reward 1000 (correct) or 0 (incorrect) and zero error.
  ExperimentConfig config;
  config.task = MuxVariant::kStandard;
  config.k = 2;
  config.params.population_size = 16;
  config.params.mode = RuleMode::kTraditional;
  config.params.ga_threshold = 1e18;  // GA disabled
  config.num_exploit_trials = 300;
  config.seed = 12;

  std::vector<Rule> rules;
  for (int address = 0; address < 4; ++address) {
    for (int value = 0; value < 2; ++value) {
      TernaryCondition condition(6);
      condition.set(0, address & 2 ? Trit::kOne : Trit::kZero);
      condition.set(1, address & 1 ? Trit::kOne : Trit::kZero);
      condition.set(2 + address, value ? Trit::kOne : Trit::kZero);
      for (int action = 0; action < 2; ++action) {
        Rule rule;
        rule.condition = condition;
        rule.action = action;
        rule.ledgers.assign(
            1, ActionLedger{action == value ? 1000.0 : 0.0, 0.0});
        rule.niche_size = 10.0;
        rules.push_back(rule);
      }
    }
  }

  const MultiplexerEnv env = config.make_env();
  YcsEngine engine(config.params, env.input_length(), env.action_count(),
                   config.run_seed(0));
  engine.set_rules(rules);
  const RunResult run = run_with_engine(engine, env, config);
  for (std::uint8_t c : run.correct) REQUIRE(c == 1);
  CHECK(run.time_to_optimality == 0);
  CHECK(run.performance.back() == 1.0);
  CHECK(engine.cover_events() == 0);
  CHECK(engine.ga_invocations() == 0);
}

TEST_CASE("first_trial_at_level scans the recorded grid") {
  ExperimentConfig config = small_config();
  config.metric_stride = 2;
  RunResult run;
  run.performance = {0.1, 0.4, 0.99, 1.0};
  CHECK(first_trial_at_level(config, run, 0.99) == 4);
  CHECK(first_trial_at_level(config, run, 0.3) == 2);
  CHECK_FALSE(first_trial_at_level(config, run, 1.01).has_value());
}
