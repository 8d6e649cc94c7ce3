#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ycs/config.hpp"
#include "ycs/report.hpp"

using namespace ycs;

namespace {

const char* kMinimalConfig =
    "task=mux\nk=4\nP=1000\nrepresentation=multi\ntrials=100000\nseed=1\n";

std::filesystem::path temp_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

ExperimentResult tiny_result(std::uint64_t seed, std::int64_t trials = 40) {
  ExperimentConfig config;
  config.task = MuxVariant::kStandard;
  config.k = 2;
  config.params.population_size = 40;
  config.params.mode = RuleMode::kTraditional;
  config.num_exploit_trials = trials;
  config.num_runs = 2;
  config.seed = seed;
  return run_experiment(config, 1);
}

ExperimentResult result_with_tto(std::vector<std::optional<std::int64_t>> ttos) {
  ExperimentConfig config;
  config.k = 2;
  config.num_exploit_trials = 100000;
  config.num_runs = static_cast<int>(ttos.size());
  std::vector<RunResult> runs;
  for (const auto& tto : ttos) {
    RunResult run;
    run.performance = {1.0};
    run.specificity = {0.25};
    run.mean_error = {0.0};
    run.correct = {1};
    run.time_to_optimality = tto;
    runs.push_back(run);
  }
  return aggregate(config, std::move(runs));
}

}  // namespace

TEST_CASE("minimal config takes the standard defaults") {
  const ExperimentConfig config = parse_config(kMinimalConfig);
  CHECK(config.task == MuxVariant::kStandard);
  CHECK(config.k == 4);
  CHECK(config.params.population_size == 1000);
  CHECK(config.params.mode == RuleMode::kMulti);
  CHECK(config.num_exploit_trials == 100000);
  CHECK(config.seed == 1);
  CHECK(config.params.p_hash == 0.6);
  CHECK(config.params.mutation_rate == 0.04);
  CHECK(config.params.fitness_exponent == 10);
  CHECK(config.params.crossover_rate == 0.5);
  CHECK(config.params.ga_threshold == 25);
  CHECK(config.params.learning_rate == 0.2);
  CHECK(config.params.panmictic_rate == 0.0);
  CHECK(config.params.ga_scope == GaScope::kNiche);
  CHECK(config.num_runs == 20);
  CHECK(config.ma_window == 50);
  CHECK(config.optimality_hold == 50);
  CHECK(config.metric_stride == 1);

  const MultiplexerEnv env = config.make_env();
  CHECK(env.input_length() == 20);  // L = k + 2^k
  CHECK(env.action_count() == 2);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const ExperimentConfig config = parse_config(
      "# figure 2 setup\n"
      "task = mux\n"
      "\n"
      "k = 4   # twenty inputs\n"
      "P = 1000\n"
      "representation = multi\n"
      "trials = 5\n"
      "seed = 7\n");
  CHECK(config.k == 4);
  CHECK(config.seed == 7);
}

TEST_CASE("config errors name the key and the legal range") {
  const auto expect_error = [](const std::string& text,
                               const char* needle) {
    try {
      parse_config(text);
      FAIL_CHECK("expected ConfigError for: " << text);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error(std::string(kMinimalConfig) + "beta=1.5\n", "beta");
  expect_error(std::string(kMinimalConfig) + "beta=1.5\n", "(0, 1]");
  expect_error(std::string(kMinimalConfig) + "beta=0\n", "beta");
  expect_error(std::string(kMinimalConfig) + "mu=-0.1\n", "[0, 1]");
  expect_error(std::string(kMinimalConfig) + "frobnicate=1\n",
               "unknown config key \"frobnicate\"");
  expect_error(std::string(kMinimalConfig) + "k=9\n", "duplicate");
  expect_error("task=mux\nk=6\nP=10\nrepresentation=multi\ntrials=1\nseed=1\n",
               "{2..5}");
  expect_error("task=mux\nk=4\nP=10\nrepresentation=multi\ntrials=1\n",
               "missing required config key \"seed\"");
  expect_error("task=warehouse\nk=4\nP=10\nrepresentation=multi\ntrials=1\nseed=1\n",
               "task");
  expect_error(
      "task=mux_imbalanced\nk=4\nP=10\nrepresentation=multi\ntrials=1\nseed=1\n",
      "bias");
  expect_error(std::string(kMinimalConfig) + "trials2=1\n", "unknown");
  expect_error(std::string(kMinimalConfig) + "nu=0.5\n", "nu");
}

TEST_CASE("overrides replace file values and are validated") {
  const ExperimentConfig config =
      parse_config(kMinimalConfig, {"P=2000", "representation=traditional",
                                    "theta_ga=inf"});
  CHECK(config.params.population_size == 2000);
  CHECK(config.params.mode == RuleMode::kTraditional);
  CHECK(std::isinf(config.params.ga_threshold));
  CHECK_THROWS_AS(parse_config(kMinimalConfig, {"beta=2"}), ConfigError);
  CHECK_THROWS_AS(parse_config(kMinimalConfig, {"bogus=2"}), ConfigError);
}

TEST_CASE("imbalanced and multi-action tasks parse their specifics") {
  const ExperimentConfig imbalanced = parse_config(
      "task=mux_imbalanced\nk=4\nbias=0.8\nP=2000\nrepresentation=multi\n"
      "trials=10\nseed=3\n");
  CHECK(imbalanced.task == MuxVariant::kImbalanced);
  CHECK(imbalanced.bias == 0.8);

  const ExperimentConfig multi = parse_config(
      "task=mux_multi\nk=3\nP=2000\nrepresentation=traditional\ntrials=10\n"
      "seed=3\n");
  CHECK(multi.make_env().action_count() == 9);

  const ExperimentConfig asym = parse_config(
      "task=mux_asym\nk=5\nP=5000\nrepresentation=multi\ntrials=10\nseed=3\n");
  CHECK(asym.make_env().input_length() == 38);
}

TEST_CASE("config items round-trip through the parser") {
  const ExperimentConfig original = parse_config(
      "task=mux_imbalanced\nk=3\nbias=0.75\nP=456\nrepresentation=multi\n"
      "trials=777\nseed=99\nmu=0.05\nnu=12\nchi=0.45\ntheta_ga=30\n"
      "beta=0.3\ng=0.25\nga_scope=panmictic\nruns=7\nma_window=20\n"
      "optimality_hold=25\nmetric_stride=4\np_hash=0.55\n");
  std::ostringstream text;
  for (const auto& [key, value] : config_items(original)) {
    text << key << " = " << value << "\n";
  }
  const ExperimentConfig reparsed = parse_config(text.str());
  CHECK(reparsed.task == original.task);
  CHECK(reparsed.bias == original.bias);
  CHECK(reparsed.params.population_size == original.params.population_size);
  CHECK(reparsed.params.p_hash == original.params.p_hash);
  CHECK(reparsed.params.mutation_rate == original.params.mutation_rate);
  CHECK(reparsed.params.fitness_exponent == original.params.fitness_exponent);
  CHECK(reparsed.params.crossover_rate == original.params.crossover_rate);
  CHECK(reparsed.params.ga_threshold == original.params.ga_threshold);
  CHECK(reparsed.params.learning_rate == original.params.learning_rate);
  CHECK(reparsed.params.panmictic_rate == original.params.panmictic_rate);
  CHECK(reparsed.params.ga_scope == original.params.ga_scope);
  CHECK(reparsed.num_exploit_trials == original.num_exploit_trials);
  CHECK(reparsed.num_runs == original.num_runs);
  CHECK(reparsed.seed == original.seed);
  CHECK(reparsed.ma_window == original.ma_window);
  CHECK(reparsed.optimality_hold == original.optimality_hold);
  CHECK(reparsed.metric_stride == original.metric_stride);
}

TEST_CASE("emit_csv writes the documented files and schema") {
  const ExperimentResult result = tiny_result(500, 2);
  const auto dir = temp_dir("ycs_csv_test");
  emit_csv(result, dir);

  std::ifstream run0(dir / "run_0.csv");
  REQUIRE(run0.good());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(run0, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);  // header + 2 trials
  CHECK(lines[0] == "trial,performance_ma,specificity,error,correct");

  std::ifstream agg(dir / "aggregate.csv");
  REQUIRE(agg.good());
  std::vector<std::string> agg_lines;
  while (std::getline(agg, line)) agg_lines.push_back(line);
  // Leading # lines echo every config key.
  std::size_t comment_count = 0;
  while (comment_count < agg_lines.size() &&
         agg_lines[comment_count].starts_with("#")) {
    ++comment_count;
  }
  CHECK(comment_count == config_items(result.config).size());
  CHECK(agg_lines[0] == "# task = mux");
  REQUIRE(comment_count + 3 == agg_lines.size());
  CHECK(agg_lines[comment_count] == "trial,performance_ma,specificity,error");

  // Values round-trip to 6 significant digits.
  for (std::size_t row = 0; row < 2; ++row) {
    const std::string& data = agg_lines[comment_count + 1 + row];
    std::istringstream fields(data);
    std::string field;
    std::getline(fields, field, ',');
    CHECK(std::stoll(field) == static_cast<long long>(row));
    std::getline(fields, field, ',');
    CHECK(std::abs(std::stod(field) - result.performance[row]) <=
          1e-5 * std::max(1.0, std::abs(result.performance[row])));
    std::getline(fields, field, ',');
    CHECK(std::abs(std::stod(field) - result.specificity[row]) <=
          1e-5 * std::max(1.0, std::abs(result.specificity[row])));
    std::getline(fields, field, ',');
    CHECK(std::abs(std::stod(field) - result.mean_error[row]) <=
          1e-5 * std::max(1.0, std::abs(result.mean_error[row])));
  }

  std::ifstream tto(dir / "tto.csv");
  REQUIRE(tto.good());
  std::getline(tto, line);
  CHECK(line == "run,time_to_optimality");
  std::getline(tto, line);
  // 2 trials cannot hold a 50-streak: censored rows have an empty cell.
  CHECK(line == "0,");

  std::filesystem::remove_all(dir);
}

TEST_CASE("emit_csv reports unwritable destinations") {
  const auto blocker = temp_dir("ycs_csv_blocker");
  std::ofstream(blocker.string()) << "not a directory";
  const ExperimentResult result = tiny_result(501, 2);
  CHECK_THROWS_AS(emit_csv(result, blocker / "nested"), IoError);
  std::filesystem::remove(blocker);
}

TEST_CASE("rule dumps are emitted when captured") {
  ExperimentConfig config;
  config.k = 2;
  config.params.population_size = 30;
  config.num_exploit_trials = 5;
  config.num_runs = 1;
  config.seed = 77;
  config.capture_rule_dump = true;
  const ExperimentResult result = run_experiment(config, 1);
  REQUIRE_FALSE(result.runs[0].rule_dump.empty());

  const auto dir = temp_dir("ycs_dump_test");
  emit_csv(result, dir);
  std::ifstream dump(dir / "rules_run_0.txt");
  REQUIRE(dump.good());
  std::string line;
  std::size_t count = 0;
  while (std::getline(dump, line)) {
    CHECK(line.find(" | action=") != std::string::npos);
    CHECK(line.find(" | sigma=") != std::string::npos);
    ++count;
  }
  CHECK(count == 30);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verdicts are inclusive at the 0.05 threshold") {
  CHECK(significance_verdict(0.05) == "SIGNIFICANT (p<=0.05)");
  CHECK(significance_verdict(0.049) == "SIGNIFICANT (p<=0.05)");
  CHECK(significance_verdict(0.0500001) == "NOT SIGNIFICANT (p>0.05)");
  CHECK(significance_verdict(1.0) == "NOT SIGNIFICANT (p>0.05)");
}

TEST_CASE("compare_report summarizes both arms") {
  SUBCASE("identical arms are not significant") {
    const ExperimentResult r = result_with_tto({1000, 1200, 900, 1100});
    const std::string report = compare_report(r, r);
    CHECK(report.find("NOT SIGNIFICANT (p>0.05)") != std::string::npos);
    CHECK(report.find("p = 1") != std::string::npos);
    CHECK(report.find("mean time-to-optimality = 1050") != std::string::npos);
  }
  SUBCASE("overwhelming separation is significant") {
    const ExperimentResult fast =
        result_with_tto({1000, 1010, 990, 1005, 995});
    const ExperimentResult slow =
        result_with_tto({90000, 90010, 89990, 90005, 89995});
    const std::string report = compare_report(fast, slow);
    CHECK(report.find("SIGNIFICANT (p<=0.05)") == report.find("SIGNIFICANT"));
    CHECK(report.find("NOT SIGNIFICANT") == std::string::npos);
  }
  SUBCASE("fully censored arms are undefined") {
    const ExperimentResult ok = result_with_tto({1000, 1010});
    const ExperimentResult censored =
        result_with_tto({std::nullopt, std::nullopt});
    const std::string report = compare_report(ok, censored);
    CHECK(report.find("comparison is undefined") != std::string::npos);
    CHECK(report.find("Welch t") == std::string::npos);
  }
}
