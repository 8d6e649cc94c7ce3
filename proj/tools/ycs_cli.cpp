#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ycs/config.hpp"
#include "ycs/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ycs::ConfigError("cannot read config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ycs::ExperimentResult run_arm(const std::string& path,
                              const std::vector<std::string>& overrides,
                              bool dump_rules, int jobs) {
  ycs::ExperimentConfig config = ycs::parse_config(read_file(path), overrides);
  config.capture_rule_dump = dump_rules;
  std::cerr << "running " << config.num_runs << " runs x "
            << config.num_exploit_trials << " exploit trials from " << path
            << " ..." << std::endl;
  const auto start = std::chrono::steady_clock::now();
  ycs::ExperimentResult result = ycs::run_experiment(config, jobs);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "done in " << elapsed.count() / 1000.0 << " s" << std::endl;
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"YCS learning classifier system on multiplexer tasks"};
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir = "out";
  std::string compare_path;
  int jobs = 0;
  bool dump_rules = false;
  app.add_option("--config", config_path, "experiment config file")
      ->required();
  app.add_option("--set", overrides,
                 "override a config key (key=value, repeatable)");
  app.add_option("--out", output_dir, "output directory (default: out)");
  app.add_option("--compare", compare_path,
                 "second config; adds a time-to-optimality comparison");
  app.add_option("--jobs", jobs,
                 "parallel runs (default: hardware concurrency)");
  app.add_flag("--dump-rules", dump_rules,
               "write the final rule population per run");
  CLI11_PARSE(app, argc, argv);

  try {
    const ycs::ExperimentResult result =
        run_arm(config_path, overrides, dump_rules, jobs);
    ycs::emit_csv(result, output_dir);

    if (!compare_path.empty()) {
      const ycs::ExperimentResult other =
          run_arm(compare_path, {}, dump_rules, jobs);
      ycs::emit_csv(other, std::filesystem::path(output_dir) / "compare_arm");
      const std::string report = ycs::compare_report(result, other);
      std::cout << report;
      std::ofstream out(std::filesystem::path(output_dir) /
                        "compare_report.txt");
      if (!out || !(out << report).flush()) {
        throw ycs::IoError("cannot write compare_report.txt");
      }
    }
  } catch (const ycs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const ycs::IoError& e) {
    std::cerr << "io error: " << e.what() << std::endl;
    return 3;
  }
  return 0;
}
