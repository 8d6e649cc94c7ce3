#include "ycs/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ycs/config.hpp"
#include "ycs/stats.hpp"

namespace ycs {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::string arm_label(const ExperimentConfig& config) {
  std::ostringstream out;
  for (const auto& [key, value] : config_items(config)) {
    if (key == "task" || key == "representation" || key == "P" ||
        key == "k") {
      out << key << "=" << value << " ";
    }
  }
  std::string label = out.str();
  if (!label.empty()) label.pop_back();
  return label;
}

}  // namespace

void emit_csv(const ExperimentResult& result,
              const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create directory " + output_dir.string());

  const ExperimentConfig& config = result.config;
  const std::size_t points = result.performance.size();

  {
    std::ofstream out = open_for_write(output_dir / "aggregate.csv");
    for (const auto& [key, value] : config_items(config)) {
      out << "# " << key << " = " << value << "\n";
    }
    out << "trial,performance_ma,specificity,error\n";
    for (std::size_t i = 0; i < points; ++i) {
      out << config.recorded_trial(static_cast<std::int64_t>(i)) << ","
          << fmt(result.performance[i]) << "," << fmt(result.specificity[i])
          << "," << fmt(result.mean_error[i]) << "\n";
    }
    if (!out.flush()) throw IoError("write failed in aggregate.csv");
  }

  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const RunResult& run = result.runs[r];
    std::ofstream out = open_for_write(output_dir /
                                       ("run_" + std::to_string(r) + ".csv"));
    out << "trial,performance_ma,specificity,error,correct\n";
    for (std::size_t i = 0; i < run.performance.size(); ++i) {
      const std::int64_t trial =
          config.recorded_trial(static_cast<std::int64_t>(i));
      out << trial << "," << fmt(run.performance[i]) << ","
          << fmt(run.specificity[i]) << "," << fmt(run.mean_error[i]) << ","
          << static_cast<int>(run.correct[trial]) << "\n";
    }
    if (!out.flush()) throw IoError("write failed in run csv");
  }

  {
    std::ofstream out = open_for_write(output_dir / "tto.csv");
    out << "run,time_to_optimality\n";
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
      out << r << ",";
      if (result.runs[r].time_to_optimality) {
        out << *result.runs[r].time_to_optimality;
      }
      out << "\n";
    }
    if (!out.flush()) throw IoError("write failed in tto.csv");
  }

  if (config.capture_rule_dump) {
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
      std::ofstream out = open_for_write(
          output_dir / ("rules_run_" + std::to_string(r) + ".txt"));
      out << result.runs[r].rule_dump;
      if (!out.flush()) throw IoError("write failed in rule dump");
    }
  }
}

std::string compare_report(const ExperimentResult& a,
                           const ExperimentResult& b) {
  std::ostringstream out;
  out << "time-to-optimality comparison (hold="
      << a.config.optimality_hold << ")\n";

  const auto arm = [&](const char* name, const ExperimentResult& result) {
    const double n = static_cast<double>(result.tto_censored.size());
    double mean = 0.0;
    for (double v : result.tto_censored) mean += v;
    mean /= n;
    out << "arm " << name << " [" << arm_label(result.config) << "]: ";
    if (result.censored_runs == static_cast<int>(n)) {
      out << "all " << n << " runs censored at "
          << result.config.num_exploit_trials
          << " trials; comparison is undefined for this arm\n";
      return false;
    }
    out << "mean time-to-optimality = " << fmt(mean) << " over "
        << result.tto_censored.size() << " runs (" << result.censored_runs
        << " censored)\n";
    return true;
  };

  const bool a_defined = arm("A", a);
  const bool b_defined = arm("B", b);
  if (!a_defined || !b_defined) return out.str();

  const TTestResult test = welch_t_test(a.tto_censored, b.tto_censored);
  out << "Welch t = " << fmt(test.t) << ", df = " << fmt(test.df)
      << ", p = " << fmt(test.p) << "\n";
  out << significance_verdict(test.p) << "\n";
  return out.str();
}

std::string significance_verdict(double p) {
  return p <= 0.05 ? "SIGNIFICANT (p<=0.05)" : "NOT SIGNIFICANT (p>0.05)";
}

}  // namespace ycs
