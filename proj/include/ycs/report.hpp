#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ycs/experiment.hpp"

namespace ycs {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes aggregate.csv (config echoed as leading # comments, then
// `trial,performance_ma,specificity,error` rows), one run_<i>.csv per
// run (same schema plus a trailing `correct` column), tto.csv with the
// per-run time to optimality (empty cell when censored), and, when rule
// dumps were captured, rules_run_<i>.txt. Floats carry 6 significant
// digits. Throws IoError when the directory cannot be written.
void emit_csv(const ExperimentResult& result,
              const std::filesystem::path& output_dir);

// Verdict line, inclusive at the 0.05 threshold:
// "SIGNIFICANT (p<=0.05)" or "NOT SIGNIFICANT (p>0.05)".
std::string significance_verdict(double p);

// Mean times to optimality of both arms, the Welch t and p, and a
// significance_verdict line. Arms whose runs all censored are reported
// as undefined.
std::string compare_report(const ExperimentResult& a,
                           const ExperimentResult& b);

}  // namespace ycs
