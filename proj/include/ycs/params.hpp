#pragma once

#include "ycs/rule.hpp"

namespace ycs {

enum class GaScope { kNiche, kPanmictic };

// All YCS scalar hyperparameters.
struct LcsParams {
  int population_size = 1000;    // P
  double p_hash = 0.6;           // wildcard rate for cover and init
  double mutation_rate = 0.04;   // mu
  double fitness_exponent = 10;  // nu
  double crossover_rate = 0.5;   // chi
  double ga_threshold = 25;      // theta_GA, in explore cycles
  double learning_rate = 0.2;    // beta
  double panmictic_rate = 0.0;   // g, per-explore-cycle GA probability
  RuleMode mode = RuleMode::kTraditional;
  GaScope ga_scope = GaScope::kNiche;
  double init_param = 10.0;      // initial reward, error and niche size

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace ycs
