#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ycs/condition.hpp"

namespace ycs {

enum class RuleMode { kTraditional, kMulti };

// Per-action reward and error estimates, in payoff units.
struct ActionLedger {
  double reward = 0.0;
  double error = 0.0;

  bool operator==(const ActionLedger&) const = default;
};

// Accuracy as an inverse function of prediction error: 1 / (error^nu + 1).
inline double fitness(const ActionLedger& ledger, double nu) {
  const int n = static_cast<int>(nu);
  double p;
  if (nu == static_cast<double>(n) && n >= 0 && n <= 64) {
    p = 1.0;
    double base = ledger.error;
    for (int e = n; e > 0; e >>= 1, base *= base) {
      if (e & 1) p *= base;
    }
  } else {
    p = std::pow(ledger.error, nu);
  }
  return 1.0 / (p + 1.0);
}

// One classifier. TRADITIONAL rules advocate the single action `action`
// and carry one ledger; MULTI rules carry one ledger per environment
// action (indexed by action id) and `action` is unused (-1).
struct Rule {
  TernaryCondition condition;
  int action = -1;
  std::vector<ActionLedger> ledgers;
  double niche_size = 0.0;
  std::int64_t ga_timestamp = 0;

  const ActionLedger& ledger_for(int a, RuleMode mode) const {
    if (mode == RuleMode::kMulti) return ledgers[a];
    assert(a == action);
    return ledgers[0];
  }

  ActionLedger& ledger_for(int a, RuleMode mode) {
    if (mode == RuleMode::kMulti) return ledgers[a];
    assert(a == action);
    return ledgers[0];
  }

  bool advocates(int a, RuleMode mode) const {
    return mode == RuleMode::kMulti || action == a;
  }

  // Best fitness over the rule's ledgers (the only ledger in TRADITIONAL
  // mode). Used for rule dumps and panmictic parent selection.
  double best_fitness(double nu) const {
    double min_error = ledgers[0].error;
    for (const ActionLedger& led : ledgers) {
      if (led.error < min_error) min_error = led.error;
    }
    return fitness(ActionLedger{0.0, min_error}, nu);
  }

  bool operator==(const Rule&) const = default;
};

// Covering: condition generalized from `input` at rate p_hash, a random
// action (TRADITIONAL) or the full ledger set (MULTI), all parameters at
// init_param.
Rule make_cover_rule(const BitString& input, double p_hash, int action_count,
                     RuleMode mode, double init_param, std::int64_t timestamp,
                     std::mt19937_64& rng);

// Condition positions mutate at rate mu; a TRADITIONAL rule's action
// additionally mutates (to a uniformly chosen different action) at rate
// mu. Ledgers, niche size and timestamp are untouched.
void mutate(Rule& rule, double mu, int action_count, RuleMode mode,
            std::mt19937_64& rng);

// Single-point crossover of the two conditions at a uniform cut; actions
// and parameters are untouched. Returns the cut point.
int crossover(Rule& a, Rule& b, std::mt19937_64& rng);

// Offspring keep the parameters inherited from their own parent unless
// crossover was invoked, in which case both offspring take the parents'
// per-action (reward, error) means and the mean niche size. Children must
// already be copies of their respective parents.
void assign_offspring_parameters(Rule& child_a, Rule& child_b,
                                 const Rule& parent_a, const Rule& parent_b,
                                 bool crossed);

}  // namespace ycs
