#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ycs/environment.hpp"
#include "ycs/params.hpp"

namespace ycs {

// Proportionate (roulette-wheel) draw over non-negative weights with a
// positive sum. `exclude` skips one index entirely.
int roulette_index(std::span<const double> weights, std::mt19937_64& rng,
                   int exclude = -1);

// Trace record of one explore or exploit cycle.
struct StepOutcome {
  BitString state;
  int chosen_action = -1;
  double reward_received = 0.0;
  std::vector<int> match_set;
  std::vector<int> action_set;
  bool was_explore = false;
  bool covered = false;
  bool correct = false;
};

// The YCS main loop: population management, match/action set formation,
// explore/exploit action selection, Widrow-Hoff reinforcement, the
// triggered niche GA (or the optional panmictic GA) and covering.
//
// Single-owner, single-threaded per instance; independent instances may
// run concurrently. The population holds exactly P rules at every
// observable point (replacement is one-out-one-in).
class YcsEngine {
 public:
  YcsEngine(const LcsParams& params, int input_length, int action_count,
            std::uint64_t seed);

  // Indices of the rules whose condition matches `input`.
  std::vector<int> form_match_set(const BitString& input) const;

  // When the match set is empty, inserts a covering rule (replacing a
  // niche-size-roulette victim) and returns its index.
  std::optional<int> cover_if_needed(const std::vector<int>& match_set,
                                     const BitString& input);

  // Fitness-weighted mean reward over the matching advocates of
  // `action`; absent when no rule advocates it.
  std::optional<double> system_prediction(const std::vector<int>& match_set,
                                          int action) const;

  // Explore: uniform over all environment actions. Exploit: argmax of
  // system_prediction (ties to the lowest action id); actions with no
  // advocates are excluded.
  int select_action(const std::vector<int>& match_set, bool explore);

  std::vector<int> form_action_set(const std::vector<int>& match_set,
                                   int action) const;

  // Widrow-Hoff updates for every action-set member, in order: error
  // (from the pre-update reward), niche size, reward.
  void reinforce(const std::vector<int>& action_set, int action,
                 double reward);

  // Mean explore cycles since the last GA over the action set exceeds
  // the threshold.
  bool ga_should_trigger(const std::vector<int>& action_set) const;

  // Timestamps the set, selects two parents by fitness roulette (the
  // chosen action's ledger), then produces offspring by crossover (with
  // probability chi) or otherwise by mutation, and inserts both by
  // niche-size-roulette replacement. The second replacement draw
  // excludes the first offspring's slot.
  void run_niche_ga(const std::vector<int>& action_set, int action);

  // With probability g, the same as run_niche_ga but with parents drawn
  // from the whole population (best-ledger fitness in MULTI mode).
  // Returns whether the GA fired.
  bool run_panmictic_ga();

  // One full explore or exploit cycle against `env`.
  StepOutcome step(const Environment& env, bool explore);

  const std::vector<Rule>& rules() const { return rules_; }
  const LcsParams& params() const { return params_; }
  int input_length() const { return input_length_; }
  int action_count() const { return action_count_; }
  std::int64_t clock() const { return clock_; }

  double mean_specificity() const {
    return specificity_sum_ / rules_.size();
  }
  double mean_error() const { return error_sum_ / ledger_count_; }

  std::int64_t ga_invocations() const { return ga_invocations_; }
  std::int64_t cover_events() const { return cover_events_; }
  std::int64_t exploit_fallbacks() const { return exploit_fallbacks_; }

  // Replaces the whole population (testing / tooling hook). The new
  // population must have exactly P rules shaped for the engine's mode.
  void set_rules(std::vector<Rule> rules);

  // Overrides the explore-cycle clock (tooling hook, e.g. replaying a
  // dumped population).
  void set_clock(std::int64_t clock) { clock_ = clock; }

  // One rule per line, `<condition> | action=<id> r=<r> eps=<eps> | ...
  // | sigma=<s> ts=<t>`, sorted by descending best-action fitness.
  std::string dump_rules() const;

  std::mt19937_64& rng() { return rng_; }

 private:
  Rule make_random_rule();
  void breed_and_insert(const Rule& parent_a, const Rule& parent_b);
  int sigma_roulette(int exclude = -1);
  void replace_rule(int index, Rule rule);
  double ledger_error_sum(const Rule& rule) const;
  void rebuild_sums();

  LcsParams params_;
  int input_length_;
  int action_count_;
  std::mt19937_64 rng_;
  std::vector<Rule> rules_;
  std::int64_t clock_ = 0;

  // Running sums kept in step with every rule change so per-cycle
  // metrics and niche-size roulette stay O(P) worst case.
  double sigma_sum_ = 0.0;
  double specificity_sum_ = 0.0;
  double error_sum_ = 0.0;
  std::int64_t ledger_count_ = 0;

  std::int64_t ga_invocations_ = 0;
  std::int64_t cover_events_ = 0;
  std::int64_t exploit_fallbacks_ = 0;
};

}  // namespace ycs
