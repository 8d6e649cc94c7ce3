#include "ycs/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace ycs {

void LcsParams::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (population_size < 2) fail("population_size must be >= 2");
  if (!(p_hash >= 0.0 && p_hash <= 1.0)) fail("p_hash must be in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    fail("mutation_rate must be in [0, 1]");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    fail("crossover_rate must be in [0, 1]");
  }
  if (!(panmictic_rate >= 0.0 && panmictic_rate <= 1.0)) {
    fail("panmictic_rate must be in [0, 1]");
  }
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    fail("learning_rate must be in (0, 1]");
  }
  if (!(fitness_exponent >= 1.0)) fail("fitness_exponent must be >= 1");
  if (!(ga_threshold >= 0.0)) fail("ga_threshold must be >= 0");
  if (!(init_param >= 0.0)) fail("init_param must be >= 0");
}

int roulette_index(std::span<const double> weights, std::mt19937_64& rng,
                   int exclude) {
  const int n = static_cast<int>(weights.size());
  assert(n > 0 && (exclude < 0 || n > 1));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i != exclude) total += weights[i];
  }
  if (!(total > 0.0)) {
    // All-zero weights: uniform among the allowed indices.
    int idx = std::uniform_int_distribution<int>(
        0, n - 1 - (exclude >= 0 ? 1 : 0))(rng);
    if (exclude >= 0 && idx >= exclude) ++idx;
    return idx;
  }
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  int last = -1;
  for (int i = 0; i < n; ++i) {
    if (i == exclude) continue;
    acc += weights[i];
    last = i;
    if (u < acc) return i;
  }
  return last;  // rounding guard
}

YcsEngine::YcsEngine(const LcsParams& params, int input_length,
                     int action_count, std::uint64_t seed)
    : params_(params),
      input_length_(input_length),
      action_count_(action_count),
      rng_(seed) {
  params_.validate();
  if (input_length < 1 || input_length > 64) {
    throw std::invalid_argument("input_length must be in [1, 64]");
  }
  if (action_count < 2) {
    throw std::invalid_argument("action_count must be >= 2");
  }
  rules_.reserve(params_.population_size);
  for (int i = 0; i < params_.population_size; ++i) {
    rules_.push_back(make_random_rule());
  }
  rebuild_sums();
}

Rule YcsEngine::make_random_rule() {
  const BitString input = BitString::random(input_length_, rng_);
  return make_cover_rule(input, params_.p_hash, action_count_, params_.mode,
                         params_.init_param, clock_, rng_);
}

double YcsEngine::ledger_error_sum(const Rule& rule) const {
  double sum = 0.0;
  for (const ActionLedger& led : rule.ledgers) sum += led.error;
  return sum;
}

void YcsEngine::rebuild_sums() {
  sigma_sum_ = 0.0;
  specificity_sum_ = 0.0;
  error_sum_ = 0.0;
  ledger_count_ = 0;
  for (const Rule& rule : rules_) {
    sigma_sum_ += rule.niche_size;
    specificity_sum_ += rule.condition.specificity();
    error_sum_ += ledger_error_sum(rule);
    ledger_count_ += static_cast<std::int64_t>(rule.ledgers.size());
  }
}

std::vector<int> YcsEngine::form_match_set(const BitString& input) const {
  std::vector<int> matches;
  const int n = static_cast<int>(rules_.size());
  for (int i = 0; i < n; ++i) {
    if (rules_[i].condition.matches(input)) matches.push_back(i);
  }
  return matches;
}

std::optional<int> YcsEngine::cover_if_needed(const std::vector<int>& match_set,
                                              const BitString& input) {
  if (!match_set.empty()) return std::nullopt;
  Rule rule = make_cover_rule(input, params_.p_hash, action_count_,
                              params_.mode, params_.init_param, clock_, rng_);
  const int slot = sigma_roulette();
  replace_rule(slot, std::move(rule));
  ++cover_events_;
  return slot;
}

std::optional<double> YcsEngine::system_prediction(
    const std::vector<int>& match_set, int action) const {
  double sum_f = 0.0;
  double sum_fr = 0.0;
  double reward_sum = 0.0;
  int advocates = 0;
  for (int idx : match_set) {
    const Rule& rule = rules_[idx];
    if (!rule.advocates(action, params_.mode)) continue;
    const ActionLedger& led = rule.ledger_for(action, params_.mode);
    const double f = fitness(led, params_.fitness_exponent);
    sum_f += f;
    sum_fr += f * led.reward;
    reward_sum += led.reward;
    ++advocates;
  }
  if (advocates == 0) return std::nullopt;
  // Fitness can underflow to zero for extreme exponents; fall back to
  // the unweighted mean in that case.
  if (!(sum_f > 0.0)) return reward_sum / advocates;
  return sum_fr / sum_f;
}

int YcsEngine::select_action(const std::vector<int>& match_set, bool explore) {
  if (explore) {
    return std::uniform_int_distribution<int>(0, action_count_ - 1)(rng_);
  }
  int best = -1;
  double best_prediction = 0.0;
  for (int a = 0; a < action_count_; ++a) {
    const std::optional<double> prediction = system_prediction(match_set, a);
    if (!prediction) continue;
    if (best < 0 || *prediction > best_prediction) {
      best = a;
      best_prediction = *prediction;
    }
  }
  if (best < 0) {
    ++exploit_fallbacks_;
    return std::uniform_int_distribution<int>(0, action_count_ - 1)(rng_);
  }
  return best;
}

std::vector<int> YcsEngine::form_action_set(const std::vector<int>& match_set,
                                            int action) const {
  if (params_.mode == RuleMode::kMulti) return match_set;
  std::vector<int> action_set;
  for (int idx : match_set) {
    if (rules_[idx].action == action) action_set.push_back(idx);
  }
  return action_set;
}

void YcsEngine::reinforce(const std::vector<int>& action_set, int action,
                          double reward) {
  assert(!action_set.empty());
  const double beta = params_.learning_rate;
  const double set_size = static_cast<double>(action_set.size());
  for (int idx : action_set) {
    Rule& rule = rules_[idx];
    ActionLedger& led = rule.ledger_for(action, params_.mode);
    // Error first (against the pre-update reward), then niche size,
    // then reward.
    const double new_error =
        led.error + beta * (std::abs(reward - led.reward) - led.error);
    error_sum_ += new_error - led.error;
    led.error = new_error;
    const double new_sigma =
        rule.niche_size + beta * (set_size - rule.niche_size);
    sigma_sum_ += new_sigma - rule.niche_size;
    rule.niche_size = new_sigma;
    led.reward += beta * (reward - led.reward);
  }
}

bool YcsEngine::ga_should_trigger(const std::vector<int>& action_set) const {
  assert(!action_set.empty());
  double gap_sum = 0.0;
  for (int idx : action_set) {
    gap_sum += static_cast<double>(clock_ - rules_[idx].ga_timestamp);
  }
  return gap_sum / static_cast<double>(action_set.size()) >
         params_.ga_threshold;
}

void YcsEngine::run_niche_ga(const std::vector<int>& action_set, int action) {
  assert(!action_set.empty());
  for (int idx : action_set) rules_[idx].ga_timestamp = clock_;
  std::vector<double> weights(action_set.size());
  for (std::size_t i = 0; i < action_set.size(); ++i) {
    const Rule& rule = rules_[action_set[i]];
    weights[i] = params_.mode == RuleMode::kMulti
                     ? rule.best_fitness(params_.fitness_exponent)
                     : fitness(rule.ledger_for(action, params_.mode),
                               params_.fitness_exponent);
  }
  const int pa = action_set[roulette_index(weights, rng_)];
  const int pb = action_set[roulette_index(weights, rng_)];
  breed_and_insert(rules_[pa], rules_[pb]);
}

bool YcsEngine::run_panmictic_ga() {
  if (!std::bernoulli_distribution(params_.panmictic_rate)(rng_)) return false;
  std::vector<double> weights(rules_.size());
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    weights[i] = params_.mode == RuleMode::kMulti
                     ? rules_[i].best_fitness(params_.fitness_exponent)
                     : fitness(rules_[i].ledgers[0], params_.fitness_exponent);
  }
  const int pa = roulette_index(weights, rng_);
  const int pb = roulette_index(weights, rng_);
  breed_and_insert(rules_[pa], rules_[pb]);
  return true;
}

void YcsEngine::breed_and_insert(const Rule& parent_a, const Rule& parent_b) {
  Rule child_a = parent_a;
  Rule child_b = parent_b;
  // Crossover and mutation are alternative offspring routes: a crossed
  // pair is inserted as-is. Stacking mutation on crossed offspring
  // doubles the specialization influx and the rule base then equilibrates
  // too specific to span the larger multiplexers.
  const bool crossed =
      std::bernoulli_distribution(params_.crossover_rate)(rng_);
  if (crossed) {
    crossover(child_a, child_b, rng_);
    assign_offspring_parameters(child_a, child_b, parent_a, parent_b, true);
  } else {
    mutate(child_a, params_.mutation_rate, action_count_, params_.mode, rng_);
    mutate(child_b, params_.mutation_rate, action_count_, params_.mode, rng_);
  }
  child_a.ga_timestamp = clock_;
  child_b.ga_timestamp = clock_;
  const int slot_a = sigma_roulette();
  replace_rule(slot_a, std::move(child_a));
  const int slot_b = sigma_roulette(slot_a);
  replace_rule(slot_b, std::move(child_b));
  ++ga_invocations_;
}

int YcsEngine::sigma_roulette(int exclude) {
  const int n = static_cast<int>(rules_.size());
  const double total =
      sigma_sum_ - (exclude >= 0 ? rules_[exclude].niche_size : 0.0);
  if (!(total > 0.0)) {
    int idx = std::uniform_int_distribution<int>(
        0, n - 1 - (exclude >= 0 ? 1 : 0))(rng_);
    if (exclude >= 0 && idx >= exclude) ++idx;
    return idx;
  }
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng_);
  double acc = 0.0;
  int last = -1;
  for (int i = 0; i < n; ++i) {
    if (i == exclude) continue;
    acc += rules_[i].niche_size;
    last = i;
    if (u < acc) return i;
  }
  return last;  // rounding guard
}

void YcsEngine::replace_rule(int index, Rule rule) {
  Rule& slot = rules_[index];
  sigma_sum_ += rule.niche_size - slot.niche_size;
  specificity_sum_ +=
      rule.condition.specificity() - slot.condition.specificity();
  error_sum_ += ledger_error_sum(rule) - ledger_error_sum(slot);
  slot = std::move(rule);
}

StepOutcome YcsEngine::step(const Environment& env, bool explore) {
  StepOutcome out;
  out.was_explore = explore;
  out.state = env.sample_state(rng_, !explore);
  out.match_set = form_match_set(out.state);
  if (const std::optional<int> covered = cover_if_needed(out.match_set, out.state)) {
    out.match_set.assign(1, *covered);
    out.covered = true;
  }
  out.chosen_action = select_action(out.match_set, explore);
  out.action_set = form_action_set(out.match_set, out.chosen_action);
  out.reward_received = env.reward(out.state, out.chosen_action);
  out.correct = out.chosen_action == env.correct_action(out.state);
  if (explore) {
    if (!out.action_set.empty()) {
      reinforce(out.action_set, out.chosen_action, out.reward_received);
    }
    ++clock_;
    if (params_.ga_scope == GaScope::kNiche) {
      if (!out.action_set.empty() && ga_should_trigger(out.action_set)) {
        run_niche_ga(out.action_set, out.chosen_action);
      }
    } else {
      run_panmictic_ga();
    }
  }
  return out;
}

void YcsEngine::set_rules(std::vector<Rule> rules) {
  if (static_cast<int>(rules.size()) != params_.population_size) {
    throw std::invalid_argument("population must hold exactly P rules");
  }
  const std::size_t want =
      params_.mode == RuleMode::kMulti ? action_count_ : 1;
  for (const Rule& rule : rules) {
    if (rule.condition.length() != input_length_) {
      throw std::invalid_argument("rule condition length mismatch");
    }
    if (rule.ledgers.size() != want) {
      throw std::invalid_argument("rule ledger count mismatch");
    }
    if (params_.mode == RuleMode::kTraditional &&
        (rule.action < 0 || rule.action >= action_count_)) {
      throw std::invalid_argument("rule action out of range");
    }
  }
  rules_ = std::move(rules);
  rebuild_sums();
}

std::string YcsEngine::dump_rules() const {
  std::vector<int> order(rules_.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> best(rules_.size());
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    best[i] = rules_[i].best_fitness(params_.fitness_exponent);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return best[a] > best[b]; });
  std::string out;
  char buf[96];
  for (int idx : order) {
    const Rule& rule = rules_[idx];
    out += rule.condition.to_string();
    if (params_.mode == RuleMode::kTraditional) {
      std::snprintf(buf, sizeof buf, " | action=%d r=%.6g eps=%.6g",
                    rule.action, rule.ledgers[0].reward,
                    rule.ledgers[0].error);
      out += buf;
    } else {
      for (int a = 0; a < action_count_; ++a) {
        std::snprintf(buf, sizeof buf, " | action=%d r=%.6g eps=%.6g", a,
                      rule.ledgers[a].reward, rule.ledgers[a].error);
        out += buf;
      }
    }
    std::snprintf(buf, sizeof buf, " | sigma=%.6g ts=%lld\n", rule.niche_size,
                  static_cast<long long>(rule.ga_timestamp));
    out += buf;
  }
  return out;
}

}  // namespace ycs
