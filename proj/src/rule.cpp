#include "ycs/rule.hpp"

namespace ycs {

Rule make_cover_rule(const BitString& input, double p_hash, int action_count,
                     RuleMode mode, double init_param, std::int64_t timestamp,
                     std::mt19937_64& rng) {
  Rule rule;
  rule.condition = TernaryCondition::cover(input, p_hash, rng);
  if (mode == RuleMode::kTraditional) {
    rule.action = std::uniform_int_distribution<int>(0, action_count - 1)(rng);
    rule.ledgers.assign(1, ActionLedger{init_param, init_param});
  } else {
    rule.ledgers.assign(action_count, ActionLedger{init_param, init_param});
  }
  rule.niche_size = init_param;
  rule.ga_timestamp = timestamp;
  return rule;
}

void mutate(Rule& rule, double mu, int action_count, RuleMode mode,
            std::mt19937_64& rng) {
  rule.condition.mutate(mu, rng);
  if (mode == RuleMode::kTraditional && action_count > 1) {
    if (std::bernoulli_distribution(mu)(rng)) {
      // Uniform over the other actions.
      int shift = std::uniform_int_distribution<int>(1, action_count - 1)(rng);
      rule.action = (rule.action + shift) % action_count;
    }
  }
}

int crossover(Rule& a, Rule& b, std::mt19937_64& rng) {
  const int cut = TernaryCondition::draw_cut(a.condition.length(), rng);
  TernaryCondition::crossover_at(a.condition, b.condition, cut);
  return cut;
}

void assign_offspring_parameters(Rule& child_a, Rule& child_b,
                                 const Rule& parent_a, const Rule& parent_b,
                                 bool crossed) {
  if (!crossed) return;  // children already carry their parent's values
  assert(parent_a.ledgers.size() == parent_b.ledgers.size());
  const std::size_t n = parent_a.ledgers.size();
  for (std::size_t i = 0; i < n; ++i) {
    const ActionLedger mean{
        0.5 * (parent_a.ledgers[i].reward + parent_b.ledgers[i].reward),
        0.5 * (parent_a.ledgers[i].error + parent_b.ledgers[i].error)};
    child_a.ledgers[i] = mean;
    child_b.ledgers[i] = mean;
  }
  const double sigma = 0.5 * (parent_a.niche_size + parent_b.niche_size);
  child_a.niche_size = sigma;
  child_b.niche_size = sigma;
}

}  // namespace ycs
