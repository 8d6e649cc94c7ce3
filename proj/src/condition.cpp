#include "ycs/condition.hpp"

#include <stdexcept>

namespace ycs {

TernaryCondition TernaryCondition::from_string(std::string_view s) {
  if (s.size() > 64) throw std::invalid_argument("condition longer than 64");
  TernaryCondition out(static_cast<int>(s.size()));
  for (int i = 0; i < out.length_; ++i) {
    switch (s[i]) {
      case '0':
        out.set(i, Trit::kZero);
        break;
      case '1':
        out.set(i, Trit::kOne);
        break;
      case '#':
        break;
      default:
        throw std::invalid_argument("condition symbols are 0, 1 and #");
    }
  }
  return out;
}

TernaryCondition TernaryCondition::cover(const BitString& input, double p_hash,
                                         std::mt19937_64& rng) {
  assert(p_hash >= 0.0 && p_hash <= 1.0);
  TernaryCondition out(input.length);
  std::bernoulli_distribution hash(p_hash);
  for (int i = 0; i < input.length; ++i) {
    if (!hash(rng)) {
      out.set(i, input.bit(i) ? Trit::kOne : Trit::kZero);
    }
  }
  return out;
}

void TernaryCondition::mutate(double mu, std::mt19937_64& rng) {
  // The mutated symbol becomes one of the other two, uniformly.
  static constexpr Trit kOthers[3][2] = {
      {Trit::kOne, Trit::kHash},
      {Trit::kZero, Trit::kHash},
      {Trit::kZero, Trit::kOne},
  };
  std::bernoulli_distribution flip(mu);
  std::uniform_int_distribution<int> pick(0, 1);
  for (int i = 0; i < length_; ++i) {
    if (flip(rng)) {
      set(i, kOthers[static_cast<int>(at(i))][pick(rng)]);
    }
  }
}

void TernaryCondition::crossover_at(TernaryCondition& a, TernaryCondition& b,
                                    int cut) {
  assert(a.length_ == b.length_);
  assert(cut >= 1 && cut < a.length_);
  const std::uint64_t prefix = BitString::mask_for(cut);
  const std::uint64_t suffix = ~prefix;
  const std::uint64_t av = a.value_, ac = a.care_;
  a.value_ = (av & prefix) | (b.value_ & suffix);
  a.care_ = (ac & prefix) | (b.care_ & suffix);
  b.value_ = (b.value_ & prefix) | (av & suffix);
  b.care_ = (b.care_ & prefix) | (ac & suffix);
}

int TernaryCondition::draw_cut(int length, std::mt19937_64& rng) {
  assert(length >= 2);
  return std::uniform_int_distribution<int>(1, length - 1)(rng);
}

std::string TernaryCondition::to_string() const {
  std::string out(length_, '#');
  for (int i = 0; i < length_; ++i) {
    switch (at(i)) {
      case Trit::kZero:
        out[i] = '0';
        break;
      case Trit::kOne:
        out[i] = '1';
        break;
      case Trit::kHash:
        break;
    }
  }
  return out;
}

}  // namespace ycs
