#include "ycs/multiplexer.hpp"

#include <stdexcept>

namespace ycs {

MultiplexerEnv::MultiplexerEnv(int k, MuxVariant variant, double bias)
    : k_(k), variant_(variant), bias_(bias) {
  if (k < 1 || k > 5) throw std::invalid_argument("multiplexer k must be in [1, 5]");
  if (variant == MuxVariant::kImbalanced && (bias <= 0.0 || bias >= 1.0)) {
    throw std::invalid_argument("imbalanced bias must be in (0, 1)");
  }
  const int data_bits = 1 << k;
  input_length_ = k + data_bits + (variant == MuxVariant::kLessSymmetric ? 1 : 0);
  action_count_ = variant == MuxVariant::kMultiAction ? data_bits + 1 : 2;
}

int MultiplexerEnv::mux_value(int k, const BitString& input) {
  assert(input.length >= k + (1 << k));
  int address = 0;
  for (int i = 0; i < k; ++i) {
    address = (address << 1) | input.bit(i);  // first k bits, MSB first
  }
  return input.bit(k + address);
}

int MultiplexerEnv::correct_action(const BitString& state) const {
  assert(state.length == input_length_);
  const int value = mux_value(k_, state);
  if (variant_ != MuxVariant::kMultiAction) return value;
  if (value == 0) return 0;
  int address = 0;
  for (int i = 0; i < k_; ++i) address = (address << 1) | state.bit(i);
  return address + 1;
}

double MultiplexerEnv::reward(const BitString& state, int action) const {
  assert(action >= 0 && action < action_count_);
  if (action == correct_action(state)) return 1000.0;
  if (variant_ == MuxVariant::kLessSymmetric && state.bit(input_length_ - 1)) {
    return 500.0;
  }
  return 0.0;
}

BitString MultiplexerEnv::sample_state(std::mt19937_64& rng,
                                       bool exploit) const {
  if (variant_ != MuxVariant::kImbalanced || exploit) {
    return BitString::random(input_length_, rng);
  }
  // Class-conditional rejection sampling; each class covers half the
  // state space, so this terminates quickly.
  const int wanted = std::bernoulli_distribution(bias_)(rng) ? 1 : 0;
  for (;;) {
    BitString state = BitString::random(input_length_, rng);
    if (mux_value(k_, state) == wanted) return state;
  }
}

}  // namespace ycs
