#pragma once

#include "ycs/environment.hpp"

namespace ycs {

enum class MuxVariant { kStandard, kLessSymmetric, kMultiAction, kImbalanced };

// The k-address-bit Boolean multiplexer and its three task variants.
//
// Bit order: the address is the first k positions, most significant
// first; the 2^k data bits follow, indexed left to right from 0. The
// less-symmetric variant appends one extra input bit at the last
// position; it never affects the correct action, but an incorrect
// response pays 500 instead of 0 when it is set.
//
// Actions: 2 for all variants except the multi-action one, which uses
// 2^k + 1 actions -- action 0 when the indexed data bit is 0, action
// (address value + 1) when it is 1.
//
// The imbalanced variant samples explore states so that the correct
// action is 1 with probability `bias`; exploit sampling stays uniform.
class MultiplexerEnv final : public Environment {
 public:
  explicit MultiplexerEnv(int k, MuxVariant variant = MuxVariant::kStandard,
                          double bias = 0.8);

  int input_length() const override { return input_length_; }
  int action_count() const override { return action_count_; }
  BitString sample_state(std::mt19937_64& rng, bool exploit) const override;
  int correct_action(const BitString& state) const override;
  double reward(const BitString& state, int action) const override;

  int k() const { return k_; }
  MuxVariant variant() const { return variant_; }
  double bias() const { return bias_; }

  // Value of the plain k-multiplexer on the first k + 2^k positions.
  static int mux_value(int k, const BitString& input);

 private:
  int k_;
  MuxVariant variant_;
  double bias_;
  int input_length_;
  int action_count_;
};

}  // namespace ycs
