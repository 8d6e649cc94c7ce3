#pragma once

#include "ycs/bitstring.hpp"

namespace ycs {

// A single-step task: state sampling, the correct-action oracle and the
// reward function. Immutable after construction; sampling is pure given
// the caller's random source.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual int input_length() const = 0;
  virtual int action_count() const = 0;

  // `exploit` requests the unbiased test distribution (only the
  // imbalanced variant distinguishes the two).
  virtual BitString sample_state(std::mt19937_64& rng, bool exploit) const = 0;

  virtual int correct_action(const BitString& state) const = 0;
  virtual double reward(const BitString& state, int action) const = 0;
};

}  // namespace ycs
