#pragma once

#include <bit>
#include <cstdint>

#include "ycs/bitstring.hpp"

namespace ycs {

enum class Trit : std::uint8_t { kZero = 0, kOne = 1, kHash = 2 };

// Ternary condition over {0,1,#}, fixed length <= 64. Stored as two
// bitmasks: `care_` flags the specified positions, `value_` holds their
// bit values. Hash positions keep a zero value bit so conditions compare
// canonically.
class TernaryCondition {
 public:
  TernaryCondition() = default;

  // All-hash condition of the given length.
  explicit TernaryCondition(int length) : length_(length) {
    assert(length >= 0 && length <= 64);
  }

  static TernaryCondition from_string(std::string_view s);

  // Condition equal to `input` with each position independently
  // generalized to '#' with probability p_hash. Always matches `input`.
  static TernaryCondition cover(const BitString& input, double p_hash,
                                std::mt19937_64& rng);

  int length() const { return length_; }

  Trit at(int pos) const {
    assert(pos >= 0 && pos < length_);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    if (!(care_ & mask)) return Trit::kHash;
    return (value_ & mask) ? Trit::kOne : Trit::kZero;
  }

  void set(int pos, Trit t) {
    assert(pos >= 0 && pos < length_);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    care_ &= ~mask;
    value_ &= ~mask;
    if (t != Trit::kHash) {
      care_ |= mask;
      if (t == Trit::kOne) value_ |= mask;
    }
  }

  bool matches(const BitString& input) const {
    assert(input.length == length_);
    return ((input.bits ^ value_) & care_) == 0;
  }

  int specified_count() const { return std::popcount(care_); }

  // Fraction of non-# positions.
  double specificity() const {
    return length_ == 0 ? 0.0
                        : static_cast<double>(specified_count()) / length_;
  }

  // Each position independently becomes one of the other two symbols
  // (uniformly) with probability mu.
  void mutate(double mu, std::mt19937_64& rng);

  // Single-point crossover: swap the suffixes starting at `cut`,
  // 1 <= cut <= length-1.
  static void crossover_at(TernaryCondition& a, TernaryCondition& b, int cut);

  // Uniform cut point in {1, ..., length-1}.
  static int draw_cut(int length, std::mt19937_64& rng);

  std::string to_string() const;

  bool operator==(const TernaryCondition&) const = default;

 private:
  std::uint64_t value_ = 0;
  std::uint64_t care_ = 0;
  int length_ = 0;
};

}  // namespace ycs
