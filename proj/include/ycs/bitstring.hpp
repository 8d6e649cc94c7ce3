#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace ycs {

// Fixed-length binary string, length <= 64. Position 0 is the leftmost
// character of the string form; bit i of `bits` holds position i.
struct BitString {
  std::uint64_t bits = 0;
  int length = 0;

  BitString() = default;
  BitString(std::uint64_t b, int len) : bits(b), length(len) {
    assert(len >= 0 && len <= 64);
  }

  int bit(int pos) const {
    assert(pos >= 0 && pos < length);
    return static_cast<int>((bits >> pos) & std::uint64_t{1});
  }

  void set_bit(int pos, int value) {
    assert(pos >= 0 && pos < length);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    bits = value ? (bits | mask) : (bits & ~mask);
  }

  static std::uint64_t mask_for(int length) {
    return length >= 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << length) - 1;
  }

  static BitString random(int length, std::mt19937_64& rng) {
    assert(length >= 1 && length <= 64);
    return BitString(rng() & mask_for(length), length);
  }

  static BitString from_string(std::string_view s);
  std::string to_string() const;

  bool operator==(const BitString&) const = default;
};

}  // namespace ycs
