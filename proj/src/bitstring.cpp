#include "ycs/bitstring.hpp"

#include <stdexcept>

namespace ycs {

BitString BitString::from_string(std::string_view s) {
  if (s.size() > 64) throw std::invalid_argument("bit string longer than 64");
  BitString out(0, static_cast<int>(s.size()));
  for (int i = 0; i < out.length; ++i) {
    switch (s[i]) {
      case '0':
        break;
      case '1':
        out.bits |= std::uint64_t{1} << i;
        break;
      default:
        throw std::invalid_argument("bit string may contain only 0 and 1");
    }
  }
  return out;
}

std::string BitString::to_string() const {
  std::string out(length, '0');
  for (int i = 0; i < length; ++i) {
    if (bit(i)) out[i] = '1';
  }
  return out;
}

}  // namespace ycs
