#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "afc/errors.hpp"

namespace afc {

#if !defined(__SIZEOF_INT128__)
#error "afc requires compiler support for unsigned __int128 (GCC/Clang)."
#endif

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~static_cast<u128>(0);

inline std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  char buf[40];
  int i = 40;
  while (v > 0) {
    buf[--i] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
    v /= 10;
  }
  return std::string(buf + i, buf + 40);
}

inline u128 parse_u128(const std::string& s) {
  require(!s.empty(), "parse", "empty integer literal");
  u128 v = 0;
  for (char c : s) {
    require(c >= '0' && c <= '9', "parse", "bad digit in integer literal: " + s);
    u128 d = static_cast<u128>(c - '0');
    require(v <= (kU128Max - d) / 10, "overflow", "integer literal too large: " + s);
    v = v * 10 + d;
  }
  return v;
}

// a*b, saturating at u128 max instead of wrapping.
inline u128 mul_sat_u128(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  if (a > kU128Max / b) return kU128Max;
  return a * b;
}

inline bool fits_u64(u128 v) { return v <= std::numeric_limits<u64>::max(); }

}  // namespace afc
