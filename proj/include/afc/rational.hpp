#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "afc/errors.hpp"
#include "afc/int128.hpp"

namespace afc {

// Exact integer / rational arithmetic for report values. Hot loops stay on
// u64/u128; these types appear only in lemma reports, records and output.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_from_u128(u128 v) {
  BigInt hi = static_cast<u64>(v >> 64);
  return (hi << 64) | static_cast<u64>(v);
}

inline Rational rational_from_u128(u128 num, u128 den) {
  return Rational(big_from_u128(num), big_from_u128(den));
}

// Uniform "num/den" rendering, denominator always present ("1/1" for one).
inline std::string rational_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Decimal digit parser; cpp_int's string constructor would read a leading
// zero as a C-style octal prefix.
inline BigInt parse_decimal_int(const std::string& s) {
  require(!s.empty(), "parse", "empty integer literal");
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  require(i < s.size(), "parse", "bad integer literal: " + s);
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    require(s[i] >= '0' && s[i] <= '9', "parse", "bad integer literal: " + s);
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

// Accepts "num/den", plain integers, and decimal literals like "0.25".
inline Rational parse_rational(const std::string& s) {
  require(!s.empty(), "parse", "empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_decimal_int(s.substr(0, slash));
    BigInt den = parse_decimal_int(s.substr(slash + 1));
    require(den != 0, "parse", "zero denominator: " + s);
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_decimal_int(s));
  std::string frac = s.substr(dot + 1);
  BigInt num = parse_decimal_int(s.substr(0, dot) + frac);
  BigInt den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational(num, den);
}

inline double to_double(const Rational& q) {
  return static_cast<double>(numerator(q)) / static_cast<double>(denominator(q));
}

// Rounds to 12 significant decimal digits. Records store reals pre-rounded so
// text round-trips reproduce the stored value bit for bit.
inline double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace afc
