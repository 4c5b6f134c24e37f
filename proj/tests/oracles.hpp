#pragma once

// Brute-force oracles for the test suite. Everything here works from the
// definitions by direct enumeration and stays independent of the library's
// computation paths (no bitmap rotation, no convolution, no dlog tables).

#include <algorithm>
#include <set>
#include <vector>

#include "afc/int128.hpp"
#include "afc/rng.hpp"

namespace oracle {

using afc::u128;
using afc::u64;

using Set = std::vector<u64>;  // sorted distinct values in [0, p)

inline Set from_std(const std::set<u64>& s) { return Set(s.begin(), s.end()); }

inline bool member(const Set& s, u64 v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline Set sumset(const Set& x, const Set& y, u64 p) {
  std::set<u64> out;
  for (u64 a : x)
    for (u64 b : y) out.insert((a + b) % p);
  return from_std(out);
}

inline Set diffset(const Set& x, const Set& y, u64 p) {
  std::set<u64> out;
  for (u64 a : x)
    for (u64 b : y) out.insert((a + p - b) % p);
  return from_std(out);
}

inline Set prodset(const Set& x, const Set& y, u64 p) {
  std::set<u64> out;
  for (u64 a : x)
    for (u64 b : y) out.insert(static_cast<u64>(static_cast<u128>(a) * b % p));
  return from_std(out);
}

inline Set dilate(u64 b, const Set& x, u64 p) {
  std::set<u64> out;
  for (u64 a : x) out.insert(static_cast<u64>(static_cast<u128>(a) * b % p));
  return from_std(out);
}

inline Set translate(u64 h, const Set& x, u64 p) {
  std::set<u64> out;
  for (u64 a : x) out.insert((a + h) % p);
  return from_std(out);
}

inline u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % p);
    b = static_cast<u64>(static_cast<u128>(b) * b % p);
    e >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Quotient set by quadruple enumeration straight from the definition.
inline Set quotient_set(const Set& x, const Set& y, u64 p) {
  std::set<u64> out;
  for (u64 x1 : x)
    for (u64 x2 : x)
      for (u64 y1 : y)
        for (u64 y2 : y) {
          if (y1 == y2) continue;
          u64 num = (x1 + p - x2) % p;
          u64 den = (y1 + p - y2) % p;
          out.insert(static_cast<u64>(static_cast<u128>(num) * invmod(den, p) % p));
        }
  return from_std(out);
}

inline std::vector<u64> schoolbook_cyclic(const std::vector<u64>& u, const std::vector<u64>& v) {
  size_t n = u.size();
  std::vector<u64> w(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) w[(i + j) % n] += u[i] * v[j];
  return w;
}

// Additive energy by quadruple enumeration.
inline u128 additive_energy(const Set& a, const Set& b, u64 p) {
  u128 count = 0;
  for (u64 a1 : a)
    for (u64 a2 : a)
      for (u64 b1 : b)
        for (u64 b2 : b)
          if ((a1 + p - a2) % p == (b1 + p - b2) % p) ++count;
  return count;
}

inline u128 multiplicative_energy(const Set& a, const Set& b, u64 p) {
  u128 count = 0;
  for (u64 a1 : a)
    for (u64 a2 : a)
      for (u64 b1 : b)
        for (u64 b2 : b)
          if (static_cast<u128>(a1) * a2 % p == static_cast<u128>(b1) * b2 % p) ++count;
  return count;
}

inline u128 collision_count(const Set& x, const Set& y, u64 xi, u64 p) {
  std::vector<u64> f(p, 0);
  for (u64 a : x)
    for (u64 b : y) f[(a + static_cast<u64>(static_cast<u128>(b) * xi % p)) % p] += 1;
  u128 acc = 0;
  for (u64 v : f) acc += static_cast<u128>(v) * v;
  return acc;
}

// Random subset of [0, p) of given size (test instance generation).
inline Set random_set(u64 p, u64 size, u64 seed) {
  auto v = afc::sample_without_replacement(p, size, seed);
  std::sort(v.begin(), v.end());
  return v;
}

inline Set random_nonzero_set(u64 p, u64 size, u64 seed) {
  auto v = afc::sample_without_replacement(p - 1, size, seed);
  for (auto& e : v) e += 1;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace oracle
