#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "afc/errors.hpp"
#include "afc/int128.hpp"

namespace afc {

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 t = m - b;
  return a >= t ? a - t : a + b;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 p) {
  require(a % p != 0, "division", "inverse of zero");
  return powmod(a, p - 2, p);  // p prime
}

// Deterministic Miller-Rabin, valid for all n < 2^64 with this base set.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> fs;
  for (u64 d = 2; static_cast<u128>(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// Default modulus cap; dense length-p vectors must stay desk-scale.
// Overridable through the AFC_MAX_P environment variable.
inline u64 modulus_cap() {
  if (const char* env = std::getenv("AFC_MAX_P")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v >= 2) return v;
  }
  return u64(1) << 24;
}

// A verified prime modulus together with a primitive root of Z_p^*.
class Prime {
 public:
  explicit Prime(u64 p) : p_(p) {
    require(p >= 2, "modulus", "modulus must be >= 2");
    require(p <= modulus_cap(),
            "modulus_cap", "modulus " + std::to_string(p) + " exceeds cap " +
                               std::to_string(modulus_cap()) + " (set AFC_MAX_P to raise)");
    require(is_prime_u64(p), "modulus", std::to_string(p) + " is not prime");
    generator_ = find_primitive_root(p);
  }

  u64 value() const { return p_; }
  u64 generator() const { return generator_; }

  bool operator==(const Prime& o) const { return p_ == o.p_; }

 private:
  static u64 find_primitive_root(u64 p) {
    if (p == 2) return 1;
    auto qs = prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
      bool ok = true;
      for (u64 q : qs) {
        if (powmod(g, (p - 1) / q, p) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    fail_contract("modulus", "no primitive root found (modulus not prime?)");
  }

  u64 p_;
  u64 generator_;
};

// Discrete logarithm table for Z_p^*: log[g^k] = k, exp[k] = g^k.
// O(p) to build; callers on multiplicative fast paths construct it on demand.
class DlogTable {
 public:
  explicit DlogTable(const Prime& prime) : p_(prime.value()) {
    require(p_ < (u64(1) << 32), "modulus_cap", "discrete log table requires p < 2^32");
    u64 n = p_ - 1;
    log_.assign(p_, 0);
    exp_.assign(n, 0);
    u64 g = prime.generator();
    u64 x = 1;
    for (u64 k = 0; k < n; ++k) {
      exp_[k] = static_cast<u32>(x);
      log_[x] = static_cast<u32>(k);
      x = mulmod(x, g, p_);
    }
  }

  u64 order() const { return p_ - 1; }
  // Valid for x in [1, p).
  u64 log(u64 x) const { return log_[x]; }
  u64 exp(u64 k) const { return exp_[k]; }

 private:
  u64 p_;
  std::vector<u32> log_;
  std::vector<u32> exp_;
};

}  // namespace afc
