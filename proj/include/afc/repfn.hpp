#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "afc/errors.hpp"
#include "afc/int128.hpp"
#include "afc/prime.hpp"

namespace afc {

// Exact nonnegative-integer count vector indexed by Z_n (n = p or p-1).
// The whole contract is bit-exactness: no float ever touches counts.
class RepFn {
 public:
  explicit RepFn(u64 length) : counts_(length, 0) {
    require(length > 0, "repfn", "representation function needs positive length");
  }

  explicit RepFn(std::vector<u64> counts) : counts_(std::move(counts)) {
    require(!counts_.empty(), "repfn", "representation function needs positive length");
    recompute();
  }

  u64 length() const { return counts_.size(); }
  u64 at(u64 i) const { return counts_[i]; }
  const std::vector<u64>& counts() const { return counts_; }
  u128 mass() const { return mass_; }
  u64 max_count() const { return max_; }

  void bump(u64 i) {
    counts_[i] += 1;
    mass_ += 1;
    max_ = std::max(max_, counts_[i]);
  }

  bool operator==(const RepFn& o) const { return counts_ == o.counts_; }

 private:
  void recompute() {
    mass_ = 0;
    max_ = 0;
    for (u64 c : counts_) {
      mass_ += c;
      max_ = std::max(max_, c);
    }
  }

  std::vector<u64> counts_;
  u128 mass_ = 0;
  u64 max_ = 0;
};

namespace detail {

// NTT-friendly primes, largest 2-adic valuation first. All have word-size
// moduli so butterflies stay in u64 with u128 products.
struct NttPrime {
  u64 mod;
  u64 root;  // primitive root of mod
  int two_adic;
};

inline constexpr NttPrime kNttPrimes[3] = {
    {2013265921ULL, 31ULL, 27},  // 15 * 2^27 + 1
    {469762049ULL, 3ULL, 26},    // 7 * 2^26 + 1
    {167772161ULL, 3ULL, 25},    // 5 * 2^25 + 1
};

inline void ntt_inplace(std::vector<u64>& a, bool inverse, u64 mod, u64 g) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    u64 w = powmod(g, (mod - 1) / len, mod);
    if (inverse) w = invmod(w, mod);
    for (size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (size_t j = 0; j < len / 2; ++j) {
        u64 x = a[i + j];
        u64 y = mulmod(a[i + j + len / 2], wn, mod);
        a[i + j] = addmod(x, y, mod);
        a[i + j + len / 2] = submod(x, y, mod);
        wn = mulmod(wn, w, mod);
      }
    }
  }
  if (inverse) {
    u64 ninv = invmod(n % mod, mod);
    for (auto& x : a) x = mulmod(x, ninv, mod);
  }
}

// Cyclic convolution of length n, reduced mod P.mod, via zero-padded linear
// convolution folded back.
inline std::vector<u64> cyclic_convolve_mod(const std::vector<u64>& u, const std::vector<u64>& v,
                                            const NttPrime& P) {
  const size_t n = u.size();
  size_t target = 2 * n - 1;
  size_t N = 1;
  while (N < target) N <<= 1;
  std::vector<u64> a(N, 0), b(N, 0);
  for (size_t i = 0; i < n; ++i) a[i] = u[i] % P.mod;
  for (size_t i = 0; i < n; ++i) b[i] = v[i] % P.mod;
  ntt_inplace(a, false, P.mod, P.root);
  ntt_inplace(b, false, P.mod, P.root);
  for (size_t i = 0; i < N; ++i) a[i] = mulmod(a[i], b[i], P.mod);
  ntt_inplace(a, true, P.mod, P.root);
  std::vector<u64> w(n);
  for (size_t s = 0; s < n; ++s) {
    u64 x = a[s];
    if (s + n < target) x = addmod(x, a[s + n], P.mod);
    w[s] = x;
  }
  return w;
}

// Garner reconstruction from up to three word-size moduli into u128.
inline u128 crt_combine(const u64* residues, const NttPrime* primes, int k) {
  u128 value = residues[0];
  u128 prod = primes[0].mod;
  for (int i = 1; i < k; ++i) {
    u64 m = primes[i].mod;
    u64 cur = static_cast<u64>(value % m);
    u64 diff = submod(residues[i] % m, cur, m);
    u64 pinv = invmod(static_cast<u64>(prod % m), m);
    u64 t = mulmod(diff, pinv, m);
    value += prod * t;
    prod *= m;
  }
  return value;
}

}  // namespace detail

// Exact cyclic convolution: w[s] = sum_t u[t] * v[(s-t) mod n].
// Below length 512 a schoolbook pass with u128 accumulators; above, modular
// NTTs over enough coprime moduli that the reconstructed coefficients are
// provably exact. Throws on 64-bit output overflow rather than rounding.
inline RepFn cyclic_convolve_exact(const RepFn& u, const RepFn& v) {
  require(u.length() == v.length(), "length_mismatch",
          "convolution operands must have equal length");
  const size_t n = u.length();
  if (u.mass() == 0 || v.mass() == 0) return RepFn(n);

  // A-priori coefficient bound; every output entry is at most this.
  u128 bound = mul_sat_u128(mul_sat_u128(n, u.max_count()), v.max_count());
  bound = std::min(bound, mul_sat_u128(u.mass(), v.max_count()));
  bound = std::min(bound, mul_sat_u128(v.mass(), u.max_count()));

  if (n < 512) {
    std::vector<u64> w(n);
    for (size_t s = 0; s < n; ++s) {
      u128 acc = 0;
      for (size_t t = 0; t < n; ++t) {
        u64 uv = u.at(t);
        if (uv == 0) continue;
        size_t idx = s >= t ? s - t : s + n - t;
        acc += static_cast<u128>(uv) * v.at(idx);
      }
      require(fits_u64(acc), "overflow", "convolution coefficient exceeds 64 bits");
      w[s] = static_cast<u64>(acc);
    }
    RepFn out(std::move(w));
    return out;
  }

  size_t target = 2 * n - 1;
  int lg = 0;
  while ((size_t(1) << lg) < target) ++lg;

  // Pick the fewest moduli whose product strictly exceeds the bound.
  std::vector<detail::NttPrime> usable;
  for (const auto& P : detail::kNttPrimes)
    if (P.two_adic >= lg) usable.push_back(P);
  int k = 0;
  u128 prod = 1;
  while (k < static_cast<int>(usable.size()) && prod <= bound) {
    prod = mul_sat_u128(prod, usable[k].mod);
    ++k;
  }
  require(prod > bound, "overflow",
          "convolution length/magnitude beyond exact-reconstruction range");

  std::vector<std::vector<u64>> residues(k);
  for (int i = 0; i < k; ++i)
    residues[i] = detail::cyclic_convolve_mod(u.counts(), v.counts(), usable[i]);

  std::vector<u64> w(n);
  u64 res[3];
  for (size_t s = 0; s < n; ++s) {
    for (int i = 0; i < k; ++i) res[i] = residues[i][s];
    u128 val = detail::crt_combine(res, usable.data(), k);
    require(fits_u64(val), "overflow", "convolution coefficient exceeds 64 bits");
    w[s] = static_cast<u64>(val);
  }
  return RepFn(std::move(w));
}

}  // namespace afc
