#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "afc/bitvec.hpp"
#include "afc/errors.hpp"
#include "afc/prime.hpp"
#include "afc/repfn.hpp"

namespace afc {

// A subset of Z_p: dense membership bitmap plus cached cardinality.
// Immutable after construction; all operations below are pure functions.
class FpSet {
 public:
  FpSet(Prime prime, const std::vector<u64>& elements) : p_(prime), bits_(prime.value()) {
    for (u64 e : elements) {
      require(e < p_.value(), "element_range",
              "element " + std::to_string(e) + " outside [0, p)");
      bits_.set(e);
    }
    card_ = bits_.count();
  }

  FpSet(Prime prime, std::initializer_list<u64> elements)
      : FpSet(prime, std::vector<u64>(elements)) {}

  FpSet(Prime prime, BitVec bits) : p_(prime), bits_(std::move(bits)) {
    card_ = bits_.count();
  }

  static FpSet empty(Prime prime) { return FpSet(prime, std::vector<u64>{}); }

  static FpSet full(Prime prime) {
    BitVec b(prime.value());
    for (u64 i = 0; i < prime.value(); ++i) b.set(i);
    return FpSet(prime, std::move(b));
  }

  const Prime& prime() const { return p_; }
  u64 modulus() const { return p_.value(); }
  u64 card() const { return card_; }
  bool is_empty() const { return card_ == 0; }
  bool contains(u64 e) const { return e < p_.value() && bits_.test(e); }
  const BitVec& bits() const { return bits_; }

  std::vector<u64> elements() const {
    std::vector<u64> out;
    out.reserve(card_);
    bits_.for_each_set([&](u64 e) { out.push_back(e); });
    return out;
  }

  template <typename F>
  void for_each(F f) const {
    bits_.for_each_set(f);
  }

  bool operator==(const FpSet& o) const {
    return p_ == o.p_ && bits_ == o.bits_;
  }

 private:
  Prime p_;
  BitVec bits_;
  u64 card_ = 0;
};

inline void require_same_modulus(const FpSet& a, const FpSet& b) {
  require(a.modulus() == b.modulus(), "modulus_mismatch",
          "operands live in different prime fields");
}

namespace detail {

// Indicator of S as a count vector over Z_p.
inline RepFn indicator(const BitVec& bits, u64 p) {
  std::vector<u64> c(p, 0);
  bits.for_each_set([&](u64 e) { c[e] = 1; });
  return RepFn(std::move(c));
}

// Union of Y translated by every element of X. Iterates the smaller set.
// Falls back to an exact convolution when both sets are large, where the
// O(min * p/64) rotation pass would lose to O(p log p).
inline BitVec sumset_bits(const BitVec& x, const BitVec& y, u64 p, u64 cx, u64 cy) {
  const BitVec& small = cx <= cy ? x : y;
  const BitVec& other = cx <= cy ? y : x;
  u64 m = std::min(cx, cy);
  u64 lg = 1;
  while ((u64(1) << lg) < p) ++lg;
  if (p >= 512 && m > 3072 * (lg + 1)) {
    RepFn r = cyclic_convolve_exact(indicator(x, p), indicator(y, p));
    BitVec out(p);
    for (u64 s = 0; s < p; ++s)
      if (r.at(s)) out.set(s);
    return out;
  }
  BitVec out(p);
  small.for_each_set([&](u64 e) { other.rotated_or_into(out, e); });
  return out;
}

}  // namespace detail

// {x + y mod p}
inline FpSet sumset(const FpSet& x, const FpSet& y) {
  require_same_modulus(x, y);
  return FpSet(x.prime(), detail::sumset_bits(x.bits(), y.bits(), x.modulus(), x.card(), y.card()));
}

// {x - y mod p}
inline FpSet diffset(const FpSet& x, const FpSet& y) {
  require_same_modulus(x, y);
  BitVec ry = y.bits().reflected();
  return FpSet(x.prime(), detail::sumset_bits(x.bits(), ry, x.modulus(), x.card(), y.card()));
}

// {h + x mod p}
inline FpSet translate(u64 h, const FpSet& x) {
  require(h < x.modulus(), "element_range", "translation offset outside [0, p)");
  BitVec out(x.modulus());
  x.bits().rotated_or_into(out, h);
  return FpSet(x.prime(), std::move(out));
}

// {b * x mod p}; b = 0 collapses any nonempty set to {0}.
inline FpSet dilate(u64 b, const FpSet& x) {
  require(b < x.modulus(), "element_range", "dilation factor outside [0, p)");
  u64 p = x.modulus();
  BitVec out(p);
  if (b == 0) {
    if (!x.is_empty()) out.set(0);
    return FpSet(x.prime(), std::move(out));
  }
  x.for_each([&](u64 e) { out.set(mulmod(b, e, p)); });
  return FpSet(x.prime(), std::move(out));
}

// {xy mod p}. Nonzero part runs in discrete-log space (a cyclic sumset over
// Z_{p-1}); zeros handled by the absorbing rule.
inline FpSet prodset(const FpSet& x, const FpSet& y) {
  require_same_modulus(x, y);
  const u64 p = x.modulus();
  BitVec out(p);
  bool zx = x.contains(0), zy = y.contains(0);
  u64 cx = x.card() - (zx ? 1 : 0);
  u64 cy = y.card() - (zy ? 1 : 0);
  if ((zx && !y.is_empty()) || (zy && !x.is_empty())) out.set(0);
  if (cx == 0 || cy == 0) return FpSet(x.prime(), std::move(out));

  if (static_cast<u128>(cx) * cy <= 16 * static_cast<u128>(p)) {
    x.for_each([&](u64 a) {
      if (a == 0) return;
      y.for_each([&](u64 b) {
        if (b == 0) return;
        out.set(mulmod(a, b, p));
      });
    });
    return FpSet(x.prime(), std::move(out));
  }

  DlogTable dlog(x.prime());
  const u64 n = p - 1;
  BitVec lx(n), ly(n);
  x.for_each([&](u64 a) {
    if (a) lx.set(dlog.log(a));
  });
  y.for_each([&](u64 b) {
    if (b) ly.set(dlog.log(b));
  });
  BitVec lsum = detail::sumset_bits(lx, ly, n, cx, cy);
  lsum.for_each_set([&](u64 k) { out.set(dlog.exp(k)); });
  return FpSet(x.prime(), std::move(out));
}

// {x^{-1} : x in S}; requires 0 not in S. Log-space index reflection.
inline FpSet invert_set(const FpSet& s) {
  require(!s.contains(0), "division", "cannot invert a set containing 0");
  const u64 p = s.modulus();
  BitVec out(p);
  if (s.card() <= 64) {
    s.for_each([&](u64 e) { out.set(invmod(e, p)); });
    return FpSet(s.prime(), std::move(out));
  }
  DlogTable dlog(s.prime());
  const u64 n = p - 1;
  s.for_each([&](u64 e) {
    u64 k = dlog.log(e);
    out.set(dlog.exp(k == 0 ? 0 : n - k));
  });
  return FpSet(s.prime(), std::move(out));
}

inline FpSet set_union(const FpSet& a, const FpSet& b) {
  require_same_modulus(a, b);
  BitVec out = a.bits();
  out |= b.bits();
  return FpSet(a.prime(), std::move(out));
}

inline FpSet set_intersect(const FpSet& a, const FpSet& b) {
  require_same_modulus(a, b);
  BitVec out = a.bits();
  out &= b.bits();
  return FpSet(a.prime(), std::move(out));
}

inline FpSet set_minus(const FpSet& a, const FpSet& b) {
  require_same_modulus(a, b);
  BitVec out = a.bits();
  out.subtract(b.bits());
  return FpSet(a.prime(), std::move(out));
}

inline FpSet remove_element(const FpSet& a, u64 e) {
  BitVec out = a.bits();
  if (e < a.modulus()) out.reset(e);
  return FpSet(a.prime(), std::move(out));
}

// Q[X,Y] = (X-X) / ((Y-Y) \ {0}), computed as a product set of the difference
// set with the inverted nonzero differences of Y. O(|Y-Y|) dilates beats
// quadruple enumeration.
inline FpSet quotient_set(const FpSet& x, const FpSet& y) {
  require_same_modulus(x, y);
  require(y.card() > 1, "precondition", "quotient set needs |Y| > 1");
  FpSet dx = diffset(x, x);
  FpSet dy = remove_element(diffset(y, y), 0);
  return prodset(dx, invert_set(dy));
}

}  // namespace afc
