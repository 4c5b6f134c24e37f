#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "afc/errors.hpp"
#include "afc/int128.hpp"

namespace afc {

// Dense bit string of fixed length n. The cyclic rotate-or is the kernel
// behind sumsets: X+Y is the union of Y rotated by each x in X.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(u64 n) : n_(n), w_((n + 63) / 64, 0) {}

  u64 length() const { return n_; }

  bool test(u64 i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(u64 i) { w_[i >> 6] |= u64(1) << (i & 63); }
  void reset(u64 i) { w_[i >> 6] &= ~(u64(1) << (i & 63)); }

  u64 count() const {
    u64 c = 0;
    for (u64 w : w_) c += static_cast<u64>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (u64 w : w_)
      if (w) return true;
    return false;
  }

  void clear() {
    for (auto& w : w_) w = 0;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

  BitVec& operator|=(const BitVec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  // this &= ~o
  BitVec& subtract(const BitVec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }

  u64 intersection_count(const BitVec& o) const {
    u64 c = 0;
    for (size_t k = 0; k < w_.size(); ++k)
      c += static_cast<u64>(std::popcount(w_[k] & o.w_[k]));
    return c;
  }

  bool contains_all(const BitVec& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (o.w_[k] & ~w_[k]) return false;
    return true;
  }

  template <typename F>
  void for_each_set(F f) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      u64 w = w_[k];
      while (w) {
        unsigned b = static_cast<unsigned>(std::countr_zero(w));
        f(static_cast<u64>(k) * 64 + b);
        w &= w - 1;
      }
    }
  }

  // dst |= (this rotated up by s), i.e. bit i lands on (i+s) mod n.
  void rotated_or_into(BitVec& dst, u64 s) const {
    s %= n_;
    if (s == 0) {
      dst |= *this;
      return;
    }
    or_shift_up(dst, s);
    or_shift_down(dst, n_ - s);
    dst.mask_tail();
  }

  // Reflection through zero: bit i lands on (n - i) mod n.
  BitVec reflected() const {
    BitVec out(n_);
    for_each_set([&](u64 i) { out.set(i == 0 ? 0 : n_ - i); });
    return out;
  }

 private:
  void mask_tail() {
    u64 tail = n_ & 63;
    if (tail) w_.back() &= (u64(1) << tail) - 1;
  }

  // dst |= (this << s) as n-bit integers; overflowed bits dropped by caller's mask.
  void or_shift_up(BitVec& dst, u64 s) const {
    const size_t nw = w_.size();
    const size_t ws = s >> 6;
    const unsigned bs = s & 63;
    if (bs == 0) {
      for (size_t k = nw; k-- > ws;) dst.w_[k] |= w_[k - ws];
    } else {
      for (size_t k = nw; k-- > ws;) {
        u64 lo = w_[k - ws] << bs;
        u64 hi = (k - ws > 0) ? (w_[k - ws - 1] >> (64 - bs)) : 0;
        dst.w_[k] |= lo | hi;
      }
    }
  }

  // dst |= (this >> s)
  void or_shift_down(BitVec& dst, u64 s) const {
    const size_t nw = w_.size();
    const size_t ws = s >> 6;
    const unsigned bs = s & 63;
    if (ws >= nw) return;
    if (bs == 0) {
      for (size_t k = 0; k + ws < nw; ++k) dst.w_[k] |= w_[k + ws];
    } else {
      for (size_t k = 0; k + ws < nw; ++k) {
        u64 lo = w_[k + ws] >> bs;
        u64 hi = (k + ws + 1 < nw) ? (w_[k + ws + 1] << (64 - bs)) : 0;
        dst.w_[k] |= lo | hi;
      }
    }
  }

  u64 n_ = 0;
  std::vector<u64> w_;
};

}  // namespace afc
