#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "afc/errors.hpp"
#include "afc/fpset.hpp"
#include "afc/rational.hpp"
#include "afc/repfn.hpp"

namespace afc {

enum class EnergyMethod { naive, convolution };

struct EnergyValue {
  u128 value = 0;
  EnergyMethod method = EnergyMethod::convolution;
};

// counts[d] = #{(x,y) in X x Y : x - y = d}; mass |X||Y|.
inline RepFn rep_fn_diff(const FpSet& x, const FpSet& y) {
  require_same_modulus(x, y);
  return cyclic_convolve_exact(detail::indicator(x.bits(), x.modulus()),
                               detail::indicator(y.bits().reflected(), y.modulus()));
}

// counts[s] = #{(x,y) in X x Y : x + y = s}.
inline RepFn rep_fn_sum(const FpSet& x, const FpSet& y) {
  require_same_modulus(x, y);
  return cyclic_convolve_exact(detail::indicator(x.bits(), x.modulus()),
                               detail::indicator(y.bits(), y.modulus()));
}

namespace detail {

inline void naive_size_guard(const FpSet& a, const FpSet& b) {
  require(static_cast<u128>(a.card()) * b.card() <= (u128(1) << 16), "naive_guard",
          "naive oracle limited to |A||B| <= 2^16");
}

inline u128 dot_u128(const RepFn& a, const RepFn& b) {
  u128 acc = 0;
  for (u64 d = 0; d < a.length(); ++d) acc += static_cast<u128>(a.at(d)) * b.at(d);
  return acc;
}

inline u128 sum_sq_u128(const RepFn& a) { return dot_u128(a, a); }

}  // namespace detail

// E_+(A,B) = #{(a1,a2,b1,b2) : a1 - a2 = b1 - b2}.
// Convolution route evaluates both closed forms and insists they agree.
inline EnergyValue additive_energy(const FpSet& a, const FpSet& b,
                                   EnergyMethod method = EnergyMethod::convolution) {
  require_same_modulus(a, b);
  require(!a.is_empty() && !b.is_empty(), "empty_set", "additive energy of empty set");
  if (method == EnergyMethod::naive) {
    detail::naive_size_guard(a, b);
    const u64 p = a.modulus();
    const auto ea = a.elements();
    const auto eb = b.elements();
    u128 count = 0;
    for (u64 a1 : ea)
      for (u64 a2 : ea) {
        u64 d = submod(a1, a2, p);
        for (u64 b1 : eb)
          if (b.contains(submod(b1, d, p))) ++count;
      }
    return {count, EnergyMethod::naive};
  }
  u128 by_cross = detail::sum_sq_u128(rep_fn_diff(a, b));
  u128 by_pair = detail::dot_u128(rep_fn_diff(a, a), rep_fn_diff(b, b));
  if (by_cross != by_pair)
    throw std::logic_error("additive energy dual formulas disagree (internal bug)");
  return {by_cross, EnergyMethod::convolution};
}

// E_x(A,B) = #{(a1,a2,b1,b2) : a1 a2 = b1 b2}, zero products included.
// Fast path maps nonzero elements through discrete logs and convolves over
// Z_{p-1}; the zero contribution has a closed form.
inline EnergyValue multiplicative_energy(const FpSet& a, const FpSet& b,
                                         EnergyMethod method = EnergyMethod::convolution) {
  require_same_modulus(a, b);
  require(!a.is_empty() && !b.is_empty(), "empty_set", "multiplicative energy of empty set");
  const u64 p = a.modulus();
  if (method == EnergyMethod::naive) {
    detail::naive_size_guard(a, b);
    const auto ea = a.elements();
    const auto eb = b.elements();
    u128 count = 0;
    for (u64 a1 : ea)
      for (u64 a2 : ea) {
        u64 prod = mulmod(a1, a2, p);
        for (u64 b1 : eb) {
          if (b1 == 0) {
            // 0 * b2 = 0 for every b2 in B.
            if (prod == 0) count += b.card();
          } else if (b.contains(mulmod(prod, invmod(b1, p), p))) {
            ++count;
          }
        }
      }
    return {count, EnergyMethod::naive};
  }

  u64 ca = a.card() - (a.contains(0) ? 1 : 0);
  u64 cb = b.card() - (b.contains(0) ? 1 : 0);
  u128 za = static_cast<u128>(a.card()) * a.card() - static_cast<u128>(ca) * ca;
  u128 zb = static_cast<u128>(b.card()) * b.card() - static_cast<u128>(cb) * cb;
  u128 total = za * zb;
  if (ca > 0 && cb > 0) {
    DlogTable dlog(a.prime());
    const u64 n = p - 1;
    std::vector<u64> la(n, 0), lb(n, 0);
    a.for_each([&](u64 e) {
      if (e) la[dlog.log(e)] = 1;
    });
    b.for_each([&](u64 e) {
      if (e) lb[dlog.log(e)] = 1;
    });
    RepFn ra = cyclic_convolve_exact(RepFn(la), RepFn(la));
    RepFn rb = cyclic_convolve_exact(RepFn(lb), RepFn(lb));
    total += detail::dot_u128(ra, rb);
  }
  return {total, EnergyMethod::convolution};
}

// sum_s f_xi(s)^2 with f_xi(s) = #{(x,y) : x + y*xi = s}. Equals
// E_+(X, xi*Y) for xi != 0; the xi = 0 fiber structure gives |X||Y|^2.
inline u128 collision_count(const FpSet& x, const FpSet& y, u64 xi) {
  require_same_modulus(x, y);
  require(xi < x.modulus(), "element_range", "dilation factor outside [0, p)");
  if (x.is_empty() || y.is_empty()) return 0;
  if (xi == 0) return static_cast<u128>(x.card()) * y.card() * y.card();
  const u64 p = x.modulus();
  if (static_cast<u128>(x.card()) * y.card() <= 16 * static_cast<u128>(p)) {
    std::vector<u64> f(p, 0);
    x.for_each([&](u64 e) {
      y.for_each([&](u64 w) { f[addmod(e, mulmod(w, xi, p), p)] += 1; });
    });
    u128 acc = 0;
    for (u64 v : f) acc += static_cast<u128>(v) * v;
    return acc;
  }
  return detail::sum_sq_u128(rep_fn_sum(x, dilate(xi, y)));
}

struct ShiftEnergySum {
  u128 total = 0;
  std::vector<std::pair<u64, u128>> per_shift;  // b -> E_+(A, bA), ascending b
  Rational normalized;                          // total / (|A|^3 |B|)
};

namespace detail {

// One difference-count convolution, then O(p) per shift:
// E_+(A, bA) = sum_d r(d) * r(d * b^{-1}).
inline std::vector<std::pair<u64, u128>> per_shift_energies(const FpSet& a, const FpSet& b) {
  const u64 p = a.modulus();
  RepFn r = rep_fn_diff(a, a);
  std::vector<std::pair<u64, u128>> out;
  out.reserve(b.card());
  b.for_each([&](u64 shift) {
    u64 binv = invmod(shift, p);
    u128 acc = 0;
    u64 idx = 0;
    for (u64 d = 0; d < p; ++d) {
      acc += static_cast<u128>(r.at(d)) * r.at(idx);
      idx += binv;
      if (idx >= p) idx -= p;
    }
    out.emplace_back(shift, acc);
  });
  return out;
}

inline void shift_sum_preconditions(const FpSet& a, const FpSet& b) {
  require_same_modulus(a, b);
  require(!a.is_empty() && !b.is_empty(), "empty_set", "shift energy sum of empty set");
  require(!b.contains(0), "zero_shift", "B must lie in Z_p^* (0 is not a valid shift)");
}

}  // namespace detail

inline ShiftEnergySum shift_energy_sum(const FpSet& a, const FpSet& b,
                                       EnergyMethod method = EnergyMethod::convolution) {
  detail::shift_sum_preconditions(a, b);
  ShiftEnergySum result;
  if (method == EnergyMethod::naive) {
    b.for_each([&](u64 shift) {
      EnergyValue e = additive_energy(a, dilate(shift, a), EnergyMethod::naive);
      result.per_shift.emplace_back(shift, e.value);
    });
  } else {
    result.per_shift = detail::per_shift_energies(a, b);
  }
  for (const auto& [shift, e] : result.per_shift) result.total += e;
  u128 den = static_cast<u128>(a.card()) * a.card() * a.card() * b.card();
  result.normalized = rational_from_u128(result.total, den);
  return result;
}

}  // namespace afc
