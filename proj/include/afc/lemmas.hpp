#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "afc/energy.hpp"
#include "afc/errors.hpp"
#include "afc/fpset.hpp"
#include "afc/pair_graph.hpp"
#include "afc/rational.hpp"

namespace afc {

// Result of one verified inequality: both sides exact, a satisfaction flag,
// and whatever witnesses the construction produced.
struct LemmaReport {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool holds = false;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
};

inline nlohmann::ordered_json report_to_json(const LemmaReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["lhs"] = rational_string(r.lhs);
  j["rhs"] = rational_string(r.rhs);
  j["holds"] = r.holds;
  j["witness"] = r.witness;
  return j;
}

// |X-Z| <= |X-Y||Y-Z| / |Y|. Holds on every input; false flags a bug.
inline LemmaReport verify_ruzsa_triangle(const FpSet& x, const FpSet& y, const FpSet& z) {
  require_same_modulus(x, y);
  require_same_modulus(y, z);
  require(!x.is_empty() && !y.is_empty() && !z.is_empty(), "empty_set",
          "Ruzsa triangle needs nonempty sets");
  LemmaReport r;
  r.name = "ruzsa_triangle";
  r.lhs = Rational(diffset(x, z).card());
  r.rhs = Rational(BigInt(diffset(x, y).card()) * diffset(y, z).card(), BigInt(y.card()));
  r.holds = r.lhs <= r.rhs;
  return r;
}

// |X_1 + ... + X_k| <= prod |Y + X_i| / |Y|^{k-1}.
inline LemmaReport verify_ruzsa_sums(const FpSet& y, const std::vector<FpSet>& xs) {
  require(!xs.empty(), "empty_set", "need at least one summand");
  require(!y.is_empty(), "empty_set", "Y must be nonempty");
  BigInt num = 1;
  FpSet total = xs[0];
  for (size_t i = 0; i < xs.size(); ++i) {
    require_same_modulus(y, xs[i]);
    require(!xs[i].is_empty(), "empty_set", "summands must be nonempty");
    num *= sumset(y, xs[i]).card();
    if (i > 0) total = sumset(total, xs[i]);
  }
  BigInt den = 1;
  for (size_t i = 1; i < xs.size(); ++i) den *= y.card();
  LemmaReport r;
  r.name = "ruzsa_sums";
  r.lhs = Rational(total.card());
  r.rhs = Rational(num, den);
  r.holds = r.lhs <= r.rhs;
  r.witness["k"] = xs.size();
  return r;
}

// Popular-sum graph extraction: when E_+(A,B) > |A|^{3/2}|B|^{3/2} / K there
// is G with |G| > |A||B|/(2K) and |A +_G B| < 2K sqrt(|A||B|). The scan walks
// the descending distinct values of r_{A+B} and returns the first threshold
// whose graph meets both conclusions.
inline std::pair<PairGraph, LemmaReport> popular_sum_graph(const FpSet& a, const FpSet& b,
                                                           const Rational& k) {
  require_same_modulus(a, b);
  require(!a.is_empty() && !b.is_empty(), "empty_set", "popular sum graph of empty set");
  require(k >= 1, "precondition", "K must be >= 1");
  const BigInt kn = numerator(k), kd = denominator(k);
  const BigInt m = BigInt(a.card()) * b.card();
  const BigInt energy = big_from_u128(additive_energy(a, b).value);
  // E > M^{3/2}/K  <=>  (E K)^2 > M^3 (both sides positive).
  require((energy * kn) * (energy * kn) > m * m * m * kd * kd, "hypothesis",
          "hypothesis E_+(A,B) > |A|^{3/2}|B|^{3/2}/K fails");

  RepFn r = rep_fn_sum(a, b);
  std::map<u64, u64> by_value;  // attained r-value -> number of sums attaining it
  for (u64 s = 0; s < r.length(); ++s)
    if (r.at(s)) by_value[r.at(s)] += 1;

  u64 threshold = 0;
  BigInt edges = 0, support = 0;
  bool found = false;
  for (auto it = by_value.rbegin(); it != by_value.rend(); ++it) {
    u64 value = it->first;
    u64 count = it->second;
    edges += BigInt(value) * count;
    support += count;
    bool big_graph = edges * 2 * kn > m * kd;
    bool small_sumset = support * support * kd * kd < 4 * kn * kn * m;
    if (big_graph && small_sumset) {
      threshold = value;
      found = true;
      break;
    }
  }
  if (!found)
    throw std::logic_error("popular_sum_graph: no threshold works although hypothesis holds");

  PairGraph g(a, b);
  const u64 p = a.modulus();
  const auto& la = g.left_elements();
  const auto& rb = g.right_elements();
  for (size_t i = 0; i < la.size(); ++i)
    for (size_t j = 0; j < rb.size(); ++j)
      if (r.at(addmod(la[i], rb[j], p)) >= threshold) g.add_edge_by_index(i, j);

  LemmaReport rep;
  rep.name = "popular_sum_graph";
  rep.lhs = Rational(edges);
  rep.rhs = Rational(m, 2 * kn) * kd;  // M / (2K)
  u64 partial = partial_sumset(g).card();
  bool c2 = BigInt(partial) * partial * kd * kd < 4 * kn * kn * m;
  rep.holds = (rep.lhs > rep.rhs) && c2;
  rep.witness["threshold"] = threshold;
  rep.witness["edges"] = to_string_u128(g.edge_count());
  rep.witness["partial_sumset"] = partial;
  rep.witness["sumset_bound"] = format_real(2.0 * to_double(k) * std::sqrt(to_double(Rational(m))));
  rep.witness["K"] = rational_string(k);
  return {std::move(g), std::move(rep)};
}

// Selects xi in G minimizing the collision count (ties to the smallest xi),
// which realizes |X + xi Y| >= |X||Y||G| / (|X||Y| + |G|) and the
// Cauchy-Schwarz floor |X + xi Y| * E_+(X, xi Y) >= |X|^2 |Y|^2.
inline std::pair<u64, LemmaReport> best_dilate(const FpSet& x, const FpSet& y, const FpSet& g) {
  require_same_modulus(x, y);
  require_same_modulus(y, g);
  require(!x.is_empty() && !y.is_empty(), "empty_set", "best dilate of empty set");
  require(!g.is_empty(), "empty_set", "candidate set G is empty");
  require(!g.contains(0), "zero_shift", "G must lie in Z_p^*");

  u64 best = 0;
  u128 best_coll = kU128Max;
  g.for_each([&](u64 xi) {
    u128 c = collision_count(x, y, xi);
    if (c < best_coll) {
      best_coll = c;
      best = xi;
    }
  });

  const u128 m = static_cast<u128>(x.card()) * y.card();
  u64 sum_card = sumset(x, dilate(best, y)).card();
  bool c1 = static_cast<u128>(sum_card) * (m + g.card()) >= m * g.card();
  // Cauchy-Schwarz floor; equality is attained when every fiber has the
  // same size (singletons, full field), so the check is non-strict.
  bool c2 = static_cast<u128>(sum_card) * best_coll >= m * m;

  LemmaReport rep;
  rep.name = "best_dilate";
  rep.lhs = Rational(sum_card);
  rep.rhs = rational_from_u128(m * g.card(), m + g.card());
  rep.holds = c1 && c2;
  rep.witness["xi"] = best;
  rep.witness["collisions"] = to_string_u128(best_coll);
  rep.witness["energy_floor"] = rational_string(rational_from_u128(m * m, best_coll));
  return {best, std::move(rep)};
}

// xi in Q[X,Y]  <=>  |X + xi Y| < |X||Y|.
inline bool in_quotient_set(u64 xi, const FpSet& x, const FpSet& y) {
  require_same_modulus(x, y);
  require(y.card() > 1, "precondition", "quotient membership needs |Y| > 1");
  require(xi < x.modulus(), "element_range", "xi outside [0, p)");
  u128 m = static_cast<u128>(x.card()) * y.card();
  return static_cast<u128>(sumset(x, dilate(xi, y)).card()) < m;
}

enum class CoverSign { plus, minus };

struct CoverResult {
  std::vector<u64> translates;
  CoverSign sign = CoverSign::plus;
  u64 covered = 0;
  Rational epsilon;
  double bound = 0.0;  // ln(1/eps) * min(|X1+X2|, |X1-X2|) / |X2|
};

// Greedy peeling from the covering lemma's proof: each round takes the
// translate of X2 that hits the most uncovered elements of X1 (ties to the
// smallest translate) until fewer than eps*|X1| remain. The translate count
// never exceeds ceil(ln(1/eps) * min(|X1+X2|,|X1-X2|) / |X2|).
inline CoverResult greedy_cover(const FpSet& x1, const FpSet& x2, const Rational& eps) {
  require_same_modulus(x1, x2);
  require(!x1.is_empty() && !x2.is_empty(), "empty_set", "cover of empty set");
  require(eps > 0 && eps < 1, "precondition", "epsilon must lie in (0, 1)");

  const u64 p = x1.modulus();
  u64 s_plus = sumset(x1, x2).card();
  u64 s_minus = diffset(x1, x2).card();
  CoverResult out;
  out.sign = s_plus <= s_minus ? CoverSign::plus : CoverSign::minus;
  out.epsilon = eps;
  double eps_d = to_double(eps);
  out.bound = std::log(1.0 / eps_d) * static_cast<double>(std::min(s_plus, s_minus)) /
              static_cast<double>(x2.card());

  const BigInt stop_num = numerator(eps) * x1.card();
  const BigInt stop_den = denominator(eps);
  BitVec rem = x1.bits();
  u64 rem_count = x1.card();
  while (BigInt(rem_count) * stop_den >= stop_num) {
    FpSet rem_set(x1.prime(), rem);
    RepFn r = rep_fn_diff(rem_set, x2);
    u64 best_t = 0, best_hit = 0;
    for (u64 t = 0; t < p; ++t) {
      if (r.at(t) > best_hit) {
        best_hit = r.at(t);
        best_t = t;
      }
    }
    // mass |rem||X2| > 0, so some translate always hits
    out.translates.push_back(best_t);
    BitVec shifted(p);
    x2.bits().rotated_or_into(shifted, best_t);
    rem.subtract(shifted);
    rem_count = rem.count();
  }
  out.covered = x1.card() - rem_count;
  return out;
}

inline LemmaReport cover_report(const FpSet& x1, const FpSet& x2, const CoverResult& c) {
  LemmaReport rep;
  rep.name = "shen_cover";
  rep.lhs = Rational(c.translates.size());
  rep.rhs = Rational(static_cast<u64>(std::ceil(c.bound)));
  bool coverage_ok = BigInt(c.covered) * denominator(c.epsilon) >=
                     (denominator(c.epsilon) - numerator(c.epsilon)) * x1.card();
  rep.holds = (rep.lhs <= rep.rhs) && coverage_ok;
  rep.witness["translates"] = c.translates;
  rep.witness["sign"] = c.sign == CoverSign::plus ? "plus" : "minus";
  rep.witness["covered"] = c.covered;
  rep.witness["size_x1"] = x1.card();
  rep.witness["size_x2"] = x2.card();
  rep.witness["epsilon"] = rational_string(c.epsilon);
  rep.witness["bound"] = format_real(c.bound);
  return rep;
}

struct GaraevReport {
  Rational lhs;            // |A-A|^2 |A|^2 |B|^2 / E_x(A,B), exact
  Rational big_l;          // L = min(|B|, p/|A|), exact
  bool degenerate_l = false;
  double empirical_c = 0.0;  // lhs * log2(L) / (|A|^3 L^{1/9}); meaningless when degenerate
};

// Measured form of the sum-product lower bound; reporting only, since the
// absolute constant is unspecified.
inline GaraevReport garaev_ratio(const FpSet& a, const FpSet& b) {
  require_same_modulus(a, b);
  require(!a.is_empty() && !b.is_empty(), "empty_set", "Garaev ratio of empty set");
  const u64 p = a.modulus();
  GaraevReport rep;
  BigInt d = diffset(a, a).card();
  BigInt e = big_from_u128(multiplicative_energy(a, b).value);
  rep.lhs = Rational(d * d * BigInt(a.card()) * a.card() * BigInt(b.card()) * b.card(), e);
  rep.big_l = std::min(Rational(b.card()), Rational(p, a.card()));
  if (rep.big_l <= 1) {
    rep.degenerate_l = true;
    return rep;
  }
  double ld = to_double(rep.big_l);
  double acube = static_cast<double>(a.card());
  acube = acube * acube * acube;
  rep.empirical_c = to_double(rep.lhs) * std::log2(ld) / (acube * std::pow(ld, 1.0 / 9.0));
  return rep;
}

inline nlohmann::ordered_json garaev_to_json(const GaraevReport& r) {
  nlohmann::ordered_json j;
  j["name"] = "garaev";
  j["lhs"] = rational_string(r.lhs);
  j["L"] = rational_string(r.big_l);
  j["degenerate_L"] = r.degenerate_l;
  if (!r.degenerate_l) j["empirical_C"] = format_real(r.empirical_c);
  return j;
}

// Candidate witness for the Balog-Szemeredi-Gowers conclusions. Nothing is
// checked at construction; verify_bsg_witness judges it.
struct BsgWitness {
  FpSet a_prime;
  FpSet b_prime;
  u64 q = 1;
};

// Checks the four conclusions against a caller-supplied witness. Real-valued
// factors (sqrt 2, ln(e|A|)) are evaluated in floating point with a relative
// comparison slack of 2^-40.
inline LemmaReport verify_bsg_witness(const FpSet& a, const FpSet& b, const PairGraph& g,
                                      const Rational& k, const BsgWitness& w) {
  require_same_modulus(a, b);
  require_same_modulus(a, g.left());
  require(k > 0, "precondition", "K must be positive");
  require(w.q >= 1, "precondition", "Q must be a positive integer");
  // Hypothesis |G| >= |A||B| / K, checked exactly.
  BigInt m = BigInt(a.card()) * b.card();
  require(big_from_u128(g.edge_count()) * numerator(k) >= m * denominator(k), "hypothesis",
          "BSG hypothesis |G| >= |A||B|/K fails");

  constexpr double kSlack = 1.0 - 0x1p-40;
  auto ge = [&](double lhs, double rhs) { return lhs >= rhs * kSlack; };

  const double kd = to_double(k);
  const double ln_ea = 1.0 + std::log(static_cast<double>(a.card()));
  const double rt2 = std::sqrt(2.0);
  const double ap = static_cast<double>(w.a_prime.card());
  const double bp = static_cast<double>(w.b_prime.card());
  const double q = static_cast<double>(w.q);
  const double md = static_cast<double>(a.card()) * static_cast<double>(b.card());

  bool subset_a = a.bits().contains_all(w.a_prime.bits()) && a.modulus() == w.a_prime.modulus();
  bool subset_b = b.bits().contains_all(w.b_prime.bits()) && b.modulus() == w.b_prime.modulus();

  bool i1 = ge(ap, static_cast<double>(a.card()) / (4.0 * rt2 * kd));
  bool i2 = ge(q, static_cast<double>(a.card()) / (8.0 * rt2 * kd * kd * ln_ea)) &&
            w.q <= 2 * w.a_prime.card();
  bool i3 = ge(bp, md / (8.0 * rt2 * q * kd * kd * ln_ea));
  double partial = static_cast<double>(partial_sumset(g).card());
  double ab_sum = static_cast<double>(sumset(w.a_prime, w.b_prime).card());
  bool i4 = ge(partial * partial * partial,
               ab_sum * q * static_cast<double>(b.card()) / (256.0 * kd * kd * kd * ln_ea));

  LemmaReport rep;
  rep.name = "bsg_witness";
  // Headline pair is the first conclusion squared, which keeps it exact:
  // |A'|^2 >= |A|^2 / (32 K^2).
  rep.lhs = Rational(BigInt(w.a_prime.card()) * w.a_prime.card());
  rep.rhs = Rational(BigInt(a.card()) * a.card() * denominator(k) * denominator(k),
                     32 * numerator(k) * numerator(k));
  rep.holds = subset_a && subset_b && i1 && i2 && i3 && i4;
  rep.witness["subset_a"] = subset_a;
  rep.witness["subset_b"] = subset_b;
  rep.witness["size_lower"] = i1;
  rep.witness["q_window"] = i2;
  rep.witness["b_size_lower"] = i3;
  rep.witness["partial_sumset_cube"] = i4;
  rep.witness["Q"] = w.q;
  rep.witness["comparison_slack"] = "2^-40 relative";
  return rep;
}

// B_1 = {b in B : E_+(A, bA) > tau}; reuses the per-shift energy table.
inline FpSet select_high_energy_shifts(const FpSet& a, const FpSet& b, u128 tau) {
  require_same_modulus(a, b);
  require(!a.is_empty(), "empty_set", "A must be nonempty");
  require(!b.contains(0), "zero_shift", "B must lie in Z_p^*");
  BitVec bits(b.modulus());
  if (!b.is_empty()) {
    for (const auto& [shift, e] : detail::per_shift_energies(a, b))
      if (e > tau) bits.set(shift);
  }
  return FpSet(a.prime(), std::move(bits));
}

}  // namespace afc
