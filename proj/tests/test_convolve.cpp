#include <catch2/catch_amalgamated.hpp>

#include "afc/afc.hpp"
#include "oracles.hpp"

using namespace afc;

TEST_CASE("convolution matches hand-enumerated examples") {
  RepFn u(std::vector<u64>{1, 1, 0, 0, 0});  // indicator {0,1} over Z_5
  RepFn w = cyclic_convolve_exact(u, u);
  CHECK(w.counts() == std::vector<u64>{1, 2, 1, 0, 0});

  RepFn delta(std::vector<u64>{1, 0, 0, 0, 0});
  RepFn v(std::vector<u64>{3, 1, 4, 1, 5});
  CHECK(cyclic_convolve_exact(v, delta) == v);  // delta identity

  RepFn a(std::vector<u64>{2, 3, 0, 7});
  RepFn b(std::vector<u64>{1, 0, 5, 2});
  CHECK(cyclic_convolve_exact(a, b).mass() == a.mass() * b.mass());  // bilinearity of mass

  CHECK_THROWS_AS(cyclic_convolve_exact(u, a), contract_error);  // length mismatch
}

TEST_CASE("convolution equals schoolbook on 1000 random pairs up to 4096") {
  SplitMix64 rng(60601);
  for (int iter = 0; iter < 1000; ++iter) {
    u64 n = 1 + rng.below(4096);
    std::vector<u64> u(n), v(n);
    // sparse-ish entries keep the oracle's u64 accumulation safely exact
    for (auto& x : u) x = rng.below(8) == 0 ? rng.below(1 << 10) : 0;
    for (auto& x : v) x = rng.below(8) == 0 ? rng.below(1 << 10) : 0;
    auto expect = oracle::schoolbook_cyclic(u, v);
    RepFn got = cyclic_convolve_exact(RepFn(u), RepFn(v));
    REQUIRE(got.counts() == expect);
  }
}

TEST_CASE("multi-modulus reconstruction handles large coefficients") {
  // Coefficient bound beyond one word-size modulus forces a two-prime
  // reconstruction; cross-check one coordinate by direct summation.
  const u64 n = 600;
  const u64 big = u64(1) << 20;
  std::vector<u64> u(n), v(n, big);
  for (u64 i = 0; i < n; ++i) u[i] = big + i;
  RepFn w = cyclic_convolve_exact(RepFn(u), RepFn(v));
  u128 direct = 0;
  for (u64 t = 0; t < n; ++t) direct += static_cast<u128>(u[t]) * v[(n - t) % n];
  REQUIRE(fits_u64(direct));
  CHECK(w.at(0) == static_cast<u64>(direct));
}

TEST_CASE("coefficient overflow is an error, not silent wrap") {
  const u64 n = 700;
  std::vector<u64> u(n, u64(1) << 60), v(n, 4);
  CHECK_THROWS_AS(cyclic_convolve_exact(RepFn(u), RepFn(v)), contract_error);
  // schoolbook path detects overflow from actual values too
  std::vector<u64> s(8, u64(1) << 63), t(8, 2);
  CHECK_THROWS_AS(cyclic_convolve_exact(RepFn(s), RepFn(t)), contract_error);
}

TEST_CASE("zero-mass operands convolve to zero at every length") {
  for (u64 n : {1ULL, 5ULL, 600ULL}) {
    RepFn z(n);
    std::vector<u64> v(n, 3);
    CHECK(cyclic_convolve_exact(z, RepFn(v)).mass() == 0);
    CHECK(cyclic_convolve_exact(RepFn(v), z).mass() == 0);
  }
}

TEST_CASE("rational literals parse decimally, never as octal") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("09/3") == Rational(3));
  CHECK(parse_rational("1/308") == Rational(1, 308));
  CHECK(parse_rational("15") == Rational(15));
  CHECK(parse_rational("2.") == Rational(2));
  CHECK_THROWS_AS(parse_rational("1/0"), contract_error);
  CHECK_THROWS_AS(parse_rational("x"), contract_error);
  CHECK_THROWS_AS(parse_rational(""), contract_error);
}

TEST_CASE("NTT moduli are primes with primitive roots") {
  for (const auto& P : detail::kNttPrimes) {
    CHECK(is_prime_u64(P.mod));
    CHECK((P.mod - 1) % (u64(1) << P.two_adic) == 0);
    for (u64 q : prime_factors(P.mod - 1)) CHECK(powmod(P.root, (P.mod - 1) / q, P.mod) != 1);
  }
}
