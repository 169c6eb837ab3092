#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gl2p/arith.hpp"

using namespace gl2p;

namespace {

long powmod(long b, long e, long m) {
  long r = 1;
  b %= m;
  if (b < 0) b += m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Kronecker symbol from Euler's criterion and the table at 2, extended
// multiplicatively in the bottom argument.
int kronecker_oracle(long D, long m) {
  int r = 1;
  for (long p = 2; m > 1; ++p) {
    while (m % p == 0) {
      m /= p;
      int s;
      if (p == 2) {
        long d8 = ((D % 8) + 8) % 8;
        s = D % 2 == 0 ? 0 : (d8 == 1 || d8 == 7 ? 1 : -1);
      } else {
        long e = powmod(D, (p - 1) / 2, p);
        s = e == 0 ? 0 : (e == 1 ? 1 : -1);
      }
      r *= s;
    }
  }
  return r;
}

bool is_disc(long d) { return ((d % 4) + 4) % 4 <= 1; }

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a + Rational(3, 2) == Rational(0));
  CHECK(a * Rational(-2, 3) == Rational(1));
  CHECK(Rational::parse("-12/8") == Rational(-3, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational(5, 10).to_string() == "1/2");
  CHECK_THROWS_AS(Rational(1, 0), InputError);
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("valuations match repeated division") {
  for (long p : {2L, 3L, 5L, 7L})
    for (long x = 1; x <= 500; ++x) {
      long v = 0;
      for (long y = x; y % p == 0; y /= p) ++v;
      CHECK(valuation_int(BigInt(x), p) == v);
      CHECK(valuation(Rational(x, p * p * p), p).value() == v - 3);
    }
  CHECK(valuation(Rational(0), 3).is_infinite());
  CHECK(abs_p(Rational(12), 2) == Rational(1, 4));
}

TEST_CASE("kronecker symbol agrees with Euler's criterion") {
  for (long D = -60; D <= 60; ++D)
    for (long m = 1; m <= 40; ++m) CHECK(kronecker(BigInt(D), BigInt(m)).value() == kronecker_oracle(D, m));
}

TEST_CASE("factorization and primes") {
  for (long n = 2; n <= 2000; ++n) {
    BigInt prod = 1;
    for (auto [p, e] : factorize(BigInt(n))) {
      CHECK(is_prime(p));
      prod *= pow_int(p, static_cast<unsigned long>(e));
    }
    CHECK(prod == n);
  }
  CHECK(prime_divisors(BigInt(360)) == std::vector<long>{2, 3, 5});
  CHECK_FALSE(is_prime(1L));
  CHECK(is_prime(97L));
}

TEST_CASE("integer square roots and rational squares") {
  for (long n = 0; n <= 3000; ++n) {
    long r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    CHECK(isqrt(BigInt(n)) == r);
  }
  CHECK(is_rational_square(Rational(9, 49)));
  CHECK_FALSE(is_rational_square(Rational(-4)));
  CHECK_FALSE(is_rational_square(Rational(2, 9)));
}

TEST_CASE("fundamental discriminants by search over conductors") {
  for (long D = -400; D <= -3; ++D) {
    if (!is_disc(D)) continue;
    // largest f with D/f^2 a discriminant that has no further square factor of that kind
    long best = 1;
    for (long f = 1; f * f <= -D; ++f) {
      if (D % (f * f) || !is_disc(D / (f * f))) continue;
      best = f;
    }
    auto fd = fundamental_discriminant(BigInt(D));
    CHECK(fd.conductor == best);
    CHECK(fd.fundamental * best * best == D);
    CHECK(is_fundamental_discriminant(fd.fundamental));
  }
}

TEST_CASE("p-adic half-exponent scales") {
  auto s = PAdicScale::sqrt_abs(Rational(8), 2);  // |8|_2^{1/2} = 2^{-3/2}
  CHECK(s.half_exponent() == 3);
  CHECK_FALSE(s.is_rational());
  auto t = s * s;
  CHECK(t.is_rational());
  CHECK(t.to_rational() == Rational(1, 8));
  CHECK(s.to_double() == doctest::Approx(std::pow(2.0, -1.5)));
}
