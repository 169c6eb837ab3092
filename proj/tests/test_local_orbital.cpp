#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gl2p/local_orbital.hpp"

using namespace gl2p;

namespace {

// #{X mod p^e : tr X = a, det X = n} / p^{2e}, counting solutions of
// yz = x(a - x) - n directly.
Rational fiber_count(long a, long n, long p, int e) {
  long P = 1;
  for (int i = 0; i < e; ++i) P *= p;
  long cnt = 0;
  for (long x = 0; x < P; ++x)
    for (long y = 0; y < P; ++y) {
      long m = ((x * (a - x) - n) % P + P) % P;
      for (long z = 0; z < P; ++z)
        if ((y * z) % P == m) ++cnt;
    }
  return Rational(cnt, P * P);
}

long depth_for(long p) { return p == 2 ? 10 : (p == 3 ? 8 : 6); }

// Splitting of Q_p(sqrt D) from the square class of D: an odd p is split
// when the unit part is a square mod p; at 2 the unit part must be 1 mod 8.
LocalType splitting_oracle(long D, long p) {
  long v = 0, u = D;
  while (u % p == 0) u /= p, ++v;
  if (p == 2) {
    if (v % 2) return LocalType::ramified;
    long m4 = ((u % 4) + 4) % 4;
    if (m4 == 3) return LocalType::ramified;
    return ((u % 8) + 8) % 8 == 1 ? LocalType::split : LocalType::inert;
  }
  if (v % 2) return LocalType::ramified;
  long r = ((u % p) + p) % p;
  for (long x = 1; x < p; ++x)
    if (x * x % p == r) return LocalType::split;
  return LocalType::inert;
}

}  // namespace

TEST_CASE("closed lattice counts at conductor 0 and 1") {
  CHECK(lattice_count_closed(LocalType::split, 0, 3) == 1);
  CHECK(lattice_count_closed(LocalType::inert, 0, 3) == 1);
  CHECK(lattice_count_closed(LocalType::ramified, 0, 3) == 2);
  CHECK(lattice_count_closed(LocalType::split, 1, 3) == 3);
  CHECK(lattice_count_closed(LocalType::inert, 1, 3) == 5);
  CHECK(lattice_count_closed(LocalType::ramified, 1, 2) == 6);
}

TEST_CASE("local splitting type agrees with square classes") {
  for (long p : {2L, 3L, 5L, 7L})
    for (long a = -9; a <= 9; ++a)
      for (long n : {1L, 2L, 3L, 5L, 6L}) {
        long D = a * a - 4 * n;
        if (D == 0) continue;
        CHECK(local_splitting(Rational(D), p).type == splitting_oracle(D, p));
      }
}

TEST_CASE("orbital integrals equal tree enumeration") {
  for (long p : {2L, 3L, 5L})
    for (long n : {1L, 2L, 3L})
      for (long a = -6; a <= 6; ++a) {
        long D = a * a - 4 * n;
        if (D == 0 || valuation_int(BigInt(D), p) > 4) continue;
        auto f = LocalTestFunctionP::hecke(p, valuation_int(BigInt(n), p));
        auto o = orbital_padic(a, n, f);
        auto q = lattice_count_oracle(a, n, p, depth_for(p));
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(a);
        CHECK(*o.exact == *q.exact);
        if (valuation_int(BigInt(n), p) != 0) continue;
        for (long j = 1; j <= 2; ++j)
          CHECK(*orbital_padic(a, n, LocalTestFunctionP::congruence(p, j)).exact ==
                *lattice_count_oracle(a, n, p, depth_for(p), j).exact);
      }
}

TEST_CASE("the hecke-degree orbital is zero off its determinant") {
  auto o = orbital_padic(1, 2, LocalTestFunctionP::unit(2));
  CHECK(o.exact->to_rational() == Rational(0));
  auto s = orbital_padic(1, 1, LocalTestFunctionP::unit(3, Rational(5, 2)));
  CHECK(*s.exact == *lattice_count_oracle(1, 1, 3, 8).exact * PAdicScale(3, Rational(5, 2), 0));
}

TEST_CASE("singular points are rejected") {
  CHECK_THROWS_AS(orbital_padic(2, 1, LocalTestFunctionP::unit(3)), SingularPointError);
}

TEST_CASE("fiber density against brute-force counts") {
  for (long p : {2L, 3L})
    for (long n : {1L, 2L, 3L})
      for (long a = -4; a <= 4; ++a) {
        if (a * a == 4 * n) continue;
        int e = p == 2 ? 6 : 4;
        if (valuation_int(BigInt(a * a - 4 * n), p) + 2 > e) continue;
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(a);
        CHECK(fiber_density(a, n, p) == fiber_count(a, n, p, e));
      }
}

TEST_CASE("theta carries the discriminant factor") {
  auto f = LocalTestFunctionP::unit(3);
  auto t = theta_local_padic(3, 1, f);  // D = 5, unit at 3
  CHECK(t.exact->to_rational() == orbital_padic(3, 1, f).exact->to_rational());
  auto u = theta_local_padic(1, 7, f);  // D = -27
  auto o = orbital_padic(1, 7, f);
  CHECK(*u.exact == *o.exact * PAdicScale::sqrt_abs(Rational(-27), 3));
}

TEST_CASE("germ expansion has zero residual past its threshold") {
  int checked = 0;
  for (long p : {2L, 3L, 5L})
    for (long j = 1; j <= 2; ++j) {
      auto g = germ_expansion(p, LocalTestFunctionP::congruence(p, j));
      CHECK(g.mu2() == Rational(1, pow_int(p, static_cast<unsigned long>(j))));
      const long two = p == 2 ? 2 : 0;
      for (long w = g.threshold() + 1 - two; w <= g.threshold() + 3 - two; ++w)
        for (long b : {1L, 2L, 4L}) {
          if (b % p == 0) continue;
          for (long u : {1L, -1L, 7L}) {
            long n = b * b - pow_int(p, static_cast<unsigned long>(w)).get_si() * u;
            if (n == 0) continue;
            CHECK(g.check(2 * b, n).is_zero());
            ++checked;
          }
        }
      CHECK_THROWS_AS(g.check(3, 1), GermRangeError);
    }
  CHECK(checked >= 20);
}

TEST_CASE("unipotent mu2 by averaging over the finite group") {
  CHECK(unipotent_mu2_bruteforce(2, 1) == Rational(1, 2));
  CHECK(unipotent_mu2_bruteforce(2, 3) == Rational(1, 8));
  CHECK(unipotent_mu2_bruteforce(3, 2) == Rational(1, 9));
  CHECK(unipotent_mu2_bruteforce(5, 1) == Rational(1, 5));
}
