#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>

#include "gl2p/satake.hpp"

using namespace gl2p;

namespace {

// Transform through a coset enumeration done here: upper-triangular
// (p^i x; 0 p^l) with i + l = a + b, x mod p^l, lying in the double coset
// exactly when the gcd of its entries is p^b.
SatakeElement enumerated_transform(long p, long a, long b) {
  SatakeElement s(p);
  for (long i = 0; i <= a + b; ++i) {
    long l = a + b - i;
    long P = 1;
    for (long k = 0; k < l; ++k) P *= p;
    for (long x = 0; x < P; ++x) {
      long pi = 1;
      for (long k = 0; k < i; ++k) pi *= p;
      long g = std::gcd(std::gcd(pi, x), P);
      long v = 0;
      while (g % p == 0) g /= p, ++v;
      if (v != b) continue;
      s = s + SatakeElement::monomial(p, i, l, QSqrt::half_power(p, i - l));
    }
  }
  return s;
}

// Coefficient of X^k in prod_w 1 / (1 - alpha^w1 beta^w2 X), summing over
// all multisets of k weights.
SatakeElement series_oracle(Rep r, long p, long k) {
  auto w = rep_weights(r);
  SatakeElement out(p);
  std::function<void(size_t, long, long, long)> rec = [&](size_t idx, long left, long i, long j) {
    if (idx == w.size()) {
      if (left == 0) out = out + SatakeElement::monomial(p, i, j, Rational(1));
      return;
    }
    for (long m = 0; m <= left; ++m) rec(idx + 1, left - m, i + m * w[idx].first, j + m * w[idx].second);
  };
  rec(0, k, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("QSqrt arithmetic") {
  QSqrt x(Rational(1), Rational(2));  // 1 + 2 sqrt 3
  CHECK(x.mul(x.inv(3), 3) == QSqrt(Rational(1)));
  CHECK(QSqrt::half_power(3, 3) == QSqrt(Rational(0), Rational(3)));
  CHECK(QSqrt::half_power(2, -2) == QSqrt(Rational(1, 2)));
  CHECK(x.to_double(3) == doctest::Approx(1 + 2 * std::sqrt(3.0)));
}

TEST_CASE("known transforms") {
  for (long p : {2L, 3L, 5L}) {
    auto t = satake_transform(p, 1, 0);
    auto sp = QSqrt::half_power(p, 1);
    CHECK(t == SatakeElement::monomial(p, 1, 0, sp) + SatakeElement::monomial(p, 0, 1, sp));
    CHECK(satake_transform(p, 1, 1) == SatakeElement::monomial(p, 1, 1, Rational(1)));
    CHECK(satake_transform(p, 0, 0) == SatakeElement::one(p));
  }
}

TEST_CASE("coset decomposition sizes and transforms") {
  for (long p : {2L, 3L, 5L})
    for (long a = 0; a <= 5; ++a)
      for (long b = 0; b <= a && a + b <= 6; ++b) {
        long expect = a == b ? 1 : (p + 1) * static_cast<long>(std::pow(p, a - b - 1));
        CHECK(static_cast<long>(coset_decomposition(p, a, b).size()) == expect);
        auto s = satake_transform(p, a, b);
        CHECK(s == enumerated_transform(p, a, b));
        CHECK(s == satake_coset_oracle(p, a, b));
        CHECK(s.is_symmetric());
      }
}

TEST_CASE("convolution is sent to multiplication") {
  for (long p : {2L, 3L}) {
    std::vector<HeckeElement> gens = {HeckeElement::coset(p, 1, 0), HeckeElement::coset(p, 2, 0),
                                      HeckeElement::coset(p, 1, 1), HeckeElement::coset(p, 2, 1)};
    for (const auto& f : gens)
      for (const auto& g : gens) CHECK(satake_transform(convolve(f, g)) == satake_transform(f) * satake_transform(g));
  }
  // T_p * T_p = T_{p^2} + (p + 1) R_p
  long p = 3;
  auto t = HeckeElement::coset(p, 1, 0);
  auto sq = convolve(t, t);
  CHECK(sq.coeff.at({2, 0}) == QSqrt(Rational(1)));
  CHECK(sq.coeff.at({1, 1}) == QSqrt(Rational(p + 1)));
}

TEST_CASE("inverse transform round trip") {
  for (long p : {2L, 5L}) {
    auto h = HeckeElement::coset(p, 3, 1, Rational(2)) + HeckeElement::coset(p, 2, 2, Rational(-1, 3));
    auto back = inverse_satake(satake_transform(h));
    CHECK(satake_transform(back) == satake_transform(h));
    CHECK(back.coeff.at({3, 1}) == QSqrt(Rational(2)));
  }
  // p^{k/2} h_k is the transform of the sum of T_{a,b} with a + b = k
  for (long p : {2L, 3L})
    for (long k = 0; k <= 6; ++k) {
      HeckeElement sum{p, {}};
      for (long b = 0; 2 * b <= k; ++b) sum = sum + HeckeElement::coset(p, k - b, b);
      CHECK(satake_transform(sum) == complete_h(p, k).scaled(QSqrt::half_power(p, k)));
    }
}

TEST_CASE("basic-function series through order 10") {
  for (Rep r : {Rep::standard, Rep::sym2})
    for (long p : {2L, 3L, 5L, 7L}) {
      auto series = basic_function_series(r, p, 10);
      auto geo = basic_coefficients_geometric(r, p, 10);
      REQUIRE(series.c.size() == 11);
      for (long k = 0; k <= 10; ++k) {
        CAPTURE(k);
        CHECK(series.c[static_cast<size_t>(k)] == series_oracle(r, p, k));
        CHECK(geo[static_cast<size_t>(k)] == series.c[static_cast<size_t>(k)]);
      }
      auto chk = series.check(Complex(0.3, 0.2), Complex(0.5, -0.1), Complex(1.5, 2.0));
      CHECK(chk.residual <= chk.truncation_bound);
    }
  CHECK(parse_rep("sym2") == Rep::sym2);
  CHECK_THROWS(parse_rep("adjoint"));
  CHECK(rep_weights(Rep::sym3).size() == 4);
}
