#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "gl2p/matz.hpp"

using namespace gl2p;

namespace {

using Key = std::tuple<long, long, long, long, Stratum>;

// Integral matrices (a b; c d) with the height bound on (a + d, c, d - a, -b),
// classified from the characteristic polynomial.
std::vector<Key> matrix_oracle(long h, long n) {
  std::vector<Key> out;
  for (long a = -h; a <= h; ++a)
    for (long b = -h; b <= h; ++b)
      for (long c = -h; c <= h; ++c)
        for (long d = -h; d <= h; ++d) {
          if (a * d - b * c != n || std::abs(a + d) > h || std::abs(d - a) > h) continue;
          long tr = a + d, disc = tr * tr - 4 * n;
          long r = 0;
          while (r * r < disc) ++r;
          Stratum s = b == 0 && c == 0 && a == d ? Stratum::central
                      : disc == 0                ? Stratum::unipotent_regular
                      : disc > 0 && r * r == disc ? Stratum::split_regular
                                                  : Stratum::elliptic;
          out.emplace_back(tr, c, d - a, -b, s);
        }
  std::sort(out.begin(), out.end());
  return out;
}

// {x}_p by search: y = t / p^k in [0, 1) with x - y free of p in the denominator.
Rational frac_oracle(const Rational& x, long p) {
  BigInt D = x.den();
  long P = 1;
  while (D % p == 0) D /= p, P *= p;
  for (long t = 0; t < P; ++t) {
    Rational y(t, P);
    if ((x - y).den() % p != 0) return y;
  }
  return Rational(0);
}

}  // namespace

TEST_CASE("stratum multiset at height 3 matches integral matrices") {
  for (long n : {1L, 2L, 3L}) {
    std::vector<Key> lib;
    for (const auto& c : enumerate_qX(3, Rational(n)))
      lib.emplace_back(c.q.num().get_si(), c.X.X1.num().get_si(), c.X.X2.num().get_si(), c.X.X3.num().get_si(),
                       c.stratum);
    std::sort(lib.begin(), lib.end());
    CAPTURE(n);
    CHECK(lib == matrix_oracle(3, n));
  }
  CHECK(enumerate_qX(2, Rational(1), 1).size() == enumerate_qX(2, Rational(1), 4).size());
}

TEST_CASE("discriminant identity on random rational matrices") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  for (int i = 0; i < 1000; ++i) {
    Mat2 g{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
           Rational(num(rng), den(rng))};
    auto qx = matrix_to_qX(g);
    CHECK(qx.X.discriminant() == qx.q * qx.q - 4 * g.det());
    CHECK(qx.q == g.a + g.d);
  }
}

TEST_CASE("stratum_of on representative points") {
  CHECK(stratum_of(Rational(2), VPoint{0, 0, 0}, Rational(1)) == Stratum::central);
  CHECK(stratum_of(Rational(2), VPoint{1, 0, 0}, Rational(1)) == Stratum::unipotent_regular);
  CHECK(stratum_of(Rational(3), VPoint{0, 1, 0}, Rational(2)) == Stratum::split_regular);
  CHECK(stratum_of(Rational(0), VPoint{1, 0, 1}, Rational(1)) == Stratum::elliptic);
}

TEST_CASE("p-adic fractional parts") {
  for (long p : {2L, 3L, 5L})
    for (long num = -40; num <= 40; ++num)
      for (long den : {1L, 2L, 4L, 9L, 12L, 25L, 60L, 72L}) {
        Rational x(num, den);
        Rational y = padic_frac(x, p);
        CHECK(y == frac_oracle(x, p));
        CHECK(y >= Rational(0));
        CHECK(y < Rational(1));
      }
}

TEST_CASE("transforms of lattice indicators") {
  // 1_{Z_p}^ = 1_{Z_p};  (1_{p^-1 Z_p})^ = p * 1_{p Z_p}
  for (long p : {2L, 3L}) {
    LocallyConstantP z{p, 0, 0, {1.0}};
    LocallyConstantP w{p, 1, 0, std::vector<double>(static_cast<size_t>(p), 1.0)};
    CHECK(z.integral() == 1);
    CHECK(w.integral() == doctest::Approx(p));
    for (auto xi : {Rational(0), Rational(1), Rational(1, p), Rational(p), Rational(5, p * p), Rational(7)}) {
      bool in_Zp = valuation(xi, p).is_infinite() || valuation(xi, p).value() >= 0;
      bool in_pZp = valuation(xi, p).is_infinite() || valuation(xi, p).value() >= 1;
      CHECK(std::abs(z.hat(xi) - Complex(in_Zp ? 1 : 0)) < 1e-14);
      CHECK(std::abs(w.hat(xi) - Complex(in_pZp ? static_cast<double>(p) : 0)) < 1e-13);
    }
    CHECK(w(Rational(1, p)) == 1);
    CHECK(w(Rational(1, p * p)) == 0);
  }
}

TEST_CASE("Parseval for finite and archimedean factors") {
  LocallyConstantP phi{3, 1, 1, {}};
  for (int c = 0; c < 9; ++c) phi.table.push_back(std::sin(c + 1.0));
  auto r = parseval_finite(phi);
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
  LocalTestFunctionArch f;
  auto sl = lie_algebra_slice(VPoint{1, 0, 1}, f, {2, 3});
  auto a = parseval_arch(sl, 128);
  CHECK(a.lhs == doctest::Approx(a.rhs).epsilon(1e-12));
  CHECK(sl.finite.size() == 2);
}

TEST_CASE("q-transform at zero integrates the slice") {
  LocalTestFunctionArch f;
  auto sl = lie_algebra_slice(VPoint{0, 0, 0}, f, {2});
  double I = integrate<double>(sl.arch, sl.lo, sl.hi, 1e-13).value;
  double fin = 1;
  for (const auto& ph : sl.finite) fin *= ph.integral();
  CHECK(std::abs(fourier_in_q(sl, Rational(0), 1e-12) - Complex(I * fin)) < 1e-11);
}

TEST_CASE("correction shift reindexes by alpha + 1") {
  auto e = correction_shift({Rational(1), Rational(-1, 2), Rational(3)});
  REQUIRE(e.size() == 4);
  CHECK(e[0].inserted);
  CHECK(e[0].q == Rational(1));
  CHECK(e[1].q == Rational(2));
  CHECK(e[1].unipotent);
  CHECK(e[2].q == Rational(1, 2));
  CHECK_FALSE(e[3].unipotent);
  CHECK_THROWS_AS(correction_shift({Rational(0)}), InputError);
}
