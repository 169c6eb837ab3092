#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gl2p/numeric.hpp"

using namespace gl2p;

TEST_CASE("compensated sum keeps small terms") {
  CompensatedSum<double> s;
  s.add(1.0);
  for (int i = 0; i < 1000000; ++i) s.add(1e-16);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature on known integrals") {
  auto r = integrate<double>([](double x) { return std::exp(-x * x); }, -8, 8, 1e-13);
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  auto s = integrate<double>([](double x) { return std::sqrt(x); }, 0, 1, 1e-12);
  CHECK(s.value == doctest::Approx(2.0 / 3).epsilon(1e-11));
  auto k = integrate<double>([](double x) { return std::abs(x - 0.3); }, 0, 1, 1e-13, {0.3});
  CHECK(k.value == doctest::Approx(0.29).epsilon(1e-13));
  CHECK_THROWS_AS(integrate<double>([](double x) { return 1 / std::sqrt(std::abs(x)); }, -1, 1, 1e-14, {}, 50),
                  QuadratureError);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  auto rule = gauss_legendre(8);
  for (int deg = 0; deg <= 15; ++deg) {
    double v = integrate_composite<double>([deg](double x) { return std::pow(x, deg); }, 0, 2, 1, rule);
    CHECK(v == doctest::Approx(std::pow(2.0, deg + 1) / (deg + 1)).epsilon(1e-13));
  }
}

TEST_CASE("gamma against the real gamma function and reflection") {
  for (double x : {0.3, 1.0, 2.5, 7.25, -0.5, -2.7})
    CHECK(gamma(Complex(x, 0)).real() == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
  Complex z(0.5, 3.0);
  Complex refl = gamma(z) * gamma(1.0 - z);
  Complex expect = std::numbers::pi / std::sin(std::numbers::pi * z);
  CHECK(std::abs(refl - expect) < 1e-11 * std::abs(expect));
  CHECK(is_gamma_pole(Complex(-3, 0)));
  CHECK_FALSE(is_gamma_pole(Complex(-3, 1e-6)));
}

TEST_CASE("riemann zeta against series and known values") {
  const double pi = std::numbers::pi;
  CHECK(riemann_zeta(Complex(2, 0)).real() == doctest::Approx(pi * pi / 6).epsilon(1e-14));
  CHECK(riemann_zeta(Complex(4, 0)).real() == doctest::Approx(std::pow(pi, 4) / 90).epsilon(1e-14));
  // direct partial sums with an integral tail at s = 3 + 2i
  Complex s(3, 2), sum = 0;
  const int N = 200000;
  for (int n = 1; n <= N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  sum += std::exp((1.0 - s) * std::log(static_cast<double>(N))) / (s - 1.0) -
         0.5 * std::exp(-s * std::log(static_cast<double>(N)));
  CHECK(std::abs(riemann_zeta(s) - sum) < 1e-12);
  CHECK(riemann_zeta(Complex(0.5, 14.134725141734693)).real() == doctest::Approx(0).epsilon(1e-9));
  CHECK_THROWS(riemann_zeta(Complex(1, 0)));
}

TEST_CASE("gamma_R convention") {
  CHECK(gamma_r(Complex(2, 0)).real() == doctest::Approx(1 / std::numbers::pi).epsilon(1e-14));
  CHECK(gamma_r(Complex(1, 0)).real() == doctest::Approx(1.0).epsilon(1e-14));
}
