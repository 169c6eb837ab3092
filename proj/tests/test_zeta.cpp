#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "gl2p/zeta.hpp"

using namespace gl2p;

namespace {

const double pi = std::numbers::pi;

// zeta(2) by partial sums with an Euler-Maclaurin tail.
double zeta2_series() {
  const long N = 100000;
  double s = 0;
  for (long n = N; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  double x = static_cast<double>(N);
  return s + 1 / x - 1 / (2 * x * x) + 1 / (6 * x * x * x);
}

// Orbit average of the real factor at n(x), straight from the matrix function.
double orbit_average(const LocalTestFunctionArch& f, double x) {
  auto g = [&](double t) {
    double c = std::cos(t), s = std::sin(t);
    // k^-1 (1 x; 0 1) k with k the rotation by t
    double a = 1 - x * c * s, b = x * c * c, cc = -x * s * s, d = 1 + x * c * s;
    return f(a, b, cc, d);
  };
  return integrate<double>(g, 0, 2 * pi, 1e-12).value / (2 * pi);
}

GlobalTestFunction unipotent_function() {
  GlobalTestFunction f = GlobalTestFunction::standard();
  f.arch.a0 = 2;
  f.arch.r0 = 1;
  return f;
}

}  // namespace

TEST_CASE("Gaussian zeta at s = 2") {
  auto z = tate_zeta(SchwartzProfile::gaussian(), Complex(2, 0));
  CHECK(std::abs(z.value - Complex(pi / 6)) <= 1e-8);
  // Z_inf(2) = int |x| exp(-pi x^2) dx = 1 / pi
  CHECK(std::abs(z.value.real() - zeta2_series() / pi) <= 1e-10);
  CHECK(z.route == ZetaRoute::direct);
}

TEST_CASE("direct and continued routes agree right of the pole") {
  for (auto phi : {SchwartzProfile::gaussian(), SchwartzProfile::gaussian(0.7, 3), SchwartzProfile::hermite2(2)})
    for (Complex s : {Complex(1.5, 0), Complex(2, 3), Complex(3.2, -1.5)}) {
      Complex d = tate_zeta(phi, s, 1e-11, ZetaRoute::direct).value;
      Complex c = tate_zeta(phi, s, 1e-11, ZetaRoute::continued).value;
      CHECK(std::abs(d - c) <= 1e-8 * std::max(1.0, std::abs(d)));
    }
}

TEST_CASE("level and scale act as expected") {
  Complex s(2.5, 1);
  auto a = tate_zeta(SchwartzProfile::gaussian(1, 1), s).value;
  auto b = tate_zeta(SchwartzProfile::gaussian(1, 6), s).value;
  CHECK(std::abs(b - a * std::pow(6.0, -s)) < 1e-10);
  auto z = SchwartzProfile::zero();
  CHECK(std::abs(tate_zeta(z, s).value) == 0);
  CHECK(std::abs(tate_zeta(z, Complex(0.4, 0)).value) == 0);
}

TEST_CASE("residues against the boundary terms and a fitted volume") {
  std::vector<SchwartzProfile> profiles = {SchwartzProfile::gaussian(), SchwartzProfile::gaussian(1.6, 2),
                                           SchwartzProfile::hermite2(3)};
  double num = 0, den = 0;
  for (const auto& phi : profiles) {
    Complex r1 = residue_estimate(phi, 1), r0 = residue_estimate(phi, 0);
    CHECK(std::abs(r1 - phi.hat_at_zero() * idele_class_volume()) <= 1e-6);
    CHECK(std::abs(r0 + phi.value_at_zero() * idele_class_volume()) <= 1e-6);
    CHECK(std::abs(residue_at(phi, 1) - r1) <= 1e-6);
    num += r1.real() * phi.hat_at_zero() - r0.real() * phi.value_at_zero();
    den += phi.hat_at_zero() * phi.hat_at_zero() + phi.value_at_zero() * phi.value_at_zero();
  }
  CHECK(num / den == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(SchwartzProfile::hermite2().value_at_zero() == 0);
}

TEST_CASE("evaluation near a pole is refused") {
  CHECK_THROWS_AS(tate_zeta(SchwartzProfile::gaussian(), Complex(1 + 1e-4, 0)), NearPoleError);
  CHECK_THROWS_AS(tate_zeta(SchwartzProfile::gaussian(), Complex(0, 5e-4)), NearPoleError);
  auto e = tate_zeta(SchwartzProfile::gaussian(), Complex(1.05, 0));
  REQUIRE(e.near_pole.has_value());
  CHECK(e.near_pole->location == 1);
}

TEST_CASE("compact profiles get a numerical transform") {
  auto tri = SchwartzProfile::compact([](double x) { return std::max(0.0, 1 - std::abs(x)); }, 1);
  CHECK(tri.hat_at_zero() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tri.phi_hat(0.5) == doctest::Approx(4 / (pi * pi)).epsilon(1e-9));
}

TEST_CASE("archimedean L-factor") {
  GammaFactorSpec st;
  Complex s(1.7, 0);
  double g = std::pow(pi, -0.85) * std::tgamma(0.85);
  CHECK(std::abs(arch_L_factor(st, s) - Complex(g * g)) < 1e-12);
  GammaFactorSpec sym{Complex(0.25, 0), Complex(-0.25, 0), Rep::sym2};
  REQUIRE(sym.shifts().size() == 3);
  Complex expect = 1;
  for (double nu : {0.5, 0.0, -0.5}) expect *= std::pow(pi, -(1.7 + nu) / 2) * std::tgamma((1.7 + nu) / 2);
  CHECK(std::abs(arch_L_factor(sym, s) - expect) < 1e-12);
  CHECK_THROWS_AS(arch_L_factor(st, Complex(0, 0)), PoleError);
}

TEST_CASE("Hecke volumes count cosets") {
  for (long N = 1; N <= 30; ++N) {
    // matrices (a b; 0 d), ad = N, b mod d, primitive
    long cnt = 0;
    for (long a = 1; a <= N; ++a)
      if (N % a == 0)
        for (long b = 0; b < N / a; ++b) cnt += std::gcd(std::gcd(a, b), N / a) == 1;
    CHECK(hecke_volume(Rational(1), N) == Rational(cnt));
    CHECK(coset_count_oracle(N) == cnt);
  }
  CHECK(hecke_volume(Rational(1), 6) == Rational(12));
  CHECK_THROWS_AS(hecke_volume(Rational(1), 0), InputError);
}

TEST_CASE("unipotent profile against a direct orbit average") {
  auto f = unipotent_function();
  std::vector<double> grid;
  for (int i = -8; i <= 8; ++i) grid.push_back(0.3 * i);
  auto up = unipotent_profile(f, grid);
  REQUIRE_FALSE(up.vanishes);
  for (size_t i = 0; i < grid.size(); ++i) {
    CAPTURE(grid[i]);
    CHECK(up.F[i] == doctest::Approx(orbit_average(f.arch, grid[i])).epsilon(1e-8));
  }
  CHECK(up.profile.level == 1);
  CHECK(unipotent_profile(GlobalTestFunction::standard(), grid).vanishes);  // trace 2 outside the support
}

TEST_CASE("unipotent zeta has a simple pole with residue V times the integral") {
  auto up = unipotent_profile(unipotent_function(), {0.0});
  for (double sigma : {1.2, 1.5, 2.0})
    for (double t : {-3.0, 0.0, 4.0}) {
      auto z = tate_zeta(up.profile, Complex(sigma, t));
      CHECK(std::isfinite(std::abs(z.value)));
    }
  Complex r = residue_estimate(up.profile, 1);
  CHECK(std::abs(r - idele_class_volume() * up.integral) <= 1e-4 * std::abs(up.integral));
}
