#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gl2p/arch_orbital.hpp"

using namespace gl2p;

namespace {

LocalTestFunctionArch bump(double a0, double n0, double r0, int m) {
  LocalTestFunctionArch f;
  f.a0 = a0;
  f.n0 = n0;
  f.r0 = r0;
  f.m = m;
  return f;
}

// Elliptic orbital integral straight from the matrix function: the fiber
// {tr = a, det = n} is parametrized by (x, y) with z solved from the
// determinant, Leray measure dx dy / |y|, Haar factor 1 / n^2.
double fiber_oracle(double a, double n, const LocalTestFunctionArch& f) {
  auto inner = [&](double x) {
    auto g = [&](double y) {
      double z = (x * (a - x) - n) / y;
      return f(x, y, z, a - x) / std::abs(y);
    };
    return integrate<double>(g, -12, 0, 1e-11, {}, 4000, false).value +
           integrate<double>(g, 0, 12, 1e-11, {}, 4000, false).value;
  };
  return integrate<double>(inner, -8, 8, 1e-10, {}, 4000, false).value / (n * n);
}

}  // namespace

TEST_CASE("bump profile") {
  CHECK(bump_profile(0, 3) == 1);
  CHECK(bump_profile(1, 3) == 0);
  CHECK(bump_profile(0.5, 1) == doctest::Approx(0.5625));
  CHECK(bump_profile(-1.2, 4) == 0);
}

TEST_CASE("orbital integrals against a direct fiber integral") {
  for (auto f : {bump(0.5, 2, 1.0, 3), bump(0, 1, 1.5, 4), bump(2.5, 2, 1.0, 3)})
    for (double a : {f.a0 - 0.6 * f.r0, f.a0 - 0.2 * f.r0, f.a0 + 0.25 * f.r0}) {
      if (a * a >= 4 * f.n0) continue;  // the chart below needs y != 0 on the fiber
      CAPTURE(a);
      double o = fiber_oracle(a, f.n0, f);
      CHECK(theta_arch(a, f.n0, f) == doctest::Approx(o).epsilon(1e-6));
    }
}

TEST_CASE("theta vanishes off the determinant slice and trace support") {
  auto f = bump(0.5, 2, 1.0, 3);
  CHECK(theta_arch(0.5, 3, f) == 0);
  CHECK(theta_arch(1.6, 2, f) == 0);
  CHECK_THROWS_AS(orbital_arch(0.5, -1, f), InputError);
}

TEST_CASE("Weyl closure: integral of theta over traces equals the mass") {
  for (auto f : {bump(0.5, 2, 1.0, 3), bump(0, 1, 1.5, 4), bump(2.5, 2, 1.0, 3)}) {
    const double s = 2 * std::sqrt(f.n0);
    std::vector<double> br;
    for (double e : {-s, s})
      if (std::abs(e - f.a0) < f.r0) br.push_back(e);
    auto th = [&](double a) { return theta_arch(a, f.n0, f); };
    double I = integrate<double>(th, f.a0 - f.r0, f.a0 + f.r0, 1e-11, br, 4000, false).value;
    double mass = arch_mass_iwasawa(f, f.n0, 1e-11).value;
    CHECK(std::abs(I - mass) <= 1e-5 * std::abs(mass));
  }
}

TEST_CASE("theta is continuous with a derivative jump at the singular trace") {
  auto f = bump(2.5, 2, 1.0, 3);
  auto p = singularity_probe(f, 2, 1);
  CHECK(p.point == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(p.left_limit == doctest::Approx(p.right_limit).epsilon(1e-6));
  CHECK(p.left_limit > 0);
  CHECK(std::abs(p.derivative_jump) > 1);
  auto q = singularity_probe(f, 2, -1);  // outside the trace support
  CHECK(q.left_limit == 0);
  CHECK(q.right_limit == 0);
}

TEST_CASE("invalid bumps are rejected") {
  auto f = bump(0, 1, -1, 3);
  CHECK_THROWS(f.validate());
  auto g = bump(0, -1, 1, 3);
  CHECK_THROWS(g.validate());
}
