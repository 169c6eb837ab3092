#pragma once

// Real-place test functions and their trace pushforwards.
//
// A bump lives on the determinant slice det X = n0 > 0 of GL2(R):
//   f(X) = amp * B_m((tr X - a0) / r0) * B_m(4 rho(X)^2 / R)
// where B_m(u) = (1 - u^2)^(m+1) on |u| < 1 and 4 rho^2 = |X|^2 - 2 det X
// measures the distance of X from the similitudes. f is invariant under
// conjugation by SO(2). Haar measure is dX / |det X|^2.

#include "gl2p/local_orbital.hpp"
#include "gl2p/numeric.hpp"

namespace gl2p {

/// (1 - u^2)^(m+1) for |u| < 1, else 0.
double bump_profile(double u, int m);

struct LocalTestFunctionArch {
  double a0 = 0, n0 = 1;  // center: trace, determinant
  double r0 = 1.5;        // trace-support radius
  int m = 4;              // smoothness order
  double amp = 1;
  double radial = 0;      // R; 0 selects a default wide enough for the trace support
  double norm = 1;        // archimedean normalization scalar, applied to every route

  void validate() const;
  double radial_radius() const;
  double trace_factor(double a) const { return bump_profile((a - a0) / r0, m); }
  /// f at the matrix (x y; z w); zero off the slice det = n0.
  double operator()(double x, double y, double z, double w) const;
};

/// theta_f(a) = |a^2 - 4n|^{1/2} * orbital integral (geometric measure),
/// by adaptive quadrature over the fiber, |error| <= tol.
OrbitalValue orbital_arch(double a, double n, const LocalTestFunctionArch& f, double tol = 1e-12);

/// Convenience: value of orbital_arch at tight tolerance.
double theta_arch(double a, double n, const LocalTestFunctionArch& f);

/// Integral of f over G(R) in Iwasawa coordinates g = sqrt(n) n(x) a(t) k(phi).
QuadResult<double> arch_mass_iwasawa(const LocalTestFunctionArch& f, double n, double tol);

struct SingularityProbe {
  double point;            // +2 sqrt(n)
  double left_limit, right_limit;
  double left_slope, right_slope;  // one-sided difference quotients at step h
  double derivative_jump;  // right_slope - left_slope
  double step;
};

/// One-sided limits and slopes of theta_f at a = 2 sqrt(n) (sign = +1) or
/// a = -2 sqrt(n) (sign = -1). Limits come from a refining sequence.
SingularityProbe singularity_probe(const LocalTestFunctionArch& f, double n, int sign = 1, double h = 1e-3);

}  // namespace gl2p
