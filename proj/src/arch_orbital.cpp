#include "gl2p/arch_orbital.hpp"

#include <cmath>

namespace gl2p {

double bump_profile(double u, int m) {
  if (!(std::abs(u) < 1)) return 0;
  return std::pow(1 - u * u, m + 1);
}

void LocalTestFunctionArch::validate() const {
  if (!(n0 > 0)) throw InputError("arch bump: determinant center must be positive");
  if (!(r0 > 0)) throw InputError("arch bump: trace radius must be positive");
  if (m < 2) throw InputError("arch bump: smoothness order must be at least 2");
  if (radial < 0) throw InputError("arch bump: radial radius must be nonnegative");
}

double LocalTestFunctionArch::radial_radius() const {
  if (radial > 0) return radial;
  double t = std::abs(a0) + r0;
  return 4 * (t * t + 4 * n0);
}

double LocalTestFunctionArch::operator()(double x, double y, double z, double w) const {
  double det = x * w - y * z;
  if (std::abs(det - n0) > 1e-9 * std::max(1.0, n0)) return 0;
  double rho4 = x * x + y * y + z * z + w * w - 2 * det;
  return amp * trace_factor(x + w) * bump_profile(rho4 / radial_radius(), m);
}

namespace {

OrbitalValue real_value(double v, double err) {
  OrbitalValue o;
  o.tag = MeasureTag::geometric;
  o.place = 0;
  o.value = v;
  o.error = err;
  return o;
}

}  // namespace

OrbitalValue orbital_arch(double a, double n, const LocalTestFunctionArch& f, double tol) {
  f.validate();
  if (!(n > 0)) throw InputError("orbital_arch: n must be positive");
  if (!(tol > 0)) throw InputError("orbital_arch: tol must be positive");
  if (std::abs(n - f.n0) > 1e-12 * f.n0) return real_value(0, 0);
  double tf = f.trace_factor(a);
  if (tf == 0) return real_value(0, 0);
  const double R = f.radial_radius();
  const double c = n - a * a / 4;
  const double smin = std::sqrt(std::max(c, 0.0));
  const double smax = std::sqrt(c + R / 4);
  const double pre = f.norm * f.amp * tf * 4 * std::numbers::pi / (n * n);
  auto g = [&](double s) { return bump_profile(4 * (s * s - c) / R, f.m); };
  auto r = integrate<double>(g, smin, smax, tol / std::abs(pre));
  return real_value(pre * r.value, std::abs(pre) * r.error);
}

double theta_arch(double a, double n, const LocalTestFunctionArch& f) { return orbital_arch(a, n, f, 1e-13).value; }

QuadResult<double> arch_mass_iwasawa(const LocalTestFunctionArch& f, double n, double tol) {
  f.validate();
  if (!(n > 0)) throw InputError("arch_mass_iwasawa: n must be positive");
  if (std::abs(n - f.n0) > 1e-12 * f.n0) return {};
  const double R = f.radial_radius();
  const double sn = std::sqrt(n);
  const double pre = f.norm * f.amp / n;
  const double K = (R + 2 * n) / n;
  const double disc = std::sqrt(K * K - 4);
  const double tlo = std::sqrt((K - disc) / 2), thi = std::sqrt((K + disc) / 2);
  const double pi = std::numbers::pi;
  const double tol_t = tol / std::abs(pre);
  const double tol_x = tol_t * 1e-2 / (thi - tlo);

  // Full-period angular average of the trace factor at Iwasawa radius Rr.
  auto angular = [&](double Rr, double tol_phi) {
    double amp_tr = sn * Rr;
    std::vector<double> breaks;
    for (double e : {f.a0 - f.r0, f.a0 + f.r0})
      if (std::abs(e) < amp_tr) breaks.push_back(std::acos(e / amp_tr));
    auto h = [&](double psi) { return f.trace_factor(amp_tr * std::cos(psi)); };
    return 2 * integrate<double>(h, 0, pi, tol_phi / 2, breaks, 2000, false).value;
  };

  auto over_x = [&](double t) {
    double xm2 = t * t * (K - t * t) - 1;
    if (xm2 <= 0) return 0.0;
    double xmax = std::sqrt(xm2);
    double tol_phi = tol_x * 1e-2 / xmax * t * t * t;
    auto h = [&](double x) {
      double rho4 = n * (t * t + (x * x + 1) / (t * t)) - 2 * n;
      double rad = bump_profile(rho4 / R, f.m);
      if (rad == 0) return 0.0;
      double Rr = std::sqrt((t + 1 / t) * (t + 1 / t) + x * x / (t * t));
      return rad * angular(Rr, tol_phi);
    };
    return 2 * integrate<double>(h, 0, xmax, tol_x * t * t * t / 2, {}, 2000, false).value / (t * t * t);
  };

  auto r = integrate<double>(over_x, tlo, thi, tol_t, {1.0}, 4000, true);
  r.value *= pre;
  r.error *= std::abs(pre);
  return r;
}

SingularityProbe singularity_probe(const LocalTestFunctionArch& f, double n, int sign, double h) {
  if (!(n > 0)) throw InputError("singularity_probe: n must be positive");
  if (sign != 1 && sign != -1) throw InputError("singularity_probe: sign must be +1 or -1");
  if (!(h > 0)) throw InputError("singularity_probe: step must be positive");
  SingularityProbe out{};
  out.point = sign * 2 * std::sqrt(n);
  out.step = h;
  auto th = [&](double a) { return theta_arch(a, n, f); };
  // theta ~ L + c sqrt(d) on the elliptic side; eliminate the sqrt term.
  auto limit = [&](int dir) {
    double d = 1e-10;
    return 2 * th(out.point + dir * d / 4) - th(out.point + dir * d);
  };
  out.left_limit = limit(-1);
  out.right_limit = limit(+1);
  out.left_slope = (out.left_limit - th(out.point - h)) / h;
  out.right_slope = (th(out.point + h) - out.right_limit) / h;
  out.derivative_jump = out.right_slope - out.left_slope;
  return out;
}

}  // namespace gl2p
