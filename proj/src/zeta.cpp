#include "gl2p/zeta.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gl2p {

namespace {

std::string complex_str(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

constexpr double kPi = std::numbers::pi;

}  // namespace

NearPoleError::NearPoleError(int location, Complex s)
    : std::runtime_error("near-pole: s = " + complex_str(s) + " is within 1e-3 of the pole at " +
                         std::to_string(location) + "; use residue_at"),
      location_(location) {}

PoleError::PoleError(std::size_t factor, Complex argument)
    : std::runtime_error("pole of gamma factor " + std::to_string(factor) + " at s + nu = " + complex_str(argument)),
      factor_(factor) {}

SchwartzProfile SchwartzProfile::gaussian(double c, long level) {
  if (!(c > 0)) throw InputError("gaussian profile: width must be positive");
  SchwartzProfile p;
  p.phi = [c](double x) { return std::exp(-kPi * x * x / (c * c)); };
  p.phi_hat = [c](double xi) { return c * std::exp(-kPi * c * c * xi * xi); };
  p.radius = 4.5 * c;
  p.hat_radius = 4.5 / c;
  p.level = level;
  std::ostringstream os;
  os << "gaussian(c=" << c << ",M=" << level << ")";
  p.name = os.str();
  p.validate();
  return p;
}

SchwartzProfile SchwartzProfile::hermite2(long level) {
  SchwartzProfile p;
  p.phi = [](double x) { return x * x * std::exp(-kPi * x * x); };
  p.phi_hat = [](double xi) { return (1 / (2 * kPi) - xi * xi) * std::exp(-kPi * xi * xi); };
  p.radius = 5;
  p.hat_radius = 5;
  p.level = level;
  p.name = "hermite2(M=" + std::to_string(level) + ")";
  p.validate();
  return p;
}

SchwartzProfile SchwartzProfile::zero() {
  SchwartzProfile p;
  p.phi = [](double) { return 0.0; };
  p.phi_hat = [](double) { return 0.0; };
  p.radius = p.hat_radius = 1;
  p.name = "zero";
  return p;
}

SchwartzProfile SchwartzProfile::compact(std::function<double(double)> phi, double radius, long level, double scale) {
  if (!(radius > 0)) throw InputError("compact profile: radius must be positive");
  SchwartzProfile p;
  p.phi = phi;
  p.phi_hat = [phi, radius](double xi) { return fourier_real(phi, -radius, radius, xi, 1e-13).real(); };
  p.radius = radius;
  p.hat_radius = 64;
  p.level = level;
  p.scale = scale;
  p.name = "compact";
  p.validate();
  return p;
}

void SchwartzProfile::validate() const {
  if (!phi) throw InputError("SchwartzProfile: missing real factor");
  if (level < 1) throw InputError("SchwartzProfile: level must be positive");
  if (!(radius > 0) || !(hat_radius > 0)) throw InputError("SchwartzProfile: radii must be positive");
}

double SchwartzProfile::value_at_zero() const { return scale * phi(0); }

double SchwartzProfile::hat_at_zero() const {
  if (!phi_hat) throw InputError("SchwartzProfile: transform not available");
  return scale * phi_hat(0) / static_cast<double>(level);
}

std::string to_string(ZetaRoute r) {
  switch (r) {
    case ZetaRoute::automatic: return "automatic";
    case ZetaRoute::direct: return "direct";
    case ZetaRoute::continued: return "continued";
  }
  return "?";
}

double idele_class_volume() { return 1.0; }

namespace {

// scale * Z_inf(g, s) * L^-s * zeta(s) for the finite factor 1_{L Zhat}, L rational.
Complex direct_factorized(const std::function<double(double)>& g, double radius, double L, double scale, Complex s,
                          double tol) {
  if (!(s.real() > 1)) throw InputError("direct route needs Re(s) > 1");
  Complex fin = scale * std::exp(-s * std::log(L)) * riemann_zeta(s);
  auto h = [&](double x) -> Complex {
    double e = g(x) + g(-x);
    if (e == 0) return 0;
    return e * std::exp((s - 1.0) * std::log(x));
  };
  double t = tol / std::max(1e-300, std::abs(fin));
  auto r = integrate<Complex>(h, 0, radius, t, {}, 50000);
  return r.value * fin;
}

}  // namespace

Complex zeta_direct(const SchwartzProfile& phi, Complex s, double tol) {
  phi.validate();
  return direct_factorized(phi.phi, phi.radius, static_cast<double>(phi.level), phi.scale, s, tol);
}

Complex zeta_continued(const SchwartzProfile& phi, Complex s, double tol) {
  phi.validate();
  if (!phi.phi_hat) throw InputError("continued route needs the transform of the real factor");
  const double M = static_cast<double>(phi.level);
  const double V = idele_class_volume();
  // Theta_phi(t) = sum_{k != 0} phi_inf(M k t)
  auto theta = [&](double t) {
    CompensatedSum<double> acc;
    for (long k = 1; M * static_cast<double>(k) * t <= phi.radius; ++k) {
      double x = M * static_cast<double>(k) * t;
      acc.add(phi.phi(x) + phi.phi(-x));
    }
    return acc.value();
  };
  // Theta_phihat(t) = (1/M) sum_{j != 0} phihat_inf(j t / M)
  auto theta_hat = [&](double t) {
    CompensatedSum<double> acc;
    for (long j = 1; static_cast<double>(j) * t / M <= phi.hat_radius; ++j) {
      double x = static_cast<double>(j) * t / M;
      acc.add(phi.phi_hat(x) + phi.phi_hat(-x));
    }
    return acc.value() / M;
  };
  Complex I1 = 0, I2 = 0;
  const double t1 = phi.radius / M, t2 = phi.hat_radius * M;
  const double part_tol = tol / (4 * std::max(1.0, std::abs(phi.scale)));
  if (t1 > 1) {
    std::vector<double> br;
    for (long k = 1; k <= 64 && phi.radius / (M * static_cast<double>(k)) > 1; ++k)
      br.push_back(phi.radius / (M * static_cast<double>(k)));
    I1 = integrate<Complex>([&](double t) { return theta(t) * std::exp((s - 1.0) * std::log(t)); }, 1, t1, part_tol,
                            br, 50000)
             .value;
  }
  if (t2 > 1) {
    std::vector<double> br;
    for (long j = 1; j <= 64 && phi.hat_radius * M / static_cast<double>(j) > 1; ++j)
      br.push_back(phi.hat_radius * M / static_cast<double>(j));
    I2 = integrate<Complex>([&](double t) { return theta_hat(t) * std::exp(-s * std::log(t)); }, 1, t2, part_tol,
                            br, 50000)
             .value;
  }
  Complex boundary = V * (phi.phi_hat(0) / M / (s - 1.0) - phi.phi(0) / s);
  return phi.scale * (I1 + I2 + boundary);
}

ZetaEvaluation tate_zeta(const SchwartzProfile& phi, Complex s, double tol, ZetaRoute route) {
  if (!(tol > 0)) throw InputError("tate_zeta: tol must be positive");
  phi.validate();
  for (int pole : {0, 1})
    if (std::abs(s - static_cast<double>(pole)) < 1e-3) throw NearPoleError(pole, s);
  ZetaEvaluation ev;
  ev.s = s;
  ev.route = route == ZetaRoute::automatic ? (s.real() > 1 ? ZetaRoute::direct : ZetaRoute::continued) : route;
  ev.value = ev.route == ZetaRoute::direct ? zeta_direct(phi, s, tol) : zeta_continued(phi, s, tol);
  ev.error = tol;
  for (int pole : {0, 1})
    if (std::abs(s - static_cast<double>(pole)) < 0.1) ev.near_pole = NearPoleInfo{pole, residue_at(phi, pole)};
  return ev;
}

Complex residue_at(const SchwartzProfile& phi, int pole) {
  const double V = idele_class_volume();
  if (pole == 0) return -V * phi.value_at_zero();
  if (pole == 1) return V * phi.hat_at_zero();
  throw InputError("residue_at: poles are at 0 and 1");
}

Complex residue_estimate(const SchwartzProfile& phi, int pole, double eps, double tol) {
  if (pole != 0 && pole != 1) throw InputError("residue_estimate: poles are at 0 and 1");
  if (!(eps > 0 && eps < 0.1)) throw InputError("residue_estimate: eps must be in (0, 0.1)");
  phi.validate();
  // r(e) = e z(1 + e) = R + c1 e + c2 e^2 + ..., two Richardson steps.
  // At s = 0 use z(phi, s) = z(phi^, 1 - s): the finite factor of phi^ is
  // (1/M) 1_{(1/M) Zhat}, and the residue flips sign.
  std::function<Complex(double)> r;
  if (pole == 1) {
    r = [&](double e) { return e * zeta_direct(phi, 1.0 + e, tol / e); };
  } else {
    if (!phi.phi_hat) throw InputError("residue_estimate: the pole at 0 needs the transform");
    const double M = static_cast<double>(phi.level);
    r = [&, M](double e) {
      return -e * direct_factorized(phi.phi_hat, phi.hat_radius, 1 / M, phi.scale / M, 1.0 + e, tol / e);
    };
  }
  Complex r1 = r(eps), r2 = r(eps / 2), r4 = r(eps / 4);
  Complex a = 2.0 * r2 - r1, b = 2.0 * r4 - r2;
  return (4.0 * b - a) / 3.0;
}

std::vector<Complex> GammaFactorSpec::shifts() const {
  std::vector<Complex> nu;
  for (auto [i, j] : rep_weights(rep)) nu.push_back(static_cast<double>(i) * mu1 + static_cast<double>(j) * mu2);
  return nu;
}

Complex arch_L_factor(const GammaFactorSpec& spec, Complex s) {
  Complex v = 1;
  auto nu = spec.shifts();
  for (std::size_t i = 0; i < nu.size(); ++i) {
    Complex z = s + nu[i];
    if (is_gamma_pole(z / 2.0)) throw PoleError(i, z);
    v *= gamma_r(z);
  }
  return v;
}

Rational hecke_volume(const Rational& r, long N) {
  if (r.sign() <= 0) throw InputError("hecke_volume: r must be positive");
  if (N < 1) throw InputError("hecke_volume: N must be positive");
  Rational v(N);
  for (long p : prime_divisors(BigInt(N))) v *= Rational(p + 1, p);
  return v;
}

long coset_count_oracle(long N) {
  if (N < 1) throw InputError("coset_count_oracle: N must be positive");
  long count = 0;
  for (long a = 1; a <= N; ++a) {
    if (N % a) continue;
    const long d = N / a;
    for (long b = 0; b < d; ++b)
      if (std::gcd(std::gcd(a, b), d) == 1) ++count;
  }
  return count;
}

UnipotentProfile unipotent_profile(const GlobalTestFunction& f, const std::vector<double>& x_grid) {
  f.validate();
  UnipotentProfile out;
  bool vanishes = f.n != 1 || std::abs(f.arch.n0 - 1) > 1e-12;
  long level = 1;
  double scale = 1;
  for (const auto& [p, fp] : f.finite) {
    if (fp.det_valuation() != 0) vanishes = true;
    if (fp.kind == LocalTestFunctionP::Kind::congruence) level *= pow_int(p, static_cast<unsigned long>(fp.k)).get_si();
    scale *= fp.scalar.to_double();
  }
  const LocalTestFunctionArch arch = f.arch;
  const double radius = std::sqrt(arch.radial_radius());
  if (vanishes || arch.trace_factor(2) == 0 || scale == 0) {
    out.vanishes = true;
    out.profile = SchwartzProfile::zero();
    out.x = x_grid;
    out.F.assign(x_grid.size(), 0.0);
    return out;
  }
  // Average over k(t) = (cos t, -sin t; sin t, cos t) of f(k^-1 n(x) k).
  auto F_inf = [arch](double x) {
    auto g = [&](double t) {
      double c = std::cos(t), s = std::sin(t);
      // k^-1 n(x) k with k^-1 = (c, s; -s, c)
      double m11 = 1 + x * c * s, m12 = x * c * c, m21 = -x * s * s, m22 = 1 - x * c * s;
      return arch.norm * arch(m11, m12, m21, m22);
    };
    return integrate<double>(g, 0, 2 * kPi, 1e-13, {kPi / 2, kPi, 3 * kPi / 2}).value / (2 * kPi);
  };
  out.profile = SchwartzProfile::compact(F_inf, radius, level, scale);
  out.profile.name = "unipotent";
  out.x = x_grid;
  for (double x : x_grid) out.F.push_back(F_inf(x));
  out.integral = integrate<double>(F_inf, -radius, radius, 1e-12, {0.0}).value;
  return out;
}

}  // namespace gl2p
