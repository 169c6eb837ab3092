#include "gl2p/numeric.hpp"

namespace gl2p {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = n == 1 ? x : p1;
      double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

bool is_gamma_pole(Complex z, double eps) {
  if (std::abs(z.imag()) > eps || z.real() > eps) return false;
  return std::abs(z.real() - std::round(z.real())) <= eps;
}

Complex log_gamma(Complex z) {
  if (is_gamma_pole(z)) throw std::domain_error("log_gamma at a pole");
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  Complex t = z + 7.5;
  return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex gamma(Complex z) {
  if (is_gamma_pole(z)) throw std::domain_error("gamma at a pole");
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * gamma(1.0 - z));
  }
  return std::exp(log_gamma(z));
}

Complex gamma_r(Complex s) { return std::pow(std::numbers::pi, -s / 2.0) * gamma(s / 2.0); }

Complex riemann_zeta(Complex s) {
  if (s.real() <= 0) throw std::domain_error("riemann_zeta: only Re(s) > 0 supported");
  if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("riemann_zeta: pole at s = 1");
  // B_{2k} / (2k)!
  static constexpr double kB[10] = {1.0 / 12,
                                    -1.0 / 720,
                                    1.0 / 30240,
                                    -1.0 / 1209600,
                                    1.0 / 47900160,
                                    -691.0 / 1307674368000.0,
                                    1.0 / 74724249600.0,
                                    -3617.0 / 10670622842880000.0,
                                    43867.0 / 5109094217170944000.0,
                                    -174611.0 / 802857662698291200000.0};
  const int n = 30;
  CompensatedSum<Complex> sum;
  for (int k = 1; k < n; ++k) sum.add(std::pow(static_cast<double>(k), -s));
  double nd = n;
  sum.add(std::pow(nd, 1.0 - s) / (s - 1.0));
  sum.add(0.5 * std::pow(nd, -s));
  Complex rising = s;  // s (s+1) ... (s+2k-2)
  for (int k = 1; k <= 10; ++k) {
    sum.add(kB[k - 1] * rising * std::pow(nd, -s - static_cast<double>(2 * k - 1)));
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
  }
  return sum.value();
}

}  // namespace gl2p
