#pragma once

// Floating-point kernels: compensated summation, adaptive Gauss-Kronrod
// quadrature, Gauss-Legendre rules, complex Gamma and Riemann zeta.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace gl2p {

using Complex = std::complex<double>;

/// Neumaier compensated accumulator; the result depends only on the order
/// in which terms are added.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, Complex>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
      sum_ = t;
    }
  }
  T value() const {
    if constexpr (std::is_same_v<T, Complex>)
      return {re_.value(), im_.value()};
    else
      return sum_ + comp_;
  }

 private:
  T sum_{};
  T comp_{};
  struct Part {
    double s = 0, c = 0;
    void add(double x) {
      double t = s + x;
      if (std::abs(s) >= std::abs(x))
        c += (s - t) + x;
      else
        c += (x - t) + s;
      s = t;
    }
    double value() const { return s + c; }
  };
  Part re_, im_;
};

/// Raised when a quadrature cannot reach its requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error bound " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

template <typename T>
struct QuadResult {
  T value{};
  double error = 0;
  int intervals = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1, 1], non-negative half.
inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T, typename F>
QuadResult<T> gk15(const F& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    T f1 = f(c - dx), f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  QuadResult<T> r;
  r.value = kron * h;
  r.error = std::abs((kron - gauss) * h);
  r.intervals = 1;
  return r;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature over [a, b] with optional
/// interior breakpoints. Bisection order is deterministic and the final
/// sum is taken left to right with compensation.
template <typename T, typename F>
QuadResult<T> integrate(const F& f, double a, double b, double abs_tol, std::vector<double> breaks = {},
                        int max_intervals = 20000, bool throw_on_failure = true) {
  struct Piece {
    double a, b;
    QuadResult<T> r;
  };
  auto worse = [](const Piece& x, const Piece& y) {
    if (x.r.error != y.r.error) return x.r.error < y.r.error;
    return x.a > y.a;
  };
  std::priority_queue<Piece, std::vector<Piece>, decltype(worse)> queue(worse);
  std::vector<double> pts{a};
  std::sort(breaks.begin(), breaks.end());
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  double total_err = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Piece p{pts[i], pts[i + 1], detail::gk15<T>(f, pts[i], pts[i + 1])};
    total_err += p.r.error;
    queue.push(p);
  }
  int count = static_cast<int>(queue.size());
  while (!(total_err <= abs_tol) && count < max_intervals) {
    Piece w = queue.top();
    queue.pop();
    double m = 0.5 * (w.a + w.b);
    if (!(m > w.a && m < w.b)) {
      queue.push(w);
      break;
    }
    Piece l{w.a, m, detail::gk15<T>(f, w.a, m)};
    Piece r{m, w.b, detail::gk15<T>(f, m, w.b)};
    total_err += l.r.error + r.r.error - w.r.error;
    queue.push(l);
    queue.push(r);
    ++count;
  }
  std::vector<Piece> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  CompensatedSum<T> sum;
  CompensatedSum<double> err;
  for (const auto& p : all) {
    sum.add(p.r.value);
    err.add(p.r.error);
  }
  QuadResult<T> out{sum.value(), err.value(), static_cast<int>(all.size())};
  if (throw_on_failure && !(out.error <= abs_tol))
    throw QuadratureError("adaptive quadrature did not converge", out.error);
  return out;
}

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on Legendre polynomials).
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
template <typename T, typename F>
T integrate_composite(const F& f, double a, double b, int panels, const GaussRule& rule) {
  CompensatedSum<T> s;
  double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    double lo = a + i * h;
    double c = lo + 0.5 * h;
    for (size_t j = 0; j < rule.nodes.size(); ++j) s.add(f(c + 0.5 * h * rule.nodes[j]) * (0.5 * h * rule.weights[j]));
  }
  return s.value();
}

/// log Gamma(z) on the principal branch (Lanczos, g = 7), with reflection.
Complex log_gamma(Complex z);
Complex gamma(Complex z);
/// True iff z is a non-positive integer (pole of Gamma) within `eps`.
bool is_gamma_pole(Complex z, double eps = 1e-12);

/// Riemann zeta for Re(s) > 0, s != 1, by Euler-Maclaurin summation.
Complex riemann_zeta(Complex s);

/// Gamma_R(s) = pi^{-s/2} Gamma(s/2).
Complex gamma_r(Complex s);

}  // namespace gl2p
