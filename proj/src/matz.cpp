#include "gl2p/matz.hpp"

#include <algorithm>
#include <thread>

#include "gl2p/poisson.hpp"

namespace gl2p {

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::elliptic: return "elliptic";
    case Stratum::split_regular: return "split_regular";
    case Stratum::unipotent_regular: return "unipotent_regular";
    case Stratum::central: return "central";
  }
  return "?";
}

Stratum stratum_of(const Rational& q, const VPoint& X, const Rational& det) {
  Rational disc = X.discriminant();
  if (disc != q * q - 4 * det) throw InputError("stratum_of: disc(X) != q^2 - 4 det");
  if (X.is_zero()) return Stratum::central;
  if (disc.is_zero()) return Stratum::unipotent_regular;
  return is_rational_square(disc) ? Stratum::split_regular : Stratum::elliptic;
}

std::vector<QXClass> enumerate_qX(long height, const Rational& det, int threads) {
  if (height < 1) throw InputError("enumerate_qX: height must be at least 1");
  if (!det.is_integer()) return {};
  const long n = det.num().get_si();
  const long h = height;
  const long width = 2 * h + 1;
  int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nt = static_cast<int>(std::min<long>(nt, width));
  std::vector<std::vector<QXClass>> parts(static_cast<size_t>(width));
  auto work = [&](int t) {
    for (long X1 = -h + t; X1 <= h; X1 += nt) {
      auto& out = parts[static_cast<size_t>(X1 + h)];
      for (long q = -h; q <= h; ++q)
        for (long X2 = -h; X2 <= h; ++X2) {
          if (((q - X2) % 2 + 2) % 2) continue;
          for (long X3 = -h; X3 <= h; ++X3) {
            if (X2 * X2 - 4 * X1 * X3 != q * q - 4 * n) continue;
            VPoint X{X1, X2, X3};
            out.push_back({q, X, det, stratum_of(q, X, det)});
          }
        }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  std::vector<QXClass> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end(), [](const QXClass& a, const QXClass& b) {
    if (a.q != b.q) return a.q < b.q;
    if (a.X.X1 != b.X.X1) return a.X.X1 < b.X.X1;
    if (a.X.X2 != b.X.X2) return a.X.X2 < b.X.X2;
    return a.X.X3 < b.X.X3;
  });
  return all;
}

Rational padic_frac(const Rational& x, long p) {
  require_prime(p);
  if (x.is_zero()) return Rational(0);
  auto v = valuation(x, p).value();
  if (v >= 0) return Rational(0);
  BigInt pk = pow_int(p, static_cast<unsigned long>(-v));
  BigInt Dp = x.den() / pk;
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), Dp.get_mpz_t(), pk.get_mpz_t());
  BigInt r = x.num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
  return Rational(r, pk);
}

double LocallyConstantP::operator()(const Rational& x) const {
  Rational y = x * pow(Rational(p), s);  // must be p-integral
  auto v = valuation(y, p);
  if (!v.is_infinite() && v.value() < 0) return 0;
  long P = size();
  BigInt r;
  if (y.is_zero()) return table[0];
  BigInt mod(P), inv;
  BigInt den = y.den();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  r = y.num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return table[r.get_ui()];
}

double LocallyConstantP::integral() const {
  CompensatedSum<double> sum;
  for (double v : table) sum.add(v);
  return sum.value() * std::pow(static_cast<double>(p), -static_cast<double>(e));
}

Complex LocallyConstantP::hat(const Rational& xi) const {
  auto v = valuation(xi, p);
  if (!v.is_infinite() && v.value() < -e) return 0;
  CompensatedSum<Complex> sum;
  for (long c = 0; c < size(); ++c) {
    if (table[static_cast<size_t>(c)] == 0) continue;
    Rational y = Rational(c) * pow(Rational(p), -s) * xi;
    double ang = 2 * std::numbers::pi * padic_frac(y, p).to_double();
    sum.add(table[static_cast<size_t>(c)] * Complex(std::cos(ang), std::sin(ang)));
  }
  return sum.value() * std::pow(static_cast<double>(p), -static_cast<double>(e));
}

QSliceFunction lie_algebra_slice(const VPoint& X, const LocalTestFunctionArch& arch, const std::vector<long>& S) {
  arch.validate();
  QSliceFunction sl;
  double rad = X.X2.to_double() * X.X2.to_double() + (X.X1 - X.X3).to_double() * (X.X1 - X.X3).to_double();
  double radial = bump_profile(rad / arch.radial_radius(), arch.m);
  sl.arch = [arch, radial](double q) { return arch.amp * radial * arch.trace_factor(q); };
  sl.lo = arch.a0 - arch.r0;
  sl.hi = arch.a0 + arch.r0;
  for (long p : S) {
    require_prime(p);
    LocallyConstantP phi;
    phi.p = p;
    bool integral = true;
    for (const Rational* c : {&X.X1, &X.X2, &X.X3}) {
      auto v = valuation(*c, p);
      if (!v.is_infinite() && v.value() < 0) integral = false;
    }
    if (!integral) {
      phi.table = {0};
    } else if (p == 2) {
      // (q -+ X2)/2 integral: q in X2 + 2 Z_2.
      phi.e = 1;
      long x2 = mpz_odd_p(X.X2.num().get_mpz_t()) ? 1 : 0;  // denominator is odd
      phi.table = {x2 == 0 ? 1.0 : 0.0, x2 == 1 ? 1.0 : 0.0};
    } else {
      phi.table = {1};
    }
    sl.finite.push_back(std::move(phi));
  }
  return sl;
}

Complex fourier_in_q(const QSliceFunction& slice, const Rational& xi, double tol) {
  if (!(tol > 0)) throw InputError("fourier_in_q: tol must be positive");
  Complex fin = 1;
  for (const auto& phi : slice.finite) fin *= phi.hat(xi);
  if (fin == Complex(0) || !slice.arch || slice.hi <= slice.lo) return 0;
  return fourier_real(slice.arch, slice.lo, slice.hi, xi.to_double(), tol / std::max(1.0, std::abs(fin))) * fin;
}

ParsevalResult parseval_finite(const LocallyConstantP& phi) {
  ParsevalResult r;
  const double p = static_cast<double>(phi.p);
  CompensatedSum<double> l, h;
  for (double v : phi.table) l.add(v * v);
  r.lhs = l.value() * std::pow(p, -static_cast<double>(phi.e));
  // phi^ lives on p^-e Z_p and is constant mod p^s.
  const long T = pow_int(phi.p, static_cast<unsigned long>(phi.e + phi.s)).get_si();
  for (long t = 0; t < T; ++t) {
    Complex v = phi.hat(Rational(BigInt(t), pow_int(phi.p, static_cast<unsigned long>(phi.e))));
    h.add(std::norm(v));
  }
  r.rhs = h.value() * std::pow(p, -static_cast<double>(phi.s));
  return r;
}

ParsevalResult parseval_arch(const QSliceFunction& slice, int N) {
  if (N < 2) throw InputError("parseval_arch: need at least two samples");
  ParsevalResult r;
  const double L = slice.hi - slice.lo, h = L / N;
  std::vector<double> g(static_cast<size_t>(N));
  CompensatedSum<double> l;
  for (int j = 0; j < N; ++j) {
    g[static_cast<size_t>(j)] = slice.arch(slice.lo + j * h);
    l.add(g[static_cast<size_t>(j)] * g[static_cast<size_t>(j)]);
  }
  r.lhs = l.value() * h;
  CompensatedSum<double> s;
  for (int k = 0; k < N; ++k) {
    CompensatedSum<Complex> G;
    for (int j = 0; j < N; ++j) {
      double ang = -2 * std::numbers::pi * static_cast<double>(static_cast<long>(j) * k % N) / N;
      G.add(g[static_cast<size_t>(j)] * h * Complex(std::cos(ang), std::sin(ang)));
    }
    s.add(std::norm(G.value()));
  }
  r.rhs = s.value() / L;
  return r;
}

std::vector<CorrectionEntry> correction_shift(const std::vector<Rational>& alphas) {
  std::vector<CorrectionEntry> out;
  out.push_back({Rational(0), Rational(1), true, false});
  for (const auto& a : alphas) {
    if (a.is_zero()) throw InputError("correction_shift: alpha must be nonzero");
    Rational q = a + 1;
    out.push_back({a, q, false, q == Rational(2)});
  }
  return out;
}

}  // namespace gl2p
