#include "gl2p/local_orbital.hpp"

#include <vector>

namespace gl2p {

LocalTestFunctionP LocalTestFunctionP::make(long p, Kind kind, long k, Rational c) {
  require_prime(p);
  if (k < 0) throw InputError("test function index must be nonnegative");
  if (kind == Kind::hecke && k == 0) kind = Kind::unit;
  LocalTestFunctionP f;
  f.p = p;
  f.kind = kind;
  f.k = kind == Kind::unit ? 0 : k;
  f.scalar = std::move(c);
  return f;
}

std::string LocalTestFunctionP::to_string() const {
  std::string s;
  switch (kind) {
    case Kind::unit: s = "unit"; break;
    case Kind::hecke: s = "hecke(" + std::to_string(k) + ")"; break;
    case Kind::congruence: s = "congruence(" + std::to_string(k) + ")"; break;
  }
  if (scalar != Rational(1)) s = scalar.to_string() + "*" + s;
  return s + "@" + std::to_string(p);
}

std::string to_string(LocalType t) {
  switch (t) {
    case LocalType::split: return "split";
    case LocalType::inert: return "inert";
    case LocalType::ramified: return "ramified";
  }
  return "?";
}

namespace {

bool p_integral(const Rational& x, long p) {
  auto v = valuation(x, p);
  return v.is_infinite() || v.value() >= 0;
}

OrbitalValue exact_value(long p, MeasureTag tag, PAdicScale s) {
  OrbitalValue v;
  v.tag = tag;
  v.place = p;
  v.value = s.to_double();
  v.exact = std::move(s);
  return v;
}

// Integer residue of a p-unit rational modulo m (m a power of p).
long unit_residue(const Rational& u, long m) {
  BigInt inv;
  BigInt mod(m);
  BigInt den = u.den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::logic_error("unit_residue: denominator not invertible");
  BigInt r = u.num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return r.get_si();
}

}  // namespace

LocalSplitting local_splitting(const Rational& D, long p) {
  require_prime(p);
  if (D.is_zero()) throw SingularPointError("discriminant is zero");
  long v = valuation(D, p).value();
  if (v < 0) throw InputError("discriminant is not p-integral");
  Rational u = D * pow(Rational(p), -v);
  if (p != 2) {
    if (v % 2 == 1) return {LocalType::ramified, (v - 1) / 2};
    int leg = kronecker(u.num() * u.den(), BigInt(p)).value();
    return {leg == 1 ? LocalType::split : LocalType::inert, v / 2};
  }
  long u8 = unit_residue(u, 8);
  if (v % 2 == 1) {
    if (v < 3) throw InputError("not a discriminant at 2");
    return {LocalType::ramified, (v - 3) / 2};
  }
  if (u8 % 4 == 1) return {u8 == 1 ? LocalType::split : LocalType::inert, v / 2};
  if (v < 2) throw InputError("not a discriminant at 2");
  return {LocalType::ramified, v / 2 - 1};
}

BigInt lattice_count_closed(LocalType t, long k, long p) {
  if (k < 0) throw std::logic_error("negative conductor exponent");
  BigInt pk = pow_int(p, static_cast<unsigned long>(k));
  switch (t) {
    case LocalType::split: return pk;
    case LocalType::inert: return 1 + BigInt((p + 1) * (pk - 1)) / (p - 1);
    case LocalType::ramified: return BigInt(2 * (pk * p - 1)) / (p - 1);
  }
  return 0;
}

OrbitalValue orbital_padic(const Rational& a, const Rational& n, const LocalTestFunctionP& f) {
  const long p = f.p;
  require_prime(p);
  Rational D = a * a - 4 * n;
  if (D.is_zero())
    throw SingularPointError("orbital_padic: (a, n) is singular; use germ_expansion near central elements");
  auto zero = [&] { return exact_value(p, MeasureTag::canonical, PAdicScale(p, Rational(0), 0)); };
  if (!p_integral(a, p) || !p_integral(n, p)) return zero();
  auto vn = valuation(n, p);
  if (vn.is_infinite() || vn.value() != f.det_valuation()) return zero();
  LocalSplitting s = local_splitting(D, p);
  long k = s.k;
  if (f.kind == LocalTestFunctionP::Kind::congruence) k -= f.k;
  if (k < 0) return zero();
  Rational count(lattice_count_closed(s.type, k, p));
  return exact_value(p, MeasureTag::canonical, PAdicScale(p, count * f.scalar, 0));
}

OrbitalValue theta_local_padic(const Rational& a, const Rational& n, const LocalTestFunctionP& f) {
  OrbitalValue o = orbital_padic(a, n, f);
  PAdicScale s = PAdicScale::sqrt_abs(a * a - 4 * n, f.p) * *o.exact;
  return exact_value(f.p, MeasureTag::geometric, s);
}

OrbitalValue lattice_count_oracle(const Rational& a, const Rational& n, long p, long depth, long j) {
  require_prime(p);
  if (depth < 1 || j < 0) throw InputError("lattice_count_oracle: depth must be positive, j nonnegative");
  if (!a.is_integer() || !n.is_integer() || !a.num().fits_slong_p() || !n.num().fits_slong_p())
    throw InputError("lattice_count_oracle: (a, n) must be machine integers");
  Rational D = a * a - 4 * n;
  if (D.is_zero()) throw SingularPointError("lattice_count_oracle: singular (a, n)");
  const bool split = local_splitting(D, p).type == LocalType::split;
  using i128 = __int128;
  const i128 A = a.num().get_si(), N = n.num().get_si();
  const i128 pj = static_cast<i128>(pow_int(p, static_cast<unsigned long>(j)).get_si());

  // Companion matrix gamma = (0 -n; 1 a).
  // 0: not gamma-stable; 1: stable; 2: stable and scalar mod p^j.
  auto stable = [&](i128 b11, i128 b12, i128 b21, i128 b22) -> int {
    i128 det = b11 * b22 - b12 * b21;
    // gamma * B
    i128 g11 = -N * b21, g12 = -N * b22, g21 = b11 + A * b21, g22 = b12 + A * b22;
    // adj(B) * gamma * B
    i128 m11 = b22 * g11 - b12 * g21, m12 = b22 * g12 - b12 * g22;
    i128 m21 = -b21 * g11 + b11 * g21, m22 = -b21 * g12 + b11 * g22;
    if (m11 % det || m12 % det || m21 % det || m22 % det) return 0;
    if (j == 0) return 2;
    m11 /= det, m12 /= det, m21 /= det, m22 /= det;
    return m12 % pj == 0 && m21 % pj == 0 && (m11 - m22) % pj == 0 ? 2 : 1;
  };

  // shells[R] counts lattices at distance R satisfying the full condition;
  // the walk stops once no gamma-stable lattice remains at that distance.
  std::vector<long> shells;
  for (long R = 0; R <= depth; ++R) {
    long count = 0, any = 0;
    auto tally = [&](int s) {
      any += s > 0;
      count += s == 2;
    };
    if (R == 0) {
      tally(stable(1, 0, 0, 1));
    } else {
      const long P = pow_int(p, static_cast<unsigned long>(R)).get_si();
      for (long t = 0; t < P; ++t) tally(stable(1, 0, t, P));
      for (long s = 0; s < P / p; ++s) tally(stable(p * s, P, 1, 0));
    }
    shells.push_back(count);
    if (!split && any == 0) {
      long total = 0;
      for (long c : shells) total += c;
      return exact_value(p, MeasureTag::canonical, PAdicScale(p, Rational(total), 0));
    }
  }
  if (!split) throw NotConvergedError("lattice_count_oracle: stable set not exhausted at depth " + std::to_string(depth));
  size_t m = shells.size();
  if (m >= 4 && shells[m - 1] == shells[m - 2] && shells[m - 2] == shells[m - 3] &&
      shells[m - 1] % 2 == 0)
    return exact_value(p, MeasureTag::canonical, PAdicScale(p, Rational(shells[m - 1] / 2), 0));
  throw NotConvergedError("lattice_count_oracle: split shell counts not stable at depth " + std::to_string(depth));
}

Rational fiber_density(const Rational& a, const Rational& n, long p) {
  require_prime(p);
  if (!p_integral(a, p) || !p_integral(n, p)) return Rational(0);
  Rational D = a * a - 4 * n;
  if (D.is_zero()) throw SingularPointError("fiber_density: singular (a, n)");
  LocalSplitting s = local_splitting(D, p);
  Rational count(lattice_count_closed(s.type, s.k, p));
  Rational e;
  switch (s.type) {
    case LocalType::split: e = Rational(1) - Rational(1, p); break;
    case LocalType::inert: e = Rational(1) + Rational(1, p); break;
    case LocalType::ramified: e = Rational(2); break;
  }
  return (Rational(1) - Rational(1, p * p)) * pow(Rational(p), -s.k) * count / e;
}

GermExpansion::GermExpansion(long p, LocalTestFunctionP f) : p_(p), f_(std::move(f)) {
  require_prime(p);
  if (f_.p != p) throw InputError("germ_expansion: test function lives at a different prime");
  if (f_.kind == LocalTestFunctionP::Kind::hecke)
    throw InputError("germ_expansion: only unit and congruence test functions are supported");
  long j = f_.k;
  mu1_ = f_.scalar;
  mu2_ = f_.scalar * pow(Rational(p), -j);
  threshold_ = 2 * j + 2 * (p == 2 ? 1 : 0) + 1;
}

GermData GermExpansion::data(const Rational& a, const Rational& n) const {
  if (!p_integral(a, p_) || !p_integral(n, p_) || n.is_zero() || valuation(n, p_).value() != 0)
    throw InputError("germ_expansion: gamma must lie in GL2(Z_p)");
  Rational D = a * a - 4 * n;
  if (D.is_zero()) throw SingularPointError("germ_expansion: gamma must be regular");
  long v = valuation(D, p_).value();
  if (v <= threshold_)
    throw GermRangeError("germ_expansion: outside germ range, need v_p(a^2-4n) > " + std::to_string(threshold_),
                         threshold_);
  Rational O0 = orbital_padic(a, n, LocalTestFunctionP::congruence(p_, 0)).exact->to_rational();
  Rational O1 = orbital_padic(a, n, LocalTestFunctionP::congruence(p_, 1)).exact->to_rational();
  Rational A2 = (O0 - O1) * Rational(p_, p_ - 1);
  return {O0 - A2, A2, mu1_, mu2_};
}

Rational GermExpansion::check(const Rational& a, const Rational& n) const {
  GermData g = data(a, n);
  Rational O = orbital_padic(a, n, f_).exact->to_rational();
  return O - g.A1 * g.mu1 - g.A2 * g.mu2;
}

GermExpansion germ_expansion(long p, const LocalTestFunctionP& f) { return GermExpansion(p, f); }

Rational unipotent_mu2_bruteforce(long p, long j) {
  require_prime(p);
  if (j < 0) throw InputError("j must be nonnegative");
  if (j == 0) return Rational(1);
  const long P = pow_int(p, static_cast<unsigned long>(j)).get_si();
  if (P > 32) throw InputError("unipotent_mu2_bruteforce: p^j too large");
  auto mod = [P](long x) { return ((x % P) + P) % P; };
  long group = 0, hits = 0;
  for (long k11 = 0; k11 < P; ++k11)
    for (long k12 = 0; k12 < P; ++k12)
      for (long k21 = 0; k21 < P; ++k21)
        for (long k22 = 0; k22 < P; ++k22) {
          long det = mod(k11 * k22 - k12 * k21);
          if (det % p == 0) continue;
          ++group;
          for (long x = 0; x < P; ++x) {
            // adj(k) * n(x) * k with n(x) = (1 x; 0 1)
            long u11 = k11 + x * k21, u12 = k12 + x * k22, u21 = k21, u22 = k22;
            long m11 = mod(k22 * u11 - k12 * u21), m12 = mod(k22 * u12 - k12 * u22);
            long m21 = mod(-k21 * u11 + k11 * u21), m22 = mod(-k21 * u12 + k11 * u22);
            if (m12 == 0 && m21 == 0 && m11 == m22) ++hits;
          }
        }
  return Rational(hits, group * P);
}

}  // namespace gl2p
