#include "gl2p/arith.hpp"

#include <cmath>

namespace gl2p {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw InputError("cannot parse rational '" + s + "'");
  }
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

long PValuation::value() const {
  if (infinite_) throw std::logic_error("valuation of zero is infinite");
  return v_;
}

PAdicScale::PAdicScale(long p, Rational rational_part, long half_exponent)
    : p_(p), r_(std::move(rational_part)), h_(half_exponent) {
  require_prime(p);
  if (r_.is_zero()) {
    h_ = 0;
    return;
  }
  // Move any p-power out of the rational part into the exponent.
  long v = valuation(r_, p).value();
  if (v != 0) {
    r_ *= pow(Rational(p), -v);
    h_ -= 2 * v;
  }
}

PAdicScale PAdicScale::sqrt_abs(const Rational& x, long p) {
  auto v = valuation(x, p);
  if (v.is_infinite()) return PAdicScale(p, Rational(0), 0);
  return PAdicScale(p, Rational(1), v.value());
}

Rational PAdicScale::to_rational() const {
  if (!is_rational()) throw std::logic_error("p-adic scale has an odd half exponent");
  if (r_.is_zero()) return Rational(0);
  return r_ * pow(Rational(p_), -h_ / 2);
}

double PAdicScale::to_double() const {
  return r_.to_double() * std::pow(static_cast<double>(p_), -0.5 * static_cast<double>(h_));
}

PAdicScale PAdicScale::operator*(const PAdicScale& o) const {
  if (o.p_ != p_) throw InputError("p-adic scales over different primes");
  return PAdicScale(p_, r_ * o.r_, h_ + o.h_);
}

PAdicScale PAdicScale::operator*(const Rational& o) const { return PAdicScale(p_, r_ * o, h_); }

bool is_prime(long p) { return p >= 2 && is_prime(BigInt(p)); }

bool is_prime(const BigInt& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

void require_prime(long p) {
  if (!is_prime(p)) throw InputError("expected a prime, got " + std::to_string(p));
}

std::vector<std::pair<long, long>> factorize(const BigInt& n) {
  if (n == 0) throw InputError("cannot factor zero");
  BigInt m = gl2p::abs(Rational(n)).num();
  std::vector<std::pair<long, long>> out;
  for (long q = 2; BigInt(q) * q <= m; ++q) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(q))) {
      long e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(q))) {
        m /= q;
        ++e;
      }
      out.emplace_back(q, e);
    }
  }
  if (m > 1) {
    if (!m.fits_slong_p()) throw InputError("prime factor too large: " + m.get_str());
    out.emplace_back(m.get_si(), 1);
  }
  return out;
}

std::vector<long> prime_divisors(const BigInt& n) {
  std::vector<long> out;
  for (auto [q, e] : factorize(n)) out.push_back(q);
  return out;
}

long valuation_int(const BigInt& x, long p) {
  if (x == 0) throw std::logic_error("valuation_int of zero");
  BigInt m = x;
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    m /= p;
    ++v;
  }
  return v;
}

PValuation valuation(const Rational& x, long p) {
  require_prime(p);
  if (x.is_zero()) return PValuation::infinity();
  return PValuation::finite(valuation_int(x.num(), p) - valuation_int(x.den(), p));
}

Rational abs_p(const Rational& x, long p) {
  auto v = valuation(x, p);
  if (v.is_infinite()) return Rational(0);
  return pow(Rational(p), -v.value());
}

KroneckerValue kronecker(const BigInt& D, const BigInt& m) {
  return KroneckerValue(mpz_kronecker(D.get_mpz_t(), m.get_mpz_t()));
}

bool is_fundamental_discriminant(const BigInt& D) {
  if (D == 0 || D == 1) return false;
  BigInt r = D % 4;
  if (r < 0) r += 4;
  auto squarefree = [](const BigInt& x) {
    for (auto [q, e] : factorize(x))
      if (e > 1) return false;
    return true;
  };
  if (r == 1) return squarefree(D);
  if (r != 0) return false;
  BigInt m = D / 4;
  BigInt m4 = m % 4;
  if (m4 < 0) m4 += 4;
  return (m4 == 2 || m4 == 3) && squarefree(m);
}

FundamentalDecomposition fundamental_discriminant(const BigInt& D) {
  if (D == 0) throw InputError("discriminant must be nonzero");
  BigInt r = D % 4;
  if (r < 0) r += 4;
  if (r != 0 && r != 1) throw InputError("discriminant must be 0 or 1 mod 4: " + D.get_str());
  BigInt f = 1;
  for (auto [q, e] : factorize(D))
    for (long i = 0; i < e / 2; ++i) f *= q;
  BigInt d0 = D / (f * f);
  BigInt r0 = d0 % 4;
  if (r0 < 0) r0 += 4;
  if (r0 != 1) {
    // d0 is the squarefree part; it is fundamental only as 4*d0.
    d0 *= 4;
    f /= 2;
  }
  return {d0, f};
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InputError("isqrt of negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_rational_square(const Rational& x) {
  if (x.sign() < 0) return false;
  return mpz_perfect_square_p(x.num().get_mpz_t()) && mpz_perfect_square_p(x.den().get_mpz_t());
}

BigInt pow_int(long base, unsigned long exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exponent);
  if (base < 0 && exponent % 2 == 1) r = -r;
  return r;
}

}  // namespace gl2p
