#pragma once

// Exact scalar arithmetic over Q and Q_p: rationals, p-adic valuations and
// absolute values, Kronecker symbols and fundamental discriminants.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gl2p {

using BigInt = mpz_class;

/// Raised for malformed inputs (non-prime modulus, bad discriminant, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT: implicit by design of numeric literals
  Rational(int v) : v_(v) {}   // NOLINT
  Rational(const BigInt& v) : v_(v) {}  // NOLINT
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

  static Rational parse(const std::string& s);

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  /// "num/den", or "num" for integers.
  std::string to_string() const;

  Rational operator-() const { return from_raw(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  static Rational from_raw(mpq_class q) {
    Rational r;
    r.v_ = std::move(q);
    r.v_.canonicalize();
    return r;
  }

 private:
  mpq_class v_;
};

Rational pow(const Rational& base, long exponent);
Rational abs(const Rational& x);

/// p-adic valuation with a dedicated marker for v_p(0) = infinity.
class PValuation {
 public:
  static PValuation infinity() { return PValuation(); }
  static PValuation finite(long v) { return PValuation(v); }

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error on the infinity marker.
  long value() const;

  friend bool operator==(const PValuation& a, const PValuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
  }

 private:
  PValuation() : infinite_(true) {}
  explicit PValuation(long v) : infinite_(false), v_(v) {}
  bool infinite_;
  long v_ = 0;
};

class KroneckerValue {
 public:
  constexpr explicit KroneckerValue(int v) : v_(v) {}
  constexpr int value() const { return v_; }
  friend constexpr bool operator==(KroneckerValue a, KroneckerValue b) { return a.v_ == b.v_; }

 private:
  int v_;
};

/// The quantity rational_part * p^(-half_exponent/2), held exactly.
/// rational_part always has p-valuation zero (or is zero).
class PAdicScale {
 public:
  PAdicScale(long p, Rational rational_part, long half_exponent);

  /// |x|_p^{1/2}.
  static PAdicScale sqrt_abs(const Rational& x, long p);

  long prime() const { return p_; }
  const Rational& rational_part() const { return r_; }
  long half_exponent() const { return h_; }

  bool is_rational() const { return r_.is_zero() || h_ % 2 == 0; }
  /// Exact value; throws std::logic_error when an odd half-exponent remains.
  Rational to_rational() const;
  double to_double() const;

  PAdicScale operator*(const PAdicScale& o) const;
  PAdicScale operator*(const Rational& o) const;
  friend bool operator==(const PAdicScale& a, const PAdicScale& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && (a.r_.is_zero() || a.h_ == b.h_);
  }

 private:
  long p_;
  Rational r_;
  long h_;
};

bool is_prime(long p);
bool is_prime(const BigInt& p);
void require_prime(long p);

/// Distinct primes dividing |n| (n != 0), ascending.
std::vector<long> prime_divisors(const BigInt& n);
/// (prime, exponent) pairs of |n|, ascending.
std::vector<std::pair<long, long>> factorize(const BigInt& n);

long valuation_int(const BigInt& x, long p);  // x != 0
PValuation valuation(const Rational& x, long p);
Rational abs_p(const Rational& x, long p);

KroneckerValue kronecker(const BigInt& D, const BigInt& m);

struct FundamentalDecomposition {
  BigInt fundamental;  // D0
  BigInt conductor;    // f > 0 with D = D0 f^2
};

bool is_fundamental_discriminant(const BigInt& D);
FundamentalDecomposition fundamental_discriminant(const BigInt& D);

/// Exact square test over Q.
bool is_rational_square(const Rational& x);
/// Floor square root of a non-negative integer.
BigInt isqrt(const BigInt& n);

BigInt pow_int(long base, unsigned long exponent);

}  // namespace gl2p
