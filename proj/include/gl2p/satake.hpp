#pragma once

// Spherical Hecke algebra of GL2(Q_p), its Satake transform into symmetric
// polynomials in the Satake pair (alpha, beta), and basic-function series.
//
// Convention: the coset K (p^i x; 0 p^l), x mod p^l, contributes
// alpha^i beta^l p^{(i-l)/2}.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gl2p/arith.hpp"
#include "gl2p/numeric.hpp"

namespace gl2p {

/// a + b sqrt(p) with a, b rational.
class QSqrt {
 public:
  QSqrt() = default;
  QSqrt(Rational a) : a_(std::move(a)) {}  // NOLINT
  QSqrt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  /// p^{k/2} for any integer k.
  static QSqrt half_power(long p, long k);

  const Rational& rational() const { return a_; }
  const Rational& irrational() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  double to_double(long p) const;
  std::string to_string() const;

  QSqrt add(const QSqrt& o) const { return {a_ + o.a_, b_ + o.b_}; }
  QSqrt sub(const QSqrt& o) const { return {a_ - o.a_, b_ - o.b_}; }
  QSqrt mul(const QSqrt& o, long p) const { return {a_ * o.a_ + b_ * o.b_ * p, a_ * o.b_ + b_ * o.a_}; }
  /// Exact inverse in Q(sqrt p).
  QSqrt inv(long p) const;
  friend bool operator==(const QSqrt& x, const QSqrt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Rational a_{0}, b_{0};
};

/// Polynomial in (alpha, beta) with coefficients in Q(sqrt p).
class SatakeElement {
 public:
  explicit SatakeElement(long p) : p_(p) {}
  static SatakeElement one(long p);
  static SatakeElement monomial(long p, long i, long j, QSqrt c);

  long prime() const { return p_; }
  const std::map<std::pair<long, long>, QSqrt>& terms() const { return terms_; }
  QSqrt coeff(long i, long j) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_symmetric() const;

  SatakeElement operator+(const SatakeElement& o) const;
  SatakeElement operator-(const SatakeElement& o) const;
  SatakeElement operator*(const SatakeElement& o) const;
  SatakeElement scaled(const QSqrt& c) const;
  friend bool operator==(const SatakeElement& x, const SatakeElement& y) {
    return x.p_ == y.p_ && x.terms_ == y.terms_;
  }

  Complex evaluate(Complex alpha, Complex beta) const;
  std::string to_string() const;

 private:
  void add_term(long i, long j, const QSqrt& c);
  long p_;
  std::map<std::pair<long, long>, QSqrt> terms_;
};

/// Linear combination of double cosets K diag(p^a, p^b) K, a >= b >= 0.
struct HeckeElement {
  long p = 2;
  std::map<std::pair<long, long>, QSqrt> coeff;

  static HeckeElement coset(long p, long a, long b, QSqrt c = Rational(1));
  HeckeElement operator+(const HeckeElement& o) const;
};

/// Closed form (alpha beta)^b p^{(a-b)/2} (h_{a-b} - p^-1 alpha beta h_{a-b-2}).
SatakeElement satake_transform(long p, long a, long b);
SatakeElement satake_transform(const HeckeElement& h);

/// Oracle: sum over the explicit left-coset decomposition of the double coset.
SatakeElement satake_coset_oracle(long p, long a, long b);

/// Coset representatives K (p^i x; 0 p^l) of K diag(p^a, p^b) K.
struct UpperCoset {
  long i, l, x;
};
std::vector<UpperCoset> coset_decomposition(long p, long a, long b);

/// Convolution of Hecke elements via products of coset representatives.
HeckeElement convolve(const HeckeElement& f, const HeckeElement& g);

/// Inverse of the Satake transform (triangular in the dominant monomial).
HeckeElement inverse_satake(const SatakeElement& s);

/// Complete homogeneous symmetric polynomial h_k(alpha, beta).
SatakeElement complete_h(long p, long k);

enum class Rep { standard, sym2, sym3, sym4 };
Rep parse_rep(const std::string& s);
std::string to_string(Rep r);
/// Weights of r as exponent pairs (i, j) meaning alpha^i beta^j.
std::vector<std::pair<long, long>> rep_weights(Rep r);

struct BasicFunctionSeries {
  long p = 2;
  Rep rep = Rep::standard;
  std::vector<SatakeElement> c;  // c_k, 0 <= k <= K

  struct Check {
    double residual = 0;        // |sum_k c_k p^{-ks} - L_p(s)|
    double truncation_bound = 0;
  };
  /// Numeric substitution; the residual should be below the truncation bound.
  Check check(Complex alpha, Complex beta, Complex s) const;
};

/// c_k = h_k over the weights of r, by Newton's identities.
BasicFunctionSeries basic_function_series(Rep r, long p, long K);
/// Same coefficients by multiplying truncated geometric series.
std::vector<SatakeElement> basic_coefficients_geometric(Rep r, long p, long K);

}  // namespace gl2p
