#pragma once

// Binary quadratic forms, class numbers, Hurwitz class numbers, and the
// identification of 2x2 matrices with (trace, binary form) pairs.

#include <string>
#include <vector>

#include "gl2p/arith.hpp"

namespace gl2p {

struct BinaryQuadraticForm {
  BigInt A, B, C;
  BigInt discriminant() const { return B * B - 4 * A * C; }
  friend bool operator==(const BinaryQuadraticForm& x, const BinaryQuadraticForm& y) {
    return x.A == y.A && x.B == y.B && x.C == y.C;
  }
  std::string to_string() const;
};

/// Reduced in the sense |B| <= A <= C, B >= 0 if |B| = A or A = C.
bool is_reduced(const BinaryQuadraticForm& f);

/// Unique reduced representative of a positive definite form.
BinaryQuadraticForm reduce(const BinaryQuadraticForm& form);

/// All reduced forms of discriminant D < 0 (primitive or not), ordered by (A, B).
std::vector<BinaryQuadraticForm> reduced_forms(long D);

/// h(D): number of primitive reduced forms of discriminant D < 0.
long class_number(long D);

/// Hurwitz class number H(N); 0 for N = 1, 2 mod 4 and H(0) = -1/12.
Rational hurwitz(long N);

/// 2^t(D0) * sum_{d | f} h(D/d^2) u(D/d^2) / h(D0) for D = D0 f^2 < 0, where
/// t counts primes dividing D0 and u(D') = w(D0)/w(D'). Equals the product
/// over all primes of the local stable-lattice counts.
Rational class_number_lattice_product(long D);

struct KroneckerHurwitzResult {
  Rational lhs, rhs;
  bool equal;
};

/// sum_{a^2 <= 4n} H(4n - a^2) versus sum_{d | n} max(d, n/d). `H` may be
/// substituted to run negative controls.
KroneckerHurwitzResult kronecker_hurwitz_check(long n);
KroneckerHurwitzResult kronecker_hurwitz_check(long n, Rational (*H)(long));

struct Mat2 {
  Rational a, b, c, d;
  Rational det() const { return a * d - b * c; }
  Rational trace() const { return a + d; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 inverse() const;
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  static Mat2 identity() { return {1, 0, 0, 1}; }
};

struct VPoint {
  Rational X1, X2, X3;
  Rational discriminant() const { return X2 * X2 - 4 * X1 * X3; }
  bool is_zero() const { return X1.is_zero() && X2.is_zero() && X3.is_zero(); }
  friend bool operator==(const VPoint& x, const VPoint& y) {
    return x.X1 == y.X1 && x.X2 == y.X2 && x.X3 == y.X3;
  }
};

struct QX {
  Rational q;
  VPoint X;
};

/// (a b; c d) -> (a + d, (c, d - a, -b)).
QX matrix_to_qX(const Mat2& g);
/// Inverse of matrix_to_qX.
Mat2 qX_to_matrix(const Rational& q, const VPoint& X);

/// X -> X((u,v) x^t) / det x. Satisfies
/// matrix_to_qX(x^-1 g x).X == v_action(x, matrix_to_qX(g).X).
VPoint v_action(const Mat2& x, const VPoint& X);

enum class Classification { elliptic, split, singular };
std::string to_string(Classification c);

/// Exact classification of the characteristic polynomial T^2 - qT + n.
Classification classify(const Rational& q, const Rational& n);

/// X lies in the image of G for the given trace: some matrix with
/// trace q and nonzero determinant maps to X. (Always true when
/// (q^2 - disc X)/4 != 0.)
bool in_image_of_G(const Rational& q, const VPoint& X);

}  // namespace gl2p
