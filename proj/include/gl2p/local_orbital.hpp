#pragma once

// Orbital integrals of GL2(Q_p) test functions at regular semisimple
// elements with characteristic polynomial T^2 - aT + n.
//
// Canonical normalization: for gamma elliptic at p, O(gamma, 1_{M2(Z_p)})
// is the number of homothety classes of lattices L with gamma L in L.
// For gamma split, it is the number of such lattices lying over a single
// vertex of the apartment of the diagonal torus.

#include <optional>
#include <string>

#include "gl2p/arith.hpp"

namespace gl2p {

class SingularPointError : public InputError {
 public:
  using InputError::InputError;
};

class NotConvergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GermRangeError : public InputError {
 public:
  GermRangeError(const std::string& what, long threshold) : InputError(what), threshold_(threshold) {}
  /// v_p(a^2 - 4n) must be strictly larger than this.
  long threshold() const { return threshold_; }

 private:
  long threshold_;
};

struct LocalTestFunctionP {
  enum class Kind {
    unit,        // 1_{GL2(Z_p)}
    hecke,       // integral matrices with v_p(det) = k
    congruence,  // X in GL2(Z_p), X = scalar mod p^k
  };
  long p = 2;
  Kind kind = Kind::unit;
  long k = 0;
  Rational scalar{1};

  static LocalTestFunctionP unit(long p, Rational c = 1) { return make(p, Kind::unit, 0, std::move(c)); }
  static LocalTestFunctionP hecke(long p, long k, Rational c = 1) { return make(p, Kind::hecke, k, std::move(c)); }
  static LocalTestFunctionP congruence(long p, long j, Rational c = 1) {
    return make(p, Kind::congruence, j, std::move(c));
  }
  /// Required v_p(det) on the support.
  long det_valuation() const { return kind == Kind::hecke ? k : 0; }
  std::string to_string() const;

 private:
  static LocalTestFunctionP make(long p, Kind kind, long k, Rational c);
};

enum class MeasureTag { canonical, geometric };

struct OrbitalValue {
  MeasureTag tag = MeasureTag::canonical;
  long place = 0;  // prime, or 0 for the real place
  std::optional<PAdicScale> exact;
  double value = 0;
  double error = 0;  // quadrature bound (real place only)
};

enum class LocalType { split, inert, ramified };
std::string to_string(LocalType t);

struct LocalSplitting {
  LocalType type;
  long k;  // conductor exponent: Z_p[gamma] = Z_p + p^k O_E
};

/// Splitting type of Q_p(sqrt D) and conductor exponent of Z_p[gamma],
/// for a p-integral nonzero D that is a discriminant (a square mod 4 at 2).
LocalSplitting local_splitting(const Rational& D, long p);

/// Number of gamma-stable lattices for an order of the given type and conductor.
BigInt lattice_count_closed(LocalType t, long k, long p);

OrbitalValue orbital_padic(const Rational& a, const Rational& n, const LocalTestFunctionP& f);

/// Direct enumeration over the Bruhat-Tits tree up to radius `depth`,
/// counting lattices stable under the companion matrix of T^2 - aT + n
/// (and, when j > 0, on which it acts as a scalar mod p^j). Throws
/// NotConvergedError if the count has not stabilized by `depth`.
OrbitalValue lattice_count_oracle(const Rational& a, const Rational& n, long p, long depth, long j = 0);

/// |a^2 - 4n|_p^{1/2} * orbital_padic, kept exact.
OrbitalValue theta_local_padic(const Rational& a, const Rational& n, const LocalTestFunctionP& f);

/// lim_e #{X in M2(Z/p^e) : tr X = a, det X = n} / p^{2e}: the trace-
/// determinant pushforward of Haar measure on M2(Z_p). Continuous in a.
Rational fiber_density(const Rational& a, const Rational& n, long p);

struct GermData {
  Rational A1, A2;  // depend on gamma only
  Rational mu1, mu2;  // depend on f only
};

class GermExpansion {
 public:
  GermExpansion(long p, LocalTestFunctionP f);

  const Rational& mu1() const { return mu1_; }
  const Rational& mu2() const { return mu2_; }
  /// Minimal v_p(a^2 - 4n) is threshold() + 1.
  long threshold() const { return threshold_; }

  /// A1, A2 at (a, n), solved from congruence(0) and congruence(1).
  GermData data(const Rational& a, const Rational& n) const;
  /// O(gamma, f) - A1 mu1 - A2 mu2.
  Rational check(const Rational& a, const Rational& n) const;

 private:
  long p_;
  LocalTestFunctionP f_;
  Rational mu1_, mu2_;
  long threshold_;
};

GermExpansion germ_expansion(long p, const LocalTestFunctionP& f);

/// mu2 of congruence(j) by averaging f(k^-1 n(x) k) over k in GL2(Z/p^j)
/// and x in Z/p^j (second route to the closed form p^-j).
Rational unipotent_mu2_bruteforce(long p, long j);

}  // namespace gl2p
