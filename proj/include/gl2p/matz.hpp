#pragma once

// Reindexing of integral 2x2 matrices by (q, X) = (trace, fixed-point form),
// the Fourier transform in the trace variable q, and the q = alpha + 1
// bookkeeping of the correction term.

#include <functional>
#include <string>
#include <vector>

#include "gl2p/arch_orbital.hpp"
#include "gl2p/numeric.hpp"
#include "gl2p/quadforms.hpp"

namespace gl2p {

enum class Stratum { elliptic, split_regular, unipotent_regular, central };
std::string to_string(Stratum s);

struct QXClass {
  Rational q;
  VPoint X;
  Rational det;
  Stratum stratum;
};

Stratum stratum_of(const Rational& q, const VPoint& X, const Rational& det);

/// All integral (q, X) with sup-norm height <= h, q = X2 mod 2 (so that the
/// matrix is integral) and disc(X) = q^2 - 4 det. Sorted by (q, X1, X2, X3).
std::vector<QXClass> enumerate_qX(long height, const Rational& det, int threads = 0);

/// p-adic fractional part {x}_p in [0, 1).
Rational padic_frac(const Rational& x, long p);

/// Function on Q_p supported on p^-s Z_p and constant on cosets of p^e Z_p;
/// table[c] is the value at c / p^s, c = 0 .. p^(s+e) - 1.
struct LocallyConstantP {
  long p = 2;
  long s = 0, e = 0;
  std::vector<double> table;

  long size() const { return static_cast<long>(table.size()); }
  double operator()(const Rational& x) const;
  double integral() const;
  /// Integral of phi(y) psi_p(y xi) dy, psi_p(x) = exp(2 pi i {x}_p).
  Complex hat(const Rational& xi) const;
};

struct QSliceFunction {
  std::function<double(double)> arch;
  double lo = 0, hi = 0;  // arch support
  std::vector<LocallyConstantP> finite;
};

/// q -> f(x(q, X)) at x = 1 for f = f_arch x prod_{p in S} 1_{M2(Z_p)} on the
/// Lie algebra, with f_arch = B_m((q - a0)/r0) * B_m(|X|_rad^2 / R).
QSliceFunction lie_algebra_slice(const VPoint& X, const LocalTestFunctionArch& arch, const std::vector<long>& S);

/// q-transform at rational xi: arch quadrature times finite transforms.
Complex fourier_in_q(const QSliceFunction& slice, const Rational& xi, double tol);

struct ParsevalResult {
  double lhs = 0, rhs = 0;
};
/// Discrete Parseval for a finite factor: sum |phi|^2 p^-e vs sum |phi^|^2 p^-s.
ParsevalResult parseval_finite(const LocallyConstantP& phi);
/// Periodic discretization of the arch part with N samples over its support:
/// sum |g_j|^2 h vs sum |G_k|^2 / L, via a direct DFT.
ParsevalResult parseval_arch(const QSliceFunction& slice, int N);

struct CorrectionEntry {
  Rational alpha, q;
  bool inserted = false;   // the q = 1 term added on the Lie algebra
  bool unipotent = false;  // q = 2
};

/// Reindex alpha in F^x by q = alpha + 1, with the inserted q = 1 term first.
std::vector<CorrectionEntry> correction_shift(const std::vector<Rational>& alphas);

}  // namespace gl2p
