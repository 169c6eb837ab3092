#pragma once

// Tate zeta integrals z(phi, s) = int_A phi(x) |x|^s d^x x for
// phi = phi_inf x 1_{M Zhat}, archimedean L-factors, Hecke volumes and the
// regular-unipotent profile of a global test function.
//
// Measures: dx self-dual for psi_inf(x) = exp(-2 pi i x), d^x x = dx/|x| at
// infinity and vol(Z_p^x) = 1 at every p. With these choices the
// idele-class volume constant V equals 1.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gl2p/numeric.hpp"
#include "gl2p/poisson.hpp"
#include "gl2p/satake.hpp"

namespace gl2p {

class NearPoleError : public std::runtime_error {
 public:
  NearPoleError(int location, Complex s);
  int location() const { return location_; }

 private:
  int location_;
};

class PoleError : public std::runtime_error {
 public:
  PoleError(std::size_t factor, Complex argument);
  std::size_t factor() const { return factor_; }

 private:
  std::size_t factor_;
};

struct SchwartzProfile {
  std::function<double(double)> phi;      // real-place factor
  std::function<double(double)> phi_hat;  // its Fourier transform; empty if unknown
  double radius = 8;                      // phi vanishes (below 1e-20) beyond
  double hat_radius = 8;                  // same for phi_hat
  long level = 1;                         // finite factor 1_{level Zhat}
  double scale = 1;                       // constant in front of the finite factor
  std::string name;

  /// exp(-pi x^2 / c^2), transform c exp(-pi c^2 xi^2).
  static SchwartzProfile gaussian(double c = 1, long level = 1);
  /// x^2 exp(-pi x^2), transform (1/(2 pi) - xi^2) exp(-pi xi^2); vanishes at 0.
  static SchwartzProfile hermite2(long level = 1);
  static SchwartzProfile zero();
  /// Compactly supported real profile on [-radius, radius]; the transform is
  /// computed by quadrature on demand.
  static SchwartzProfile compact(std::function<double(double)> phi, double radius, long level = 1, double scale = 1);

  void validate() const;
  /// phi(0) of the adelic function.
  double value_at_zero() const;
  /// phi^(0) of the adelic function: scale * phi_hat_inf(0) / level.
  double hat_at_zero() const;
};

enum class ZetaRoute { automatic, direct, continued };
std::string to_string(ZetaRoute r);

struct NearPoleInfo {
  int location = 1;
  Complex residue;
};

struct ZetaEvaluation {
  Complex s;
  Complex value;
  ZetaRoute route = ZetaRoute::direct;
  double error = 0;
  std::optional<NearPoleInfo> near_pole;  // set within distance 0.1 of a pole
};

/// Idele-class volume under the measures above.
double idele_class_volume();

/// Route automatic: direct for Re s > 1, continued elsewhere. Throws
/// NearPoleError within 1e-3 of s = 0 or s = 1.
ZetaEvaluation tate_zeta(const SchwartzProfile& phi, Complex s, double tol = 1e-10,
                         ZetaRoute route = ZetaRoute::automatic);

/// Z_inf(s) * level^-s * zeta(s); needs Re s > 1.
Complex zeta_direct(const SchwartzProfile& phi, Complex s, double tol);
/// int_1^inf Theta_phi t^s dt/t + int_1^inf Theta_phihat t^{1-s} dt/t
///   + V (phi^(0)/(s-1) - phi(0)/s).
Complex zeta_continued(const SchwartzProfile& phi, Complex s, double tol);

/// Residue from the boundary terms of the continuation:
/// -V phi(0) at s = 0, V phi^(0) at s = 1.
Complex residue_at(const SchwartzProfile& phi, int pole);

/// Numerical residue (eps/2)(z(pole + eps) - z(pole - eps)), independent of
/// the boundary terms.
Complex residue_estimate(const SchwartzProfile& phi, int pole, double eps = 1e-4, double tol = 1e-12);

struct GammaFactorSpec {
  Complex mu1 = 0, mu2 = 0;
  Rep rep = Rep::standard;
  /// nu_i: weights of r applied to (mu1, mu2).
  std::vector<Complex> shifts() const;
};

/// prod_i Gamma_R(s + nu_i), Gamma_R(s) = pi^{-s/2} Gamma(s/2).
Complex arch_L_factor(const GammaFactorSpec& spec, Complex s);

/// Volume of K diag(N, 1) K (scaled by the central r) relative to K:
/// N prod_{p | N} (1 + 1/p).
Rational hecke_volume(const Rational& r, long N);
/// Number of Hermite normal forms (a b; 0 d), ad = N, 0 <= b < d,
/// gcd(a, b, d) = 1.
long coset_count_oracle(long N);

struct UnipotentProfile {
  std::vector<double> x, F;  // samples of the real factor
  SchwartzProfile profile;   // real factor with the exact finite factor
  double integral = 0;       // int F_inf dx
  bool vanishes = false;     // f is zero on the unipotent orbit
};

/// F(x) = int_K f(k^-1 n(x) k) dk. The real factor averages over SO(2) by
/// quadrature; finite places give level prod p^j and the product of scalars.
UnipotentProfile unipotent_profile(const GlobalTestFunction& f, const std::vector<double>& x_grid);

}  // namespace gl2p
