#pragma once

// The trace pushforward theta_f of a global test function on the
// Steinberg-Hitchin line {det = n}, its adelic Fourier transform, and the
// lattice identity  sum_ell theta = theta^(0) + sum_{xi != 0} theta^(xi) - sum_nell theta.
//
// Finite places enter through tables Phi_p on Z_p / p^e. A prime outside the
// configured set S still contributes a nontrivial factor when it divides some
// discriminant a^2 - 4n on the support, so the tables cover the effective set
// S_eff = S u {p | a^2 - 4n, a in support}.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gl2p/arch_orbital.hpp"
#include "gl2p/local_orbital.hpp"
#include "gl2p/quadforms.hpp"

namespace gl2p {

class TailNotCertifiedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalTestFunction {
  LocalTestFunctionArch arch;
  std::map<long, LocalTestFunctionP> finite;  // p in S; unit elsewhere
  long n = 1;

  void validate() const;
  /// f_p for any prime (unit outside S).
  LocalTestFunctionP at(long p) const;
  /// Standard configuration: n = 1, S = {2, 3}, bump at (0, 1), r0 = 1.5, m = 4.
  static GlobalTestFunction standard();
};

struct FiniteFactor {
  long p = 2;
  long e = 1;                 // table modulus p^e
  bool in_S = false;
  std::vector<double> table;  // Phi_p(c), c = 0 .. p^e - 1
  double mass = 0;            // integral of Phi_p over Z_p
};

struct LatticePoint {
  long a;
  Classification cls;
  double theta_arch;
  double finite;  // product of Phi_p(a)
  double theta;   // theta_arch * finite (+ any perturbation)
};

struct GridSpec {
  double A_max = 4;
  int arch_samples = 161;
};

struct ThetaProfile {
  GlobalTestFunction f;
  double A_max = 0;
  std::vector<double> arch_a, arch_theta;  // samples on [-A_max, A_max]
  std::vector<FiniteFactor> finite;        // S_eff, ascending
  std::vector<LatticePoint> lattice;       // integers a with theta_arch(a) != 0
  long M = 1;                              // prod p^e

  /// Phi product at integer a.
  double finite_product(long a) const;
  /// Add delta to theta at lattice point a (negative controls).
  void perturb(long a, double delta);
};

ThetaProfile build_theta(const GlobalTestFunction& f, const GridSpec& grid = {});

double elliptic_sum(const ThetaProfile& th);
double nell_sum(const ThetaProfile& th);
double lattice_sum(const ThetaProfile& th);

/// Fourier transform of a real profile g supported on [lo, hi] at xi,
/// with psi(x) = exp(-2 pi i x).
Complex fourier_real(const std::function<double(double)>& g, double lo, double hi, double xi, double tol,
                     std::vector<double> breaks = {});

struct FourierProfile {
  long M = 1;
  double Xi = 0;                     // frequencies k/M, 0 <= k <= Xi*M
  std::vector<Complex> arch_hat;     // theta_arch^(k/M)
  std::vector<Complex> weight;       // prod_p Phi_p^(r/M), r mod M
  double quad_error = 0;             // bound on each arch_hat value

  Complex value(long k) const;       // theta^(k/M), any sign of k
  double xi(long k) const { return static_cast<double>(k) / static_cast<double>(M); }
  double weight_l1() const;
};

/// theta^ on (1/M)Z up to |xi| <= Xi. Uses `threads` workers; results do
/// not depend on the worker count.
FourierProfile fourier_theta(const ThetaProfile& th, double Xi, double tol, int threads = 0);

/// Phi_p^(k / M) for one finite factor.
Complex finite_hat(const FiniteFactor& ff, long k, long M);

struct DecayFit {
  double lambda = 0;   // |g^(xi)| ~ C |xi|^-lambda
  double C = 0;        // envelope constant over the fit range
  int bins = 0;
  double xi_lo = 0, xi_hi = 0;
  bool summable() const { return lambda > 1.1; }
};

/// Least-squares slope of log(envelope of |values|) against log|xi| over the
/// outer half of the range. Needs at least 20 samples there.
DecayFit decay_fit(const std::vector<double>& xi, const std::vector<double>& absval, double noise_floor = 1e-14);
DecayFit decay_fit(const FourierProfile& fp);

/// Model profiles on [-1, 1] with known transform decay: sqrt(1 - x^2)
/// (exponent 3/2), 1 - |x| (exponent 2) and the indicator (exponent 1, not
/// summable).
enum class DecayModel { sqrt_edge, triangle, step };
std::string to_string(DecayModel m);
DecayModel parse_decay_model(const std::string& s);
/// Fit on |g^(k/per_unit)|, 0 < k <= Xi * per_unit, computed with fourier_real.
DecayFit decay_model_fit(DecayModel m, double Xi = 64, int per_unit = 8);

/// Two-sided tail sum_{|k| > Xi M} |theta^(k/M)| bound from an envelope fit.
double tail_bound(const FourierProfile& fp, const DecayFit& fit);

struct TrivialTrace {
  double value = 0, error = 0;
  double arch = 0;          // Iwasawa-coordinate integral of f_inf
  double finite_mass = 1;   // product of Phi_p masses
};

TrivialTrace trivial_trace(const ThetaProfile& th, double tol);

struct TheoremOneOptions {
  GridSpec grid;
  double tol = 1e-5;
  double Xi = 0;          // 0: grow until the tail is certified
  double Xi_limit = 256;
  std::map<long, double> perturb;
  int threads = 0;
};

struct TheoremOneReport {
  double J_ell = 0, trivial_trace = 0, theta_hat0 = 0, dual_sum_nonzero = 0, nell_correction = 0;
  double residual = 0;
  double tol = 0, tail_bound = 0, quad_error = 0;
  double lambda = 0, Xi = 0;
  long M = 1;
  double weyl_gap = 0;  // |trivial_trace - theta^(0)|
  bool pass = false;
  std::vector<LatticePoint> lattice;
  std::vector<FiniteFactor> finite;
  std::vector<std::pair<double, Complex>> dual_head;  // first few nonzero terms
};

TheoremOneReport verify_theorem1(const GlobalTestFunction& f, const TheoremOneOptions& opt = {});

struct PoissonConditions {
  double l1_mass = 0;
  bool l1_ok = false;
  double uniform_tail = 0;
  bool uniform_ok = false;
  double dual_abs_sum = 0, dual_tail = 0;
  DecayFit fit;
  bool dual_ok = false;
};

PoissonConditions poisson_conditions(const ThetaProfile& th, const FourierProfile& fp);

struct GaussianSelfTest {
  double direct = 0, dual = 0;
};
/// sum_k exp(-pi k^2) both directly and through the Fourier engine.
GaussianSelfTest poisson_selftest_gaussian();

}  // namespace gl2p
