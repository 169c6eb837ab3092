#include "gl2p/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

namespace gl2p {

void GlobalTestFunction::validate() const {
  arch.validate();
  if (n < 1) throw InputError("global test function: n must be a positive integer");
  if (std::abs(arch.n0 - static_cast<double>(n)) > 1e-12 * static_cast<double>(n))
    throw InputError("global test function: arch determinant center must equal n");
  for (const auto& [p, fp] : finite) {
    require_prime(p);
    if (fp.p != p) throw InputError("global test function: finite factor keyed at the wrong prime");
    if (fp.det_valuation() != valuation_int(BigInt(n), p))
      throw InputError("global test function: f_" + std::to_string(p) + " does not select det = n");
  }
  for (long q : prime_divisors(BigInt(n)))
    if (!finite.count(q)) throw InputError("global test function: prime " + std::to_string(q) + " | n is not in S");
}

LocalTestFunctionP GlobalTestFunction::at(long p) const {
  auto it = finite.find(p);
  return it != finite.end() ? it->second : LocalTestFunctionP::unit(p);
}

GlobalTestFunction GlobalTestFunction::standard() {
  GlobalTestFunction f;
  f.finite.emplace(2, LocalTestFunctionP::unit(2));
  f.finite.emplace(3, LocalTestFunctionP::unit(3));
  return f;
}

namespace {

long mod_pos(long a, long m) { return ((a % m) + m) % m; }

long discriminant(long a, long n) { return a * a - 4 * n; }

}  // namespace

double ThetaProfile::finite_product(long a) const {
  double v = 1;
  for (const auto& ff : finite) {
    long P = static_cast<long>(ff.table.size());
    v *= ff.table[static_cast<size_t>(mod_pos(a, P))];
  }
  return v;
}

void ThetaProfile::perturb(long a, double delta) {
  for (auto& pt : lattice)
    if (pt.a == a) {
      pt.theta += delta;
      return;
    }
  throw InputError("perturb: " + std::to_string(a) + " is not a support lattice point");
}

ThetaProfile build_theta(const GlobalTestFunction& f, const GridSpec& grid) {
  f.validate();
  const auto& arch = f.arch;
  if (arch.a0 - arch.r0 < -grid.A_max || arch.a0 + arch.r0 > grid.A_max)
    throw InputError("build_theta: window smaller than the bump's trace support");
  if (grid.arch_samples < 2) throw InputError("build_theta: need at least two arch samples");
  ThetaProfile th;
  th.f = f;
  th.A_max = grid.A_max;
  const double n = static_cast<double>(f.n);
  for (int i = 0; i < grid.arch_samples; ++i) {
    double a = -grid.A_max + 2 * grid.A_max * i / (grid.arch_samples - 1);
    th.arch_a.push_back(a);
    th.arch_theta.push_back(theta_arch(a, n, arch));
  }

  // Support lattice: integrality at every prime forces a in Z.
  std::vector<long> support;
  for (long a = static_cast<long>(std::ceil(arch.a0 - arch.r0)); a <= static_cast<long>(std::floor(arch.a0 + arch.r0));
       ++a)
    if (arch.trace_factor(static_cast<double>(a)) != 0) support.push_back(a);

  std::set<long> primes;
  for (const auto& [p, fp] : f.finite) primes.insert(p);
  for (long a : support) {
    long D = discriminant(a, f.n);
    if (D != 0)
      for (long q : prime_divisors(BigInt(D))) primes.insert(q);
  }
  long M = 1;
  for (long p : primes) {
    long maxv = 0;
    for (long a : support) {
      long D = discriminant(a, f.n);
      if (D != 0) maxv = std::max(maxv, valuation_int(BigInt(D), p));
    }
    FiniteFactor ff;
    ff.p = p;
    ff.in_S = f.finite.count(p) > 0;
    // Unit classes of D are fixed mod p (odd p) or mod 8 (p = 2).
    ff.e = maxv + (p == 2 ? 3 : 1);
    long P = pow_int(p, static_cast<unsigned long>(ff.e)).get_si();
    if (P > 2000000 || M > 50000000 / P) throw InputError("build_theta: finite tables too large");
    M *= P;
    LocalTestFunctionP fp = f.at(p);
    CompensatedSum<double> mass;
    for (long c = 0; c < P; ++c) {
      long rep = discriminant(c, f.n) == 0 ? c + P : c;
      double v = theta_local_padic(Rational(rep), Rational(f.n), fp).value;
      ff.table.push_back(v);
      mass.add(v);
    }
    ff.mass = mass.value() / static_cast<double>(P);
    th.finite.push_back(std::move(ff));
  }
  th.M = M;
  for (long a : support) {
    LatticePoint pt;
    pt.a = a;
    pt.cls = classify(Rational(a), Rational(f.n));
    pt.theta_arch = theta_arch(static_cast<double>(a), n, arch);
    pt.finite = th.finite_product(a);
    pt.theta = pt.theta_arch * pt.finite;
    th.lattice.push_back(pt);
  }
  return th;
}

double elliptic_sum(const ThetaProfile& th) {
  CompensatedSum<double> s;
  for (const auto& pt : th.lattice)
    if (pt.cls == Classification::elliptic) s.add(pt.theta);
  return s.value();
}

double nell_sum(const ThetaProfile& th) {
  CompensatedSum<double> s;
  for (const auto& pt : th.lattice)
    if (pt.cls != Classification::elliptic) s.add(pt.theta);
  return s.value();
}

double lattice_sum(const ThetaProfile& th) {
  CompensatedSum<double> s;
  for (const auto& pt : th.lattice) s.add(pt.theta);
  return s.value();
}

Complex fourier_real(const std::function<double(double)>& g, double lo, double hi, double xi, double tol,
                     std::vector<double> breaks) {
  const double w = -2 * std::numbers::pi * xi;
  auto h = [&](double x) { return g(x) * Complex(std::cos(w * x), std::sin(w * x)); };
  return integrate<Complex>(h, lo, hi, tol, std::move(breaks), 200000).value;
}

Complex finite_hat(const FiniteFactor& ff, long k, long M) {
  const long P = static_cast<long>(ff.table.size());
  if (M % P != 0) throw InputError("finite_hat: table modulus does not divide M");
  long Mp = M / P;
  BigInt inv;
  BigInt bMp(Mp), bP(P);
  if (mpz_invert(inv.get_mpz_t(), bMp.get_mpz_t(), bP.get_mpz_t()) == 0 && P > 1)
    throw InputError("finite_hat: M / p^e not prime to p");
  // {c k / M}_p = (c k Mp^-1 mod P) / P.
  long t = P == 1 ? 0 : mod_pos(static_cast<long>((static_cast<__int128>(mod_pos(k, P)) * inv.get_si()) % P), P);
  CompensatedSum<Complex> s;
  for (long c = 0; c < P; ++c) {
    double ang = 2 * std::numbers::pi * static_cast<double>((static_cast<__int128>(c) * t) % P) / static_cast<double>(P);
    s.add(ff.table[static_cast<size_t>(c)] * Complex(std::cos(ang), std::sin(ang)));
  }
  return s.value() / static_cast<double>(P);
}

Complex FourierProfile::value(long k) const {
  if (k < 0) return std::conj(value(-k));
  if (static_cast<size_t>(k) >= arch_hat.size()) throw InputError("FourierProfile: frequency outside the window");
  return arch_hat[static_cast<size_t>(k)] * weight[static_cast<size_t>(k % M)];
}

double FourierProfile::weight_l1() const {
  CompensatedSum<double> s;
  for (const auto& w : weight) s.add(std::abs(w));
  return s.value();
}

namespace {

struct NodeSet {
  std::vector<double> x, w;
};

// Composite Gauss-Legendre nodes over the trace support, graded
// geometrically toward the singular points where theta has a sqrt edge.
NodeSet arch_nodes(double lo, double hi, const std::vector<double>& singular, double per_unit, int order) {
  GaussRule rule = gauss_legendre(order);
  NodeSet ns;
  auto panel = [&](double u, double v) {
    int k = std::max(1, static_cast<int>(std::ceil((v - u) * per_unit)));
    double h = (v - u) / k;
    for (int i = 0; i < k; ++i) {
      double c = u + (i + 0.5) * h;
      for (size_t j = 0; j < rule.nodes.size(); ++j) {
        ns.x.push_back(c + 0.5 * h * rule.nodes[j]);
        ns.w.push_back(0.5 * h * rule.weights[j]);
      }
    }
  };
  auto graded = [&](double u, double v, bool toward_v) {
    // Boundaries s -/+ L 2^-j for j = 0 .. 50.
    double L = v - u;
    std::vector<double> b;
    for (int j = 0; j <= 50; ++j) b.push_back(L * std::ldexp(1.0, -j));
    b.push_back(0);
    for (size_t j = 0; j + 1 < b.size(); ++j) {
      if (toward_v)
        panel(v - b[j], v - b[j + 1]);
      else
        panel(u + b[j + 1], u + b[j]);
    }
  };
  std::vector<double> pts{lo};
  for (double s : singular)
    if (s > lo && s < hi) pts.push_back(s);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  auto is_sing = [&](double x) {
    for (double s : singular)
      if (x == s) return true;
    return false;
  };
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double u = pts[i], v = pts[i + 1];
    bool su = is_sing(u), sv = is_sing(v);
    if (su && sv) {
      double m = 0.5 * (u + v);
      graded(u, m, false);
      graded(m, v, true);
    } else if (su) {
      graded(u, v, false);
    } else if (sv) {
      graded(u, v, true);
    } else {
      panel(u, v);
    }
  }
  return ns;
}

Complex transform_at(const NodeSet& ns, const std::vector<double>& vals, double xi) {
  CompensatedSum<Complex> s;
  const double w = -2 * std::numbers::pi * xi;
  for (size_t i = 0; i < ns.x.size(); ++i)
    s.add(ns.w[i] * vals[i] * Complex(std::cos(w * ns.x[i]), std::sin(w * ns.x[i])));
  return s.value();
}

}  // namespace

FourierProfile fourier_theta(const ThetaProfile& th, double Xi, double tol, int threads) {
  if (!(Xi > 0)) throw InputError("fourier_theta: Xi must be positive");
  if (!(tol > 0)) throw InputError("fourier_theta: tol must be positive");
  const auto& arch = th.f.arch;
  const double n = static_cast<double>(th.f.n);
  FourierProfile fp;
  fp.M = th.M;
  fp.Xi = Xi;
  const long K = static_cast<long>(std::floor(Xi * static_cast<double>(th.M)));

  // Periodic finite weights.
  std::vector<std::vector<Complex>> hats;
  for (const auto& ff : th.finite) {
    long P = static_cast<long>(ff.table.size());
    std::vector<Complex> h(static_cast<size_t>(P));
    long Mp = th.M / P;
    for (long t = 0; t < P; ++t) h[static_cast<size_t>(t)] = finite_hat(ff, t * Mp, th.M);
    hats.push_back(std::move(h));
  }
  fp.weight.assign(static_cast<size_t>(th.M), Complex(1, 0));
  for (size_t i = 0; i < th.finite.size(); ++i) {
    long P = static_cast<long>(th.finite[i].table.size());
    long Mp = th.M / P;
    BigInt inv, bMp(Mp), bP(P);
    mpz_invert(inv.get_mpz_t(), bMp.get_mpz_t(), bP.get_mpz_t());
    for (long r = 0; r < th.M; ++r) {
      long t = P == 1 ? 0 : static_cast<long>((static_cast<__int128>(r % P) * inv.get_si()) % P);
      fp.weight[static_cast<size_t>(r)] *= hats[i][static_cast<size_t>(t)];
    }
  }

  const double lo = arch.a0 - arch.r0, hi = arch.a0 + arch.r0;
  const double s2 = 2 * std::sqrt(n);
  auto build = [&](double per_unit, int order, std::vector<double>& vals) {
    NodeSet ns = arch_nodes(lo, hi, {-s2, s2}, per_unit, order);
    vals.resize(ns.x.size());
    for (size_t i = 0; i < ns.x.size(); ++i) vals[i] = theta_arch(ns.x[i], n, arch);
    return ns;
  };
  std::vector<double> vals, vals2;
  NodeSet ns = build(std::max(8.0, 2 * Xi), 24, vals);
  NodeSet ns2 = build(std::max(16.0, 4 * Xi), 32, vals2);
  double qerr = 0;
  for (double x : {0.0, 0.5 * Xi, Xi, 1.0, static_cast<double>(K) / static_cast<double>(th.M)})
    qerr = std::max(qerr, std::abs(transform_at(ns, vals, x) - transform_at(ns2, vals2, x)));
  if (qerr > tol) throw QuadratureError("fourier_theta: arch transform did not reach tolerance", qerr);
  fp.quad_error = qerr;

  // theta_arch^(k/M) for 0 <= k <= K, in fixed blocks so that the result
  // does not depend on the number of workers.
  fp.arch_hat.assign(static_cast<size_t>(K + 1), Complex(0, 0));
  const long block = 256;
  const long nblocks = (K + 1 + block - 1) / block;
  std::vector<Complex> coef(ns2.x.size()), step(ns2.x.size());
  const double base = -2 * std::numbers::pi / static_cast<double>(th.M);
  for (size_t i = 0; i < ns2.x.size(); ++i) {
    coef[i] = ns2.w[i] * vals2[i];
    step[i] = Complex(std::cos(base * ns2.x[i]), std::sin(base * ns2.x[i]));
  }
  auto work = [&](long b0, long stride) {
    std::vector<Complex> z(ns2.x.size());
    for (long b = b0; b < nblocks; b += stride) {
      long k0 = b * block, k1 = std::min(K + 1, k0 + block);
      for (size_t i = 0; i < z.size(); ++i) {
        double ang = base * static_cast<double>(k0) * ns2.x[i];
        z[i] = Complex(std::cos(ang), std::sin(ang));
      }
      for (long k = k0; k < k1; ++k) {
        CompensatedSum<Complex> s;
        for (size_t i = 0; i < z.size(); ++i) {
          s.add(coef[i] * z[i]);
          z[i] *= step[i];
        }
        fp.arch_hat[static_cast<size_t>(k)] = s.value();
      }
    }
  };
  int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nt = static_cast<int>(std::min<long>(nt, nblocks));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work, t, nt);
  work(0, nt);
  for (auto& t : pool) t.join();
  return fp;
}

DecayFit decay_fit(const std::vector<double>& xi, const std::vector<double>& absval, double noise_floor) {
  if (xi.size() != absval.size()) throw InputError("decay_fit: size mismatch");
  double xmax = 0, vmax = 0;
  for (size_t i = 0; i < xi.size(); ++i) {
    xmax = std::max(xmax, std::abs(xi[i]));
    vmax = std::max(vmax, absval[i]);
  }
  const double xlo = 0.5 * xmax;
  std::vector<std::pair<double, double>> outer;
  for (size_t i = 0; i < xi.size(); ++i)
    if (std::abs(xi[i]) >= xlo && xi[i] != 0) outer.emplace_back(std::abs(xi[i]), absval[i]);
  if (outer.size() < 20) throw InputError("decay_fit: need at least 20 frequencies in the fit range");
  const int nb = 20;
  std::vector<std::pair<double, double>> peak(nb, {0.0, -1.0});
  for (auto [x, v] : outer) {
    int b = std::min(nb - 1, static_cast<int>(nb * std::log(x / xlo) / std::log(xmax / xlo)));
    if (v > peak[static_cast<size_t>(b)].second) peak[static_cast<size_t>(b)] = {x, v};
  }
  std::vector<double> lx, ly;
  for (auto [x, v] : peak)
    if (v > noise_floor * vmax && v > 0) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(v));
    }
  if (lx.size() < 5) throw std::runtime_error("decay_fit: insufficient signal above the noise floor");
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  DecayFit fit;
  fit.lambda = -sxy / sxx;
  fit.bins = static_cast<int>(lx.size());
  fit.xi_lo = xlo;
  fit.xi_hi = xmax;
  for (auto [x, v] : outer) fit.C = std::max(fit.C, v * std::pow(x, fit.lambda));
  return fit;
}

DecayFit decay_fit(const FourierProfile& fp) {
  std::vector<double> xi, av;
  for (size_t k = 1; k < fp.arch_hat.size(); ++k) {
    xi.push_back(fp.xi(static_cast<long>(k)));
    av.push_back(std::abs(fp.arch_hat[k]));
  }
  return decay_fit(xi, av);
}

std::string to_string(DecayModel m) {
  switch (m) {
    case DecayModel::sqrt_edge: return "sqrt_edge";
    case DecayModel::triangle: return "triangle";
    case DecayModel::step: return "step";
  }
  return "?";
}

DecayModel parse_decay_model(const std::string& s) {
  if (s == "sqrt_edge") return DecayModel::sqrt_edge;
  if (s == "triangle") return DecayModel::triangle;
  if (s == "step") return DecayModel::step;
  throw InputError("unknown decay model '" + s + "' (sqrt_edge, triangle, step)");
}

DecayFit decay_model_fit(DecayModel m, double Xi, int per_unit) {
  if (!(Xi > 0) || per_unit < 1) throw InputError("decay_model_fit: window must be positive");
  std::function<double(double)> g;
  switch (m) {
    case DecayModel::sqrt_edge: g = [](double x) { return std::sqrt(std::max(0.0, 1 - x * x)); }; break;
    case DecayModel::triangle: g = [](double x) { return 1 - std::abs(x); }; break;
    case DecayModel::step: g = [](double) { return 1.0; }; break;
  }
  const long K = static_cast<long>(Xi * per_unit);
  std::vector<double> xi, av;
  for (long k = 1; k <= K; ++k) {
    xi.push_back(static_cast<double>(k) / per_unit);
    av.push_back(std::abs(fourier_real(g, -1, 1, xi.back(), 1e-11, {0.0})));
  }
  return decay_fit(xi, av);
}

double tail_bound(const FourierProfile& fp, const DecayFit& fit) {
  if (!fit.summable()) return std::numeric_limits<double>::infinity();
  const double X = fp.Xi, l = fit.lambda;
  return 2 * fp.weight_l1() * fit.C * (std::pow(X, -l) + std::pow(X, 1 - l) / (l - 1));
}

TrivialTrace trivial_trace(const ThetaProfile& th, double tol) {
  TrivialTrace t;
  for (const auto& ff : th.finite) t.finite_mass *= ff.mass;
  auto r = arch_mass_iwasawa(th.f.arch, static_cast<double>(th.f.n), tol / std::max(1.0, std::abs(t.finite_mass)));
  t.arch = r.value;
  t.value = r.value * t.finite_mass;
  t.error = r.error * std::abs(t.finite_mass);
  return t;
}

TheoremOneReport verify_theorem1(const GlobalTestFunction& f, const TheoremOneOptions& opt) {
  if (!(opt.tol > 0)) throw InputError("verify_theorem1: tol must be positive");
  ThetaProfile th = build_theta(f, opt.grid);
  for (auto [a, d] : opt.perturb) th.perturb(a, d);
  TheoremOneReport rep;
  rep.tol = opt.tol;
  rep.M = th.M;
  rep.J_ell = elliptic_sum(th);
  rep.nell_correction = nell_sum(th);
  rep.lattice = th.lattice;
  rep.finite = th.finite;

  double Xi = opt.Xi > 0 ? opt.Xi : 4;
  FourierProfile fp;
  DecayFit fit;
  double tail = 0;
  for (;;) {
    fp = fourier_theta(th, Xi, opt.tol * 1e-3, opt.threads);
    fit = decay_fit(fp);
    tail = tail_bound(fp, fit);
    if (tail <= 0.1 * opt.tol) break;
    if (opt.Xi > 0 || 2 * Xi > opt.Xi_limit) {
      if (tail <= opt.tol) break;
      throw TailNotCertifiedError("verify_theorem1: dual tail not certified (bound " + std::to_string(tail) +
                                  " at Xi = " + std::to_string(Xi) + ")");
    }
    Xi *= 2;
  }
  rep.Xi = Xi;
  rep.lambda = fit.lambda;
  rep.tail_bound = tail;
  const long K = static_cast<long>(fp.arch_hat.size()) - 1;
  CompensatedSum<double> dual;
  for (long k = 1; k <= K; ++k) dual.add(2 * fp.value(k).real());
  rep.dual_sum_nonzero = dual.value();
  rep.theta_hat0 = fp.value(0).real();
  rep.quad_error = fp.quad_error * fp.weight_l1() * (2 * Xi + 1);
  TrivialTrace tt = trivial_trace(th, opt.tol * 1e-2);
  rep.trivial_trace = tt.value;
  rep.weyl_gap = std::abs(tt.value - rep.theta_hat0);
  rep.residual = rep.J_ell - rep.trivial_trace - rep.dual_sum_nonzero + rep.nell_correction;
  rep.pass = std::abs(rep.residual) <= opt.tol + rep.tail_bound;
  for (long k = 1; k <= K && rep.dual_head.size() < 12; ++k) {
    Complex v = fp.value(k);
    if (std::abs(v) > 1e-15) rep.dual_head.emplace_back(fp.xi(k), v);
  }
  return rep;
}

PoissonConditions poisson_conditions(const ThetaProfile& th, const FourierProfile& fp) {
  PoissonConditions pc;
  const auto& arch = th.f.arch;
  const double n = static_cast<double>(th.f.n);
  const double s2 = 2 * std::sqrt(n);
  auto absth = [&](double a) { return std::abs(theta_arch(a, n, arch)); };
  double arch_l1 = integrate<double>(absth, arch.a0 - arch.r0, arch.a0 + arch.r0, 1e-10, {-s2, s2}).value;
  double fin = 1;
  for (const auto& ff : th.finite) {
    double s = 0;
    for (double v : ff.table) s += std::abs(v);
    fin *= s / static_cast<double>(ff.table.size());
  }
  pc.l1_mass = arch_l1 * fin;
  pc.l1_ok = std::isfinite(pc.l1_mass);

  // Shifted lattice sums beyond the window.
  double sup = 0;
  for (int j = 0; j < 10; ++j) {
    double u = 0.1 * j, tail = 0;
    for (long a = -static_cast<long>(th.A_max) - 20; a <= static_cast<long>(th.A_max) + 20; ++a) {
      double x = static_cast<double>(a) + u;
      if (std::abs(x) > th.A_max) tail += absth(x);
    }
    sup = std::max(sup, tail);
  }
  pc.uniform_tail = sup;
  pc.uniform_ok = sup < 1e-12;

  CompensatedSum<double> s;
  const long K = static_cast<long>(fp.arch_hat.size()) - 1;
  for (long k = -K; k <= K; ++k) s.add(std::abs(fp.value(k)));
  pc.fit = decay_fit(fp);
  pc.dual_tail = tail_bound(fp, pc.fit);
  pc.dual_abs_sum = s.value() + pc.dual_tail;
  pc.dual_ok = pc.fit.summable() && std::isfinite(pc.dual_tail);
  return pc;
}

GaussianSelfTest poisson_selftest_gaussian() {
  GaussianSelfTest g;
  auto gauss = [](double x) { return std::exp(-std::numbers::pi * x * x); };
  CompensatedSum<double> d, h;
  for (long k = -12; k <= 12; ++k) {
    d.add(gauss(static_cast<double>(k)));
    h.add(fourier_real(gauss, -9, 9, static_cast<double>(k), 1e-13).real());
  }
  g.direct = d.value();
  g.dual = h.value();
  return g;
}

}  // namespace gl2p
