#include "gl2p/satake.hpp"

#include <cmath>
#include <sstream>

namespace gl2p {

QSqrt QSqrt::half_power(long p, long k) {
  long h = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k / 2)
  Rational r = pow(Rational(p), h);
  if (k - 2 * h == 0) return {r};
  return {Rational(0), r};
}

double QSqrt::to_double(long p) const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(p));
}

std::string QSqrt::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  if (a_.is_zero()) return b_.to_string() + "*sqrt(p)";
  return a_.to_string() + "+" + b_.to_string() + "*sqrt(p)";
}

QSqrt QSqrt::inv(long p) const {
  Rational n = a_ * a_ - b_ * b_ * p;
  if (n.is_zero()) throw InputError("QSqrt::inv: zero element");
  return {a_ / n, -b_ / n};
}

SatakeElement SatakeElement::one(long p) { return monomial(p, 0, 0, Rational(1)); }

SatakeElement SatakeElement::monomial(long p, long i, long j, QSqrt c) {
  SatakeElement e(p);
  e.add_term(i, j, c);
  return e;
}

void SatakeElement::add_term(long i, long j, const QSqrt& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(i, j);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second = it->second.add(c);
  if (it->second.is_zero()) terms_.erase(it);
}

QSqrt SatakeElement::coeff(long i, long j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? QSqrt() : it->second;
}

bool SatakeElement::is_symmetric() const {
  for (const auto& [k, c] : terms_)
    if (!(coeff(k.second, k.first) == c)) return false;
  return true;
}

SatakeElement SatakeElement::operator+(const SatakeElement& o) const {
  if (o.p_ != p_) throw InputError("SatakeElement: mismatched primes");
  SatakeElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

SatakeElement SatakeElement::operator-(const SatakeElement& o) const { return *this + o.scaled(Rational(-1)); }

SatakeElement SatakeElement::operator*(const SatakeElement& o) const {
  if (o.p_ != p_) throw InputError("SatakeElement: mismatched primes");
  SatakeElement r(p_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r.add_term(k1.first + k2.first, k1.second + k2.second, c1.mul(c2, p_));
  return r;
}

SatakeElement SatakeElement::scaled(const QSqrt& c) const {
  SatakeElement r(p_);
  for (const auto& [k, v] : terms_) r.add_term(k.first, k.second, v.mul(c, p_));
  return r;
}

Complex SatakeElement::evaluate(Complex alpha, Complex beta) const {
  CompensatedSum<Complex> s;
  for (const auto& [k, c] : terms_)
    s.add(c.to_double(p_) * std::pow(alpha, static_cast<double>(k.first)) *
          std::pow(beta, static_cast<double>(k.second)));
  return s.value();
}

std::string SatakeElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*a^" << k.first << "*b^" << k.second;
  }
  return os.str();
}

HeckeElement HeckeElement::coset(long p, long a, long b, QSqrt c) {
  require_prime(p);
  if (b < 0 || a < b) throw InputError("HeckeElement::coset: need a >= b >= 0");
  HeckeElement h;
  h.p = p;
  if (!c.is_zero()) h.coeff[{a, b}] = c;
  return h;
}

HeckeElement HeckeElement::operator+(const HeckeElement& o) const {
  if (o.p != p) throw InputError("HeckeElement: mismatched primes");
  HeckeElement r = *this;
  for (const auto& [k, c] : o.coeff) {
    QSqrt v = r.coeff.count(k) ? r.coeff[k].add(c) : c;
    if (v.is_zero())
      r.coeff.erase(k);
    else
      r.coeff[k] = v;
  }
  return r;
}

SatakeElement complete_h(long p, long k) {
  SatakeElement h(p);
  for (long i = 0; i <= k; ++i) h = h + SatakeElement::monomial(p, i, k - i, Rational(1));
  return h;
}

SatakeElement satake_transform(long p, long a, long b) {
  require_prime(p);
  if (b < 0 || a < b) throw InputError("satake_transform: need a >= b >= 0");
  const long d = a - b;
  SatakeElement inner = complete_h(p, d);
  if (d >= 2) inner = inner - SatakeElement::monomial(p, 1, 1, Rational(1, p)) * complete_h(p, d - 2);
  return (SatakeElement::monomial(p, b, b, Rational(1)) * inner).scaled(QSqrt::half_power(p, d));
}

SatakeElement satake_transform(const HeckeElement& h) {
  SatakeElement s(h.p);
  for (const auto& [k, c] : h.coeff) s = s + satake_transform(h.p, k.first, k.second).scaled(c);
  return s;
}

std::vector<UpperCoset> coset_decomposition(long p, long a, long b) {
  require_prime(p);
  if (b < 0 || a < b) throw InputError("coset_decomposition: need a >= b >= 0");
  if (a + b > 40) throw InputError("coset_decomposition: degree too large");
  std::vector<UpperCoset> out;
  for (long i = b; i <= a; ++i) {
    const long l = a + b - i;
    const long P = pow_int(p, static_cast<unsigned long>(l)).get_si();
    for (long x = 0; x < P; ++x) {
      long vx = l;  // v(0) treated as >= l
      if (x != 0) {
        vx = 0;
        for (long y = x; y % p == 0; y /= p) ++vx;
      }
      if (std::min({i, vx, l}) == b) out.push_back({i, l, x});
    }
  }
  return out;
}

SatakeElement satake_coset_oracle(long p, long a, long b) {
  SatakeElement s(p);
  for (const auto& c : coset_decomposition(p, a, b))
    s = s + SatakeElement::monomial(p, c.i, c.l, QSqrt::half_power(p, c.i - c.l));
  return s;
}

namespace {

// Multiplicity of K diag(p^A, p^B) in T(a1,b1) * T(a2,b2): the number of
// pairs of cosets whose product lands in K diag(p^A, p^B).
long structure_constant(long p, long a1, long b1, long a2, long b2, long A, long B) {
  const long PB = pow_int(p, static_cast<unsigned long>(B)).get_si();
  auto c1 = coset_decomposition(p, a1, b1);
  auto c2 = coset_decomposition(p, a2, b2);
  long count = 0;
  for (const auto& g : c1)
    for (const auto& h : c2) {
      if (g.i + h.i != A || g.l + h.l != B) continue;
      // upper-right entry p^i x' + x p^l'
      __int128 ur = static_cast<__int128>(pow_int(p, static_cast<unsigned long>(g.i)).get_si()) * h.x +
                    static_cast<__int128>(g.x) * pow_int(p, static_cast<unsigned long>(h.l)).get_si();
      if (ur % PB == 0) ++count;
    }
  return count;
}

}  // namespace

HeckeElement convolve(const HeckeElement& f, const HeckeElement& g) {
  if (f.p != g.p) throw InputError("convolve: mismatched primes");
  HeckeElement r;
  r.p = f.p;
  for (const auto& [k1, c1] : f.coeff)
    for (const auto& [k2, c2] : g.coeff) {
      const long deg = k1.first + k1.second + k2.first + k2.second;
      const long bmin = k1.second + k2.second;
      for (long B = bmin; 2 * B <= deg; ++B) {
        long m = structure_constant(f.p, k1.first, k1.second, k2.first, k2.second, deg - B, B);
        if (m == 0) continue;
        r = r + HeckeElement::coset(f.p, deg - B, B, c1.mul(c2, f.p).mul(Rational(m), f.p));
      }
    }
  return r;
}

HeckeElement inverse_satake(const SatakeElement& s) {
  if (!s.is_symmetric()) throw InputError("inverse_satake: element is not symmetric");
  const long p = s.prime();
  HeckeElement h;
  h.p = p;
  SatakeElement rest = s;
  while (!rest.is_zero()) {
    auto lead = rest.terms().begin()->first;
    for (const auto& [k, c] : rest.terms())
      if (k.first - k.second > lead.first - lead.second) lead = k;
    if (lead.second < 0) throw InputError("inverse_satake: negative exponent");
    QSqrt c = rest.coeff(lead.first, lead.second).mul(QSqrt::half_power(p, lead.second - lead.first), p);
    h = h + HeckeElement::coset(p, lead.first, lead.second, c);
    rest = rest - satake_transform(p, lead.first, lead.second).scaled(c);
  }
  return h;
}

Rep parse_rep(const std::string& s) {
  if (s == "standard" || s == "std") return Rep::standard;
  if (s == "sym2") return Rep::sym2;
  if (s == "sym3") return Rep::sym3;
  if (s == "sym4") return Rep::sym4;
  throw InputError("unsupported representation '" + s + "' (standard, sym2, sym3, sym4)");
}

std::string to_string(Rep r) {
  switch (r) {
    case Rep::standard: return "standard";
    case Rep::sym2: return "sym2";
    case Rep::sym3: return "sym3";
    case Rep::sym4: return "sym4";
  }
  return "?";
}

std::vector<std::pair<long, long>> rep_weights(Rep r) {
  const long k = static_cast<long>(r) + 1;
  std::vector<std::pair<long, long>> w;
  for (long i = 0; i <= k; ++i) w.emplace_back(k - i, i);
  return w;
}

BasicFunctionSeries basic_function_series(Rep r, long p, long K) {
  require_prime(p);
  if (K < 0 || K > 12) throw InputError("basic_function_series: order must be in [0, 12]");
  auto w = rep_weights(r);
  std::vector<SatakeElement> power;  // power sums P_i, i >= 1
  power.emplace_back(p);
  for (long i = 1; i <= K; ++i) {
    SatakeElement P(p);
    for (auto [x, y] : w) P = P + SatakeElement::monomial(p, i * x, i * y, Rational(1));
    power.push_back(P);
  }
  BasicFunctionSeries b;
  b.p = p;
  b.rep = r;
  b.c.push_back(SatakeElement::one(p));
  for (long k = 1; k <= K; ++k) {
    SatakeElement acc(p);
    for (long i = 1; i <= k; ++i) acc = acc + power[static_cast<size_t>(i)] * b.c[static_cast<size_t>(k - i)];
    b.c.push_back(acc.scaled(Rational(1, k)));
  }
  return b;
}

std::vector<SatakeElement> basic_coefficients_geometric(Rep r, long p, long K) {
  require_prime(p);
  if (K < 0 || K > 12) throw InputError("basic_coefficients_geometric: order must be in [0, 12]");
  auto w = rep_weights(r);
  const long d = static_cast<long>(w.size()) - 1;  // weight degree
  SatakeElement prod = SatakeElement::one(p);
  for (auto [x, y] : w) {
    SatakeElement geo(p);
    for (long j = 0; j <= K; ++j) geo = geo + SatakeElement::monomial(p, j * x, j * y, Rational(1));
    SatakeElement next(p);
    const SatakeElement full = prod * geo;
    for (const auto& [k, c] : full.terms())
      if (k.first + k.second <= K * d) next = next + SatakeElement::monomial(p, k.first, k.second, c);
    prod = next;
  }
  std::vector<SatakeElement> out(static_cast<size_t>(K + 1), SatakeElement(p));
  for (const auto& [k, c] : prod.terms())
    out[static_cast<size_t>((k.first + k.second) / d)] =
        out[static_cast<size_t>((k.first + k.second) / d)] + SatakeElement::monomial(p, k.first, k.second, c);
  return out;
}

BasicFunctionSeries::Check BasicFunctionSeries::check(Complex alpha, Complex beta, Complex s) const {
  const Complex x = std::exp(-s * std::log(static_cast<double>(p)));
  Complex L = 1;
  double rho = 0;
  auto w = rep_weights(rep);
  for (auto [i, j] : w) {
    Complex wv = std::pow(alpha, static_cast<double>(i)) * std::pow(beta, static_cast<double>(j));
    L /= (1.0 - wv * x);
    rho = std::max(rho, std::abs(wv * x));
  }
  if (!(rho < 1)) throw InputError("BasicFunctionSeries::check: series does not converge at s");
  CompensatedSum<Complex> sum;
  Complex xk = 1;
  for (const auto& ck : c) {
    sum.add(ck.evaluate(alpha, beta) * xk);
    xk *= x;
  }
  Check out;
  out.residual = std::abs(sum.value() - L);
  // sum_{k > K} #monomials(k) rho^k with #monomials = C(k + m, m), m = dim - 1
  const double m = static_cast<double>(w.size()) - 1;
  const long K = static_cast<long>(c.size()) - 1;
  double tail = 0;
  for (long k = K + 1; k <= K + 4000; ++k) {
    double term = std::exp(std::lgamma(k + m + 1.0) - std::lgamma(m + 1.0) - std::lgamma(k + 1.0) +
                           static_cast<double>(k) * std::log(rho));
    tail += term;
    if (term < 1e-18 * tail) break;
  }
  out.truncation_bound = tail * (1 + 1e-12) + 1e-14;
  return out;
}

}  // namespace gl2p
