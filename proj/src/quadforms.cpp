#include "gl2p/quadforms.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

namespace gl2p {

std::string BinaryQuadraticForm::to_string() const {
  return "(" + A.get_str() + "," + B.get_str() + "," + C.get_str() + ")";
}

bool is_reduced(const BinaryQuadraticForm& f) {
  if (f.A <= 0) return false;
  BigInt absB = f.B < 0 ? BigInt(-f.B) : f.B;
  if (!(absB <= f.A && f.A <= f.C)) return false;
  if ((absB == f.A || f.A == f.C) && f.B < 0) return false;
  return true;
}

BinaryQuadraticForm reduce(const BinaryQuadraticForm& form) {
  if (form.discriminant() >= 0) throw InputError("reduce: discriminant must be negative");
  if (form.A <= 0) throw InputError("reduce: form must be positive definite (A > 0)");
  BigInt A = form.A, B = form.B, C = form.C;
  for (;;) {
    // Translate B into (-A, A].
    if (B <= -A || B > A) {
      BigInt twoA = 2 * A;
      BigInt t;
      // t = floor((A - B) / 2A)
      mpz_fdiv_q(t.get_mpz_t(), BigInt(A - B).get_mpz_t(), twoA.get_mpz_t());
      C = A * t * t + B * t + C;
      B = B + twoA * t;
    }
    if (A > C) {
      std::swap(A, C);
      B = -B;
      continue;
    }
    break;
  }
  if (A == C && B < 0) B = -B;
  return {A, B, C};
}

namespace {

BigInt gcd3(const BigInt& a, const BigInt& b, const BigInt& c) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

void check_disc(long D) {
  long r = ((D % 4) + 4) % 4;
  if (D >= 0 || (r != 0 && r != 1)) throw InputError("invalid negative discriminant " + std::to_string(D));
}

// Memo tables: first writer wins, later writers find the same value.
template <typename V>
class Memo {
 public:
  template <typename F>
  V get(long key, F compute) {
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V v = compute();
    std::unique_lock lock(mu_);
    return map_.emplace(key, std::move(v)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<long, V> map_;
};

Memo<long>& class_memo() {
  static Memo<long> m;
  return m;
}
Memo<Rational>& hurwitz_memo() {
  static Memo<Rational> m;
  return m;
}

}  // namespace

std::vector<BinaryQuadraticForm> reduced_forms(long D) {
  check_disc(D);
  long N = -D;
  std::vector<BinaryQuadraticForm> out;
  for (long A = 1; 3 * A * A <= N; ++A) {
    for (long B = -A + 1; B <= A; ++B) {
      if (((B - N) % 2 + 2) % 2 != 0) continue;
      long num = B * B + N;
      if (num % (4 * A) != 0) continue;
      long C = num / (4 * A);
      BinaryQuadraticForm f{A, B, C};
      if (is_reduced(f)) out.push_back(f);
    }
  }
  return out;
}

long class_number(long D) {
  check_disc(D);
  return class_memo().get(D, [D] {
    long h = 0;
    for (const auto& f : reduced_forms(D))
      if (gcd3(f.A, f.B, f.C) == 1) ++h;
    return h;
  });
}

Rational hurwitz(long N) {
  if (N < 0) throw InputError("hurwitz: N must be nonnegative");
  if (N == 0) return Rational(-1, 12);
  long r = N % 4;
  if (r == 1 || r == 2) return Rational(0);
  return hurwitz_memo().get(N, [N] {
    Rational H(0);
    for (const auto& f : reduced_forms(-N)) {
      if (f.A == f.C && f.B == 0)
        H += Rational(1, 2);
      else if (f.A == f.B && f.B == f.C)
        H += Rational(1, 3);
      else
        H += 1;
    }
    return H;
  });
}

Rational class_number_lattice_product(long D) {
  check_disc(D);
  auto fd = fundamental_discriminant(BigInt(D));
  long D0 = fd.fundamental.get_si(), f = fd.conductor.get_si();
  auto units = [](long d) { return d == -3 ? 6 : d == -4 ? 4 : 2; };
  Rational sum(0);
  for (long d = 1; d <= f; ++d) {
    if (f % d) continue;
    long Dd = D / (d * d);
    sum += Rational(class_number(Dd) * units(D0), units(Dd));
  }
  long t = static_cast<long>(prime_divisors(BigInt(D0)).size());
  return sum * Rational(pow_int(2, static_cast<unsigned long>(t))) / Rational(class_number(D0));
}

KroneckerHurwitzResult kronecker_hurwitz_check(long n) { return kronecker_hurwitz_check(n, &hurwitz); }

KroneckerHurwitzResult kronecker_hurwitz_check(long n, Rational (*H)(long)) {
  if (n < 1) throw InputError("kronecker_hurwitz_check: n must be positive");
  Rational lhs(0), rhs(0);
  for (long a = 0; a * a <= 4 * n; ++a) lhs += (a == 0 ? 1 : 2) * H(4 * n - a * a);
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) rhs += std::max(d, n / d);
  return {lhs, rhs, lhs == rhs};
}

Mat2 Mat2::inverse() const {
  Rational D = det();
  if (D.is_zero()) throw InputError("singular matrix");
  return {d / D, -b / D, -c / D, a / D};
}

QX matrix_to_qX(const Mat2& g) { return {g.a + g.d, {g.c, g.d - g.a, -g.b}}; }

Mat2 qX_to_matrix(const Rational& q, const VPoint& X) {
  Rational half(1, 2);
  return {(q - X.X2) * half, -X.X3, X.X1, (q + X.X2) * half};
}

VPoint v_action(const Mat2& x, const VPoint& X) {
  Rational D = x.det();
  if (D.is_zero()) throw InputError("v_action: singular matrix");
  const Rational &p = x.a, &q = x.b, &r = x.c, &s = x.d;
  // u' = p u + q v, v' = r u + s v
  Rational c1 = X.X1 * p * p + X.X2 * p * r + X.X3 * r * r;
  Rational c2 = 2 * X.X1 * p * q + X.X2 * (p * s + q * r) + 2 * X.X3 * r * s;
  Rational c3 = X.X1 * q * q + X.X2 * q * s + X.X3 * s * s;
  return {c1 / D, c2 / D, c3 / D};
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::elliptic: return "elliptic";
    case Classification::split: return "split";
    case Classification::singular: return "singular";
  }
  return "?";
}

Classification classify(const Rational& q, const Rational& n) {
  if (n.is_zero()) throw InputError("classify: determinant must be nonzero");
  Rational disc = q * q - 4 * n;
  if (disc.is_zero()) return Classification::singular;
  return is_rational_square(disc) ? Classification::split : Classification::elliptic;
}

bool in_image_of_G(const Rational& q, const VPoint& X) {
  return !((q * q - X.discriminant()) / 4).is_zero();
}

}  // namespace gl2p
