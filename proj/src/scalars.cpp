#include "cda/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cda {

namespace {

bool is_int(const BigRat& r) { return r.get_den() == 1; }

void require_same(const QuadScalar& x, const QuadScalar& y) {
  if (x.center() != y.center()) throw Error(ErrorCode::CenterMismatch, "scalars from different centers");
}

void require_integral(const QuadScalar& x, const char* what) {
  if (!x.is_integral()) throw Error(ErrorCode::NonIntegralInput, std::string(what) + " = " + x.to_string());
}

// Nearest integer, halves toward -infinity.
BigInt round_half_down(const BigRat& t) {
  BigRat shifted = t - BigRat(1, 2);
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return q;
}

std::string rat_str(const BigRat& r) { return r.get_str(); }

}  // namespace

std::string center_name(CenterId c) { return c == CenterId::GaussQi ? "qi" : "qomega"; }

CenterId center_from_name(const std::string& s) {
  if (s == "qi" || s == "GaussQi") return CenterId::GaussQi;
  if (s == "qomega" || s == "EisensteinQomega") return CenterId::EisensteinQomega;
  throw Error(ErrorCode::InvalidArgument, "unknown center '" + s + "'");
}

std::complex<double> theta_value(CenterId c) {
  if (c == CenterId::GaussQi) return {0.0, 1.0};
  return {-0.5, std::sqrt(3.0) / 2.0};
}

BigRat imag_theta_squared(CenterId c) { return c == CenterId::GaussQi ? BigRat(1) : BigRat(3, 4); }

bool QuadScalar::is_integral() const { return is_int(a_) && is_int(b_); }

bool QuadScalar::is_unit() const { return is_integral() && norm() == 1; }

BigRat QuadScalar::norm() const {
  if (center_ == CenterId::GaussQi) return a_ * a_ + b_ * b_;
  return a_ * a_ - a_ * b_ + b_ * b_;
}

QuadScalar QuadScalar::conj() const {
  if (center_ == CenterId::GaussQi) return QuadScalar(center_, a_, -b_);
  return QuadScalar(center_, a_ - b_, -b_);
}

QuadScalar QuadScalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero scalar");
  QuadScalar c = conj();
  BigRat n = norm();
  return QuadScalar(center_, c.a_ / n, c.b_ / n);
}

std::complex<double> QuadScalar::to_complex() const {
  double a = a_.get_d();
  double b = b_.get_d();
  if (center_ == CenterId::GaussQi) return {a, b};
  return {a - 0.5 * b, b * std::sqrt(3.0) / 2.0};
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  require_same(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  require_same(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  require_same(*this, o);
  BigRat bd = b_ * o.b_;
  BigRat na = a_ * o.a_ - bd;
  BigRat nb = a_ * o.b_ + b_ * o.a_;
  if (center_ == CenterId::EisensteinQomega) nb -= bd;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  require_same(*this, o);
  return *this *= o.inverse();
}

QuadScalar& QuadScalar::operator*=(const BigRat& r) {
  a_ *= r;
  b_ *= r;
  return *this;
}

QuadScalar QuadScalar::operator-() const { return QuadScalar(center_, -a_, -b_); }

std::string QuadScalar::to_string() const {
  const char* sym = center_ == CenterId::GaussQi ? "i" : "w";
  auto coef = [&](const BigRat& b) -> std::string {
    if (b == 1) return sym;
    if (b == -1) return std::string("-") + sym;
    return rat_str(b) + sym;
  };
  if (sgn(b_) == 0) return rat_str(a_);
  if (sgn(a_) == 0) return coef(b_);
  std::string s = rat_str(a_);
  if (sgn(b_) > 0) s += "+";
  return s + coef(b_);
}

QuadScalar pow(const QuadScalar& x, unsigned e) {
  QuadScalar result = QuadScalar::one(x.center());
  QuadScalar base = x;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::vector<QuadScalar> units(CenterId c) {
  if (c == CenterId::GaussQi) {
    return {QuadScalar(c, 1L, 0L), QuadScalar(c, 0L, 1L), QuadScalar(c, -1L, 0L), QuadScalar(c, 0L, -1L)};
  }
  std::vector<QuadScalar> out;
  QuadScalar g(c, 0L, -1L);  // -omega, a primitive sixth root of unity
  QuadScalar cur = QuadScalar::one(c);
  for (int k = 0; k < 6; ++k) {
    out.push_back(cur);
    cur *= g;
  }
  return out;
}

DivMod euclid_divmod(const QuadScalar& x, const QuadScalar& y) {
  require_same(x, y);
  if (y.is_zero()) throw Error(ErrorCode::DivisionByZero, "euclid_divmod by zero");
  require_integral(x, "dividend");
  require_integral(y, "divisor");
  QuadScalar t = x * y.conj();
  BigRat n = y.norm();
  QuadScalar q(x.center(), BigRat(round_half_down(t.a() / n)), BigRat(round_half_down(t.b() / n)));
  QuadScalar r = x - q * y;
  return {q, r};
}

QuadScalar euclid_mod(const QuadScalar& x, const QuadScalar& y) { return euclid_divmod(x, y).r; }

QuadScalar exact_div(const QuadScalar& x, const QuadScalar& y) {
  if (y.is_zero()) throw Error(ErrorCode::DivisionByZero, "exact_div by zero");
  QuadScalar q = x / y;
  if (!q.is_integral()) throw Error(ErrorCode::NotDivisible, y.to_string() + " does not divide " + x.to_string());
  return q;
}

bool divides(const QuadScalar& d, const QuadScalar& x) {
  if (d.is_zero()) return x.is_zero();
  return (x / d).is_integral();
}

CanonicalForm canonical_associate(const QuadScalar& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "canonical_associate of zero");
  for (const QuadScalar& v : units(x.center())) {
    QuadScalar y = v * x;
    bool ok = x.center() == CenterId::GaussQi ? (sgn(y.a()) > 0 && sgn(y.b()) >= 0)
                                              : (y.a() > y.b() && sgn(y.b()) >= 0);
    if (ok) return {y, v.inverse()};
  }
  throw Error(ErrorCode::InvalidArgument, "no canonical associate for " + x.to_string());
}

bool associates(const QuadScalar& x, const QuadScalar& y) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  return canonical_associate(x).canon == canonical_associate(y).canon;
}

Bezout xgcd(const QuadScalar& x, const QuadScalar& y) {
  require_same(x, y);
  CenterId c = x.center();
  QuadScalar r0 = x, r1 = y;
  QuadScalar s0 = QuadScalar::one(c), s1 = QuadScalar::zero(c);
  QuadScalar t0 = QuadScalar::zero(c), t1 = QuadScalar::one(c);
  while (!r1.is_zero()) {
    DivMod qr = euclid_divmod(r0, r1);
    QuadScalar s2 = s0 - qr.q * s1;
    QuadScalar t2 = t0 - qr.q * t1;
    r0 = std::move(r1);
    r1 = std::move(qr.r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  CanonicalForm cf = canonical_associate(r0);
  QuadScalar uinv = cf.unit.inverse();
  return {cf.canon, s0 * uinv, t0 * uinv};
}

QuadScalar gcd(const QuadScalar& x, const QuadScalar& y) { return xgcd(x, y).g; }

unsigned valuation_at(const QuadScalar& x, const QuadScalar& p) {
  require_same(x, p);
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "valuation of zero is infinite");
  require_integral(x, "x");
  require_integral(p, "p");
  if (p.norm() <= 1) throw Error(ErrorCode::InvalidArgument, "valuation at a unit");
  unsigned e = 0;
  QuadScalar cur = x;
  for (;;) {
    QuadScalar q = cur / p;
    if (!q.is_integral()) break;
    cur = std::move(q);
    ++e;
  }
  return e;
}

long valuation_rational(const QuadScalar& x, const QuadScalar& p) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "valuation of zero is infinite");
  BigInt d;
  mpz_lcm(d.get_mpz_t(), x.a().get_den_mpz_t(), x.b().get_den_mpz_t());
  QuadScalar dd(x.center(), BigRat(d), BigRat(0));
  return static_cast<long>(valuation_at(x * dd, p)) - static_cast<long>(valuation_at(dd, p));
}

QuadScalar ScalarFactorization::reassemble() const {
  QuadScalar r = unit;
  for (const auto& f : factors) r *= pow(f.prime, f.exponent);
  return r;
}

std::string ScalarFactorization::to_string() const {
  std::ostringstream os;
  if (!unit.is_one() || factors.empty()) os << "(" << unit.to_string() << ")";
  for (const auto& f : factors) {
    os << "(" << f.prime.to_string() << ")";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  return os.str();
}

namespace {

// Solve N(a + b*theta) = p for a prime p that splits; returns one solution.
QuadScalar norm_solution(CenterId c, std::uint64_t p) {
  for (std::uint64_t a = 0; a * a <= 4 * p; ++a) {
    for (std::uint64_t b = 0; b <= a + 2 && b * b <= 4 * p; ++b) {
      QuadScalar z(c, static_cast<long>(a), static_cast<long>(b));
      if (z.norm() == BigRat(static_cast<unsigned long>(p))) return z;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "no element of norm " + std::to_string(p));
}

}  // namespace

std::vector<QuadScalar> primes_above(CenterId c, std::uint64_t p) {
  std::vector<QuadScalar> out;
  if (c == CenterId::GaussQi) {
    if (p == 2) {
      out.push_back(QuadScalar(c, 1L, 1L));
    } else if (p % 4 == 1) {
      QuadScalar z = norm_solution(c, p);
      out.push_back(canonical_associate(z).canon);
      out.push_back(canonical_associate(z.conj()).canon);
    } else {
      out.push_back(QuadScalar(c, static_cast<long>(p), 0L));
    }
  } else {
    if (p == 3) {
      out.push_back(canonical_associate(QuadScalar(c, 1L, -1L)).canon);
    } else if (p % 3 == 1) {
      QuadScalar z = norm_solution(c, p);
      out.push_back(canonical_associate(z).canon);
      out.push_back(canonical_associate(z.conj()).canon);
    } else {
      out.push_back(QuadScalar(c, static_cast<long>(p), 0L));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScalarFactorization factor_scalar(const QuadScalar& x, std::uint64_t trial_bound) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "factorization of zero");
  require_integral(x, "x");
  BigInt n = x.norm().get_num();
  std::vector<std::uint64_t> rational_primes;
  for (std::uint64_t p = 2; BigInt(static_cast<unsigned long>(p)) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (p > trial_bound) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      rational_primes.push_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= static_cast<unsigned long>(p);
    }
  }
  if (n > 1) {
    if (n > static_cast<unsigned long>(trial_bound)) {
      throw Error(ErrorCode::FactorBudgetExceeded, "norm has a prime factor above " + std::to_string(trial_bound));
    }
    rational_primes.push_back(n.get_ui());
  }
  ScalarFactorization out;
  QuadScalar rest = x;
  for (std::uint64_t p : rational_primes) {
    for (const QuadScalar& pi : primes_above(x.center(), p)) {
      unsigned e = valuation_at(rest, pi);
      if (e == 0) continue;
      rest /= pow(pi, e);
      out.factors.push_back({pi, e});
    }
  }
  if (!rest.is_unit()) throw Error(ErrorCode::InvalidArgument, "factorization left non-unit " + rest.to_string());
  out.unit = rest;
  std::sort(out.factors.begin(), out.factors.end(), [](const PrimePower& l, const PrimePower& r) {
    BigRat nl = l.prime.norm(), nr = r.prime.norm();
    if (nl != nr) return nl < nr;
    return l.prime < r.prime;
  });
  return out;
}

std::vector<QuadScalar> residue_representatives(const QuadScalar& p) {
  require_integral(p, "p");
  BigInt q = p.norm().get_num();
  if (q > 1000) throw Error(ErrorCode::ResidueFieldTooLarge, "residue field of size " + q.get_str());
  CenterId c = p.center();
  std::vector<QuadScalar> out;
  long qq = q.get_si();
  if (mpz_probab_prime_p(q.get_mpz_t(), 30)) {
    for (long a = 0; a < qq; ++a) out.push_back(QuadScalar(c, a, 0L));
    return out;
  }
  BigRat root;
  if (!rational_sqrt(BigRat(q), root)) throw Error(ErrorCode::InvalidArgument, p.to_string() + " is not prime");
  long r = root.get_num().get_si();
  for (long b = 0; b < r; ++b)
    for (long a = 0; a < r; ++a) out.push_back(QuadScalar(c, a, b));
  return out;
}

bool rational_sqrt(const BigRat& x, BigRat& root) {
  if (sgn(x) < 0) return false;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return false;
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  root = BigRat(n, d);
  root.canonicalize();
  return true;
}

}  // namespace cda
