#pragma once

// Exact arithmetic in Q, Z[i] and Z[omega].
//
// A QuadScalar is a + b*theta with rational a, b, where theta = i for the
// Gaussian center and theta = omega = (-1 + sqrt(-3))/2 for the Eisenstein
// center. Storing Eisenstein numbers in the {1, omega} basis keeps
// integrality a per-coordinate condition.

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cda/error.hpp"

namespace cda {

using BigInt = mpz_class;
using BigRat = mpq_class;

enum class CenterId { GaussQi, EisensteinQomega };

std::string center_name(CenterId c);            // "qi" / "qomega"
CenterId center_from_name(const std::string& s);
/// Principal complex value of the generator theta.
std::complex<double> theta_value(CenterId c);
/// (Im theta)^2 as an exact rational: 1 for Q(i), 3/4 for Q(omega).
BigRat imag_theta_squared(CenterId c);

class QuadScalar {
 public:
  QuadScalar() = default;
  explicit QuadScalar(CenterId c) : center_(c) {}
  QuadScalar(CenterId c, BigRat a, BigRat b = 0) : center_(c), a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }
  QuadScalar(CenterId c, long a, long b = 0) : center_(c), a_(a), b_(b) {}

  static QuadScalar zero(CenterId c) { return QuadScalar(c); }
  static QuadScalar one(CenterId c) { return QuadScalar(c, 1L, 0L); }
  static QuadScalar theta(CenterId c) { return QuadScalar(c, 0L, 1L); }

  CenterId center() const { return center_; }
  const BigRat& a() const { return a_; }
  const BigRat& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0; }
  bool is_integral() const;
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_unit() const;

  /// Field norm to Q; non-negative and zero only at zero.
  BigRat norm() const;
  QuadScalar conj() const;
  QuadScalar inverse() const;
  std::complex<double> to_complex() const;

  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);
  QuadScalar& operator*=(const BigRat& r);

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }
  friend QuadScalar operator*(QuadScalar x, const BigRat& r) { return x *= r; }
  friend QuadScalar operator*(const BigRat& r, QuadScalar x) { return x *= r; }
  QuadScalar operator-() const;

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    return x.center_ == y.center_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
  /// Lexicographic on (a, b); used only for deterministic ordering.
  friend bool operator<(const QuadScalar& x, const QuadScalar& y) {
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }

  std::string to_string() const;

 private:
  CenterId center_ = CenterId::GaussQi;
  BigRat a_ = 0;
  BigRat b_ = 0;
};

QuadScalar pow(const QuadScalar& x, unsigned e);

/// All units of O_F: {1, i, -1, -i} or the six powers of -omega.
std::vector<QuadScalar> units(CenterId c);

struct DivMod {
  QuadScalar q;
  QuadScalar r;
};

/// x = q*y + r with N(r) < N(y). The quotient rounds each coordinate of x/y
/// to the nearest integer, halves going toward -infinity.
DivMod euclid_divmod(const QuadScalar& x, const QuadScalar& y);

/// Remainder of euclid_divmod; a canonical representative of x mod y.
QuadScalar euclid_mod(const QuadScalar& x, const QuadScalar& y);

/// x / y, throwing NotDivisible if the quotient is not integral.
QuadScalar exact_div(const QuadScalar& x, const QuadScalar& y);
bool divides(const QuadScalar& d, const QuadScalar& x);

struct Bezout {
  QuadScalar g;  // canonical gcd
  QuadScalar s;
  QuadScalar t;  // s*x + t*y = g
};
Bezout xgcd(const QuadScalar& x, const QuadScalar& y);
QuadScalar gcd(const QuadScalar& x, const QuadScalar& y);

/// Largest e with p^e | x. Throws ZeroInput for x = 0.
unsigned valuation_at(const QuadScalar& x, const QuadScalar& p);
/// p-adic valuation extended to nonzero elements of F (may be negative).
long valuation_rational(const QuadScalar& x, const QuadScalar& p);

struct CanonicalForm {
  QuadScalar canon;
  QuadScalar unit;  // x = unit * canon
};
/// Canonical associate: argument in [0, pi/2) for Z[i], [0, pi/3) for Z[omega].
/// Also defined for nonzero non-integral elements.
CanonicalForm canonical_associate(const QuadScalar& x);
bool associates(const QuadScalar& x, const QuadScalar& y);

struct PrimePower {
  QuadScalar prime;
  unsigned exponent;
};

struct ScalarFactorization {
  QuadScalar unit;
  std::vector<PrimePower> factors;  // sorted by (norm, canonical coordinates)

  QuadScalar reassemble() const;
  std::string to_string() const;
};

inline constexpr std::uint64_t kDefaultTrialBound = 1000000;

ScalarFactorization factor_scalar(const QuadScalar& x, std::uint64_t trial_bound = kDefaultTrialBound);

/// Primes of O_F above the rational prime p, canonical and sorted.
std::vector<QuadScalar> primes_above(CenterId c, std::uint64_t p);

/// A fixed complete residue system for O_F / p, listed in a deterministic
/// order starting with 0 and 1.
std::vector<QuadScalar> residue_representatives(const QuadScalar& p);

/// Exact square root of a non-negative rational if it exists.
bool rational_sqrt(const BigRat& x, BigRat& root);

}  // namespace cda
