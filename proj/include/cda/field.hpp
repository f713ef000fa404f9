#pragma once

// Cyclic extensions E/F of degree n presented as F[e]/(f(e)), together with
// the generator sigma of Gal(E/F) given by the image of e.

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "cda/scalars.hpp"

namespace cda {

class FieldElem;
class FieldExtension;
using ExtPtr = std::shared_ptr<const FieldExtension>;

using Poly = std::vector<QuadScalar>;  // low degree first

class FieldExtension : public std::enable_shared_from_this<FieldExtension> {
 public:
  /// minpoly: n+1 coefficients, low to high, monic. sigma_image: n coefficients
  /// of sigma(e) in the power basis. Validates the extension (see validate).
  static ExtPtr create(std::string name, CenterId center, Poly minpoly, Poly sigma_image,
                       std::complex<double> embedding_root);

  const std::string& name() const { return name_; }
  CenterId center() const { return center_; }
  int degree() const { return n_; }
  const Poly& minpoly() const { return minpoly_; }
  const Poly& sigma_image() const { return sigma_image_; }
  std::complex<double> embedding_root() const { return root_; }

  /// sigma^k(e^j) as power-basis coefficients, 0 <= k, j < n.
  const Poly& sigma_power(int k, int j) const { return sigma_table_[k][j]; }
  /// e^(n+t) reduced, 0 <= t <= n-2.
  const Poly& reduction(int t) const { return reduce_table_[t]; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem generator() const;
  FieldElem scalar(const QuadScalar& c) const;
  FieldElem from_coeffs(Poly coeffs) const;

 private:
  FieldExtension() = default;
  void build_tables();
  void validate() const;

  std::string name_;
  CenterId center_ = CenterId::GaussQi;
  int n_ = 1;
  Poly minpoly_;
  Poly sigma_image_;
  std::complex<double> root_;
  std::vector<std::vector<Poly>> sigma_table_;
  std::vector<Poly> reduce_table_;
};

class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(ExtPtr ext, Poly coeffs);

  const ExtPtr& extension() const { return ext_; }
  const Poly& coeffs() const { return c_; }
  const QuadScalar& coeff(int j) const { return c_[j]; }
  int degree() const { return ext_->degree(); }
  CenterId center() const { return ext_->center(); }

  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in F (all higher coefficients vanish).
  bool in_base() const;
  /// Power-basis coefficients all integral.
  bool coeffs_integral() const;

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator*=(const QuadScalar& c);

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator*(FieldElem x, const QuadScalar& c) { return x *= c; }
  friend FieldElem operator*(const QuadScalar& c, FieldElem x) { return x *= c; }
  FieldElem operator-() const;

  friend bool operator==(const FieldElem& x, const FieldElem& y) { return x.c_ == y.c_; }
  friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

  std::string to_string() const;

 private:
  ExtPtr ext_;
  Poly c_;
};

FieldElem field_mul(const FieldElem& x, const FieldElem& y);
FieldElem field_inv(const FieldElem& x);
FieldElem field_pow(const FieldElem& x, unsigned e);
FieldElem apply_sigma(const FieldElem& x, int k);
QuadScalar rel_trace(const FieldElem& x);
QuadScalar rel_norm(const FieldElem& x);
std::complex<double> embed_complex(const FieldElem& x);

/// Matrix of multiplication by x on the power basis (column j = x*e^j).
std::vector<std::vector<QuadScalar>> multiplication_matrix(const FieldElem& x);

/// Determinant over F by fraction-free elimination.
QuadScalar determinant(std::vector<std::vector<QuadScalar>> m);

}  // namespace cda
