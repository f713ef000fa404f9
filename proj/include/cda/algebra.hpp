#pragma once

// Cyclic algebras A = (E/F, sigma, gamma) = E + uE + ... + u^(n-1)E with
// x*u = u*sigma(x) and u^n = gamma. Elements are stored by their right
// coefficients: a = x_0 + u x_1 + ... + u^(n-1) x_(n-1).

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cda/field.hpp"

namespace cda {

class Algebra;
using AlgPtr = std::shared_ptr<const Algebra>;

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static AlgPtr create(std::string name, ExtPtr ext, QuadScalar gamma);

  const std::string& name() const { return name_; }
  const ExtPtr& extension() const { return ext_; }
  const QuadScalar& gamma() const { return gamma_; }
  int degree() const { return ext_->degree(); }
  CenterId center() const { return ext_->center(); }

 private:
  Algebra() = default;
  std::string name_;
  ExtPtr ext_;
  QuadScalar gamma_;
};

using MatrixOverE = std::vector<std::vector<FieldElem>>;

class AlgebraElem {
 public:
  AlgebraElem() = default;
  AlgebraElem(AlgPtr alg, std::vector<FieldElem> coords);

  static AlgebraElem zero(const AlgPtr& alg);
  static AlgebraElem one(const AlgPtr& alg);
  /// The generator u.
  static AlgebraElem u(const AlgPtr& alg);
  /// u^k for 0 <= k < n.
  static AlgebraElem u_power(const AlgPtr& alg, int k);
  /// Embeds x in E as x*u^0.
  static AlgebraElem from_field(const AlgPtr& alg, const FieldElem& x);
  static AlgebraElem from_scalar(const AlgPtr& alg, const QuadScalar& c);
  /// sum_k c_k u^k with the coefficients written on the left of u^k.
  static AlgebraElem from_left_coeffs(const AlgPtr& alg, const std::vector<FieldElem>& c);

  const AlgPtr& algebra() const { return alg_; }
  const std::vector<FieldElem>& coords() const { return x_; }
  const FieldElem& coord(int i) const { return x_[i]; }
  int degree() const { return static_cast<int>(x_.size()); }

  bool is_zero() const;
  /// Coefficient of e^j in x_i; the ambient coordinate i*n + j.
  const QuadScalar& ambient(int i, int j) const { return x_[i].coeff(j); }
  std::vector<QuadScalar> ambient_coords() const;
  static AlgebraElem from_ambient(const AlgPtr& alg, const std::vector<QuadScalar>& v);

  AlgebraElem& operator+=(const AlgebraElem& o);
  AlgebraElem& operator-=(const AlgebraElem& o);
  AlgebraElem& operator*=(const QuadScalar& c);

  friend AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b) { return a += b; }
  friend AlgebraElem operator-(AlgebraElem a, const AlgebraElem& b) { return a -= b; }
  friend AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b);
  friend AlgebraElem operator*(AlgebraElem a, const QuadScalar& c) { return a *= c; }
  friend AlgebraElem operator*(const QuadScalar& c, AlgebraElem a) { return a *= c; }
  AlgebraElem operator-() const;

  friend bool operator==(const AlgebraElem& a, const AlgebraElem& b) { return a.x_ == b.x_; }
  friend bool operator!=(const AlgebraElem& a, const AlgebraElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  AlgPtr alg_;
  std::vector<FieldElem> x_;
};

AlgebraElem alg_mul(const AlgebraElem& a, const AlgebraElem& b);
AlgebraElem alg_pow(const AlgebraElem& a, unsigned e);
/// Left multiplication by an element of E.
AlgebraElem left_mul(const FieldElem& c, const AlgebraElem& a);

/// Entry (r, c) = sigma^c(x_{(r-c) mod n}), times gamma above the diagonal.
MatrixOverE matrix_rep(const AlgebraElem& a);
MatrixOverE matrix_mul(const MatrixOverE& a, const MatrixOverE& b);
AlgebraElem from_matrix(const AlgPtr& alg, const MatrixOverE& m);

/// Determinant over E by fraction-free elimination.
FieldElem determinant_over_e(MatrixOverE m);
QuadScalar reduced_norm(const AlgebraElem& a);
QuadScalar reduced_trace(const AlgebraElem& a);

Eigen::MatrixXcd numeric_matrix(const AlgebraElem& a);

struct DivisionSanityReport {
  std::uint64_t trials = 0;
  std::vector<AlgebraElem> zero_norm_elements;
};

/// Samples random nonzero elements with small coefficients (power basis
/// coefficients a+b*theta, |a|,|b| <= coeff_bound) and reports those of
/// reduced norm zero. Never certifies division.
DivisionSanityReport division_sanity_sample(const AlgPtr& alg, std::uint64_t trials, std::uint64_t seed,
                                            int coeff_bound = 2);

}  // namespace cda
