#pragma once

// O_F-lattices in a cyclic algebra, stored as (1/D) * H where H is the HNF of
// integral coordinate rows with respect to the ambient basis {u^i e^j}.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cda/algebra.hpp"
#include "cda/hnf.hpp"
#include "cda/measure.hpp"

namespace cda {

class OFLattice {
 public:
  OFLattice() = default;

  /// O_F-span of `gens`. If the generators are independent over F they are
  /// kept as the basis; otherwise the HNF rows become the basis. A known
  /// full-rank sublattice speeds up the HNF by supplying a modulus.
  static OFLattice span(const AlgPtr& alg, const std::vector<AlgebraElem>& gens,
                        const OFLattice* known_sublattice = nullptr);
  static OFLattice from_hnf_rows(const AlgPtr& alg, const BigInt& denominator, const ScalarMatrix& rows);

  const AlgPtr& algebra() const { return alg_; }
  const std::vector<AlgebraElem>& basis() const { return basis_; }
  int rank() const { return static_cast<int>(hnf_.rows.size()); }
  int ambient_dim() const { return alg_->degree() * alg_->degree(); }
  bool full_rank() const { return rank() == ambient_dim(); }
  const BigInt& denominator() const { return den_; }
  const Hnf& hnf() const { return hnf_; }
  std::vector<AlgebraElem> hnf_basis() const;

  /// Fast membership test through the HNF.
  bool contains(const AlgebraElem& x) const;
  bool contains(const OFLattice& sub) const;

  /// Product of the HNF pivots divided by D^(n^2): det of a basis up to units.
  QuadScalar basis_determinant() const;

  friend bool operator==(const OFLattice& a, const OFLattice& b);
  friend bool operator!=(const OFLattice& a, const OFLattice& b) { return !(a == b); }

 private:
  AlgPtr alg_;
  std::vector<AlgebraElem> basis_;
  BigInt den_ = 1;
  Hnf hnf_;
};

/// Lattices of the form {c * g : c in ring_basis, g in gens} with left
/// multiplication, generators outermost.
std::vector<AlgebraElem> expand_left(const std::vector<AlgebraElem>& gens, const std::vector<FieldElem>& ring_basis);

/// O_E + u O_E + ... + u^(n-1) O_E with basis {u^i b_j}, b_j outermost.
OFLattice natural_order(const AlgPtr& alg, const std::vector<FieldElem>& oe_basis);

struct Membership {
  bool member = false;
  std::vector<QuadScalar> coefficients;  // with respect to L.basis(), over F
};

Membership lattice_membership(const AlgebraElem& x, const OFLattice& l);

struct DiscriminantValue {
  QuadScalar canon;
  bool unit_ambiguity = true;
  std::optional<ScalarFactorization> factorization;
  BigRat norm;  // N(canon); |d| = sqrt(norm)
  int degree = 1;

  MeasureValue measure() const { return measure_from_discriminant(canon, degree); }
  std::string to_string() const;
};

DiscriminantValue make_discriminant(const QuadScalar& d, int degree);

/// det(trd(x_i x_j)) over the ambient monomials u^i e^j.
QuadScalar ambient_trace_determinant(const AlgPtr& alg);
/// Discriminant through the HNF: det(B)^2 det(T).
DiscriminantValue discriminant(const OFLattice& l);
/// The reduced-trace determinant evaluated directly on an explicit basis.
QuadScalar discriminant_of_basis(const std::vector<AlgebraElem>& basis);

/// d(E/F)^n gamma^(n(n-1)), canonicalized.
QuadScalar natural_discriminant_formula(const QuadScalar& d_ef, const QuadScalar& gamma, int n);
/// (1+i)^(2n(ell-2)) with n = 2^(ell-2).
QuadScalar cyclotomic_relative_discriminant(int ell);

struct GramReal {
  Eigen::MatrixXd gram;
  double measure = 0.0;
};

/// Z-basis {b, theta*b} of L flattened through the complex matrix embedding.
GramReal gram_and_measure_numeric(const OFLattice& l);

/// Z-index [Gamma : Lambda] = sqrt(N(d_sub) / N(d_super)).
BigInt index_from_discriminants(const DiscriminantValue& d_sub, const DiscriminantValue& d_super);
/// O_F-module index: the canonical generator c with d_sub = c^2 d_super up to units.
QuadScalar module_index_from_discriminants(const DiscriminantValue& d_sub, const DiscriminantValue& d_super);

struct OrderCheck {
  bool is_order = false;
  std::optional<AlgebraElem> witness;
  std::string reason;
};

OrderCheck is_order(const OFLattice& l);

}  // namespace cda
