#pragma once

// Named algebras and data-only records used throughout the tools and tests.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cda/algebra.hpp"
#include "cda/bound.hpp"
#include "cda/json_io.hpp"

namespace cda {

struct Fixture {
  std::string name;
  bool data_only = false;
  CenterId center = CenterId::GaussQi;
  int degree = 1;
  QuadScalar gamma;

  // Algebra fixtures.
  AlgPtr algebra;
  std::vector<FieldElem> oe_basis;
  /// Primes at which the completed algebra is declared to be a division
  /// algebra; the norm-valuation radical is only valid there.
  std::vector<QuadScalar> division_primes;
  /// l for the family x^(2^(l-2)) - i with sigma(zeta) = zeta^5; 0 otherwise.
  int cyclotomic_ell = 0;

  // Data-only fixtures.
  ScalarFactorization relative_discriminant;
  std::vector<LocalDatum> local_data;

  QuadScalar relative_discriminant_value() const { return relative_discriminant.reassemble(); }
};

class FixtureRegistry {
 public:
  static FixtureRegistry builtin();
  static FixtureRegistry from_file(const std::string& path);
  static FixtureRegistry from_json(const json& j);

  const Fixture& get(const std::string& name) const;
  bool contains(const std::string& name) const { return fixtures_.count(name) != 0; }
  std::vector<std::string> names() const { return order_; }
  int version() const { return version_; }

 private:
  int version_ = 0;
  std::map<std::string, Fixture> fixtures_;
  std::vector<std::string> order_;
};

/// Refines an approximate root of a polynomial over F by Newton iteration.
std::complex<double> refine_root(const Poly& poly, std::complex<double> hint);

}  // namespace cda
