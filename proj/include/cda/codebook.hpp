#pragma once

// Finite codes carved from orders and their principal ideals: unit minimum
// determinant scaling, lowest-energy selection from an additive coset and
// exact minimum-determinant verification.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cda/fixtures.hpp"
#include "cda/lattice.hpp"

namespace cda {

/// Basis {x g_i}.
OFLattice principal_right_ideal(const OFLattice& order, const AlgebraElem& x);
/// Basis {g_i x}.
OFLattice principal_left_ideal(const OFLattice& order, const AlgebraElem& x);

struct MinDetScale {
  double rho = 1.0;
  QuadScalar nr_x;
  /// rho^(2n) = 1 / N(nr(x)), exact.
  BigRat rho_pow_2n;
};

/// rho = |nr(x)|^(-1/n).
MinDetScale unit_mindet_scale(const OFLattice& ideal, const AlgebraElem& x);

struct CodebookSpec {
  OFLattice lattice;
  /// F-rational coordinates with respect to lattice.basis().
  std::vector<QuadScalar> coset_offset;
  int size = 256;
  int enum_box = 6;
  double target_energy = 0.0;  // 0 selects n^2
  MinDetScale scale;
  std::string label;
};

/// Offset assigning c to every coordinate.
std::vector<QuadScalar> uniform_offset(const OFLattice& l, const QuadScalar& c);
/// Coordinates of an element with respect to the lattice basis.
std::vector<QuadScalar> offset_coordinates(const OFLattice& l, const AlgebraElem& offset);

struct CodebookEntry {
  /// Coordinates over F with respect to the lattice basis (integral part plus offset).
  std::vector<QuadScalar> coords;
  AlgebraElem element;
  Eigen::MatrixXcd matrix;  // rho * normalization * numeric_matrix(element)
  double energy = 0.0;      // of `matrix`
};

struct ExactMinDet {
  bool infinite = false;
  /// (min |det|)^2 of the rho-scaled differences, before energy normalization.
  BigRat squared;
  double value = 0.0;
};

struct Codebook {
  std::string label;
  AlgPtr algebra;
  std::vector<CodebookEntry> entries;
  MinDetScale scale;
  double normalization = 1.0;
  double mean_energy_before_normalization = 0.0;
  std::vector<QuadScalar> coset_offset;
  std::vector<AlgebraElem> lattice_basis;
  std::optional<ExactMinDet> min_det;

  int size() const { return static_cast<int>(entries.size()); }
  double bits_per_channel_use() const;
  int degree() const { return algebra->degree(); }
  /// Minimum determinant of the stored (normalized) matrices.
  double normalized_min_det() const;
};

/// Exact real Gram matrix of the rho-scaled Z-basis {b_j, theta b_j}.
Eigen::MatrixXd coset_gram(const OFLattice& l, double rho);

Codebook select_lowest_energy(const CodebookSpec& spec);

ExactMinDet min_determinant_exact(const Codebook& cb);

/// Searches the 4^(n^2) offsets with coordinates in {0, 1/2} + {0, 1/2} theta
/// for the smallest mean energy of the `size` lowest points.
std::vector<QuadScalar> optimize_coset(const OFLattice& l, const MinDetScale& scale, int size, int enum_box = 6);

/// M_1, ..., M_4 of the Golden+ algebra as displayed; M_4 = (1-i)M_2 - iM_1.
std::vector<AlgebraElem> golden_plus_displayed(const AlgPtr& alg);
/// diag((1-lambda)^3, (1+lambda)^3).
AlgebraElem golden_plus_multiplier(const AlgPtr& alg);

struct CodeLattice {
  OFLattice order;
  AlgebraElem generator;
  OFLattice ideal;
  MinDetScale scale;
};

/// The ideal x * span{M_1, M_2, M_3, u}.
CodeLattice golden_plus_code_lattice(const FixtureRegistry& reg);
/// The ideal O alpha of the natural Golden order, alpha = 1 + i - i theta.
CodeLattice golden_code_lattice(const FixtureRegistry& reg);

enum class GoldenMode { Pam, CosetOptimized };
GoldenMode parse_golden_mode(const std::string& s);

int codebook_size_for_rate(int bits_per_cu, int n = 2);

/// Golden code at 4, 5 or 6 bpcu. Pam draws real coordinates from
/// {+-1/2} or {+-1/2, +-3/2}; CosetOptimized uses the best half-integral coset.
Codebook golden_reference(const FixtureRegistry& reg, int bits_per_cu, GoldenMode mode);
/// Golden+ ideal, default offset all (1+i)/2 unless given.
Codebook golden_plus_codebook(const FixtureRegistry& reg, int bits_per_cu,
                              const std::optional<std::vector<QuadScalar>>& offset = std::nullopt);

json codebook_to_json(const Codebook& cb);
/// Flat little-endian f64 dump: N, n, then re/im row-major per matrix.
void write_codebook_binary(const Codebook& cb, const std::string& path);

struct NumericCodebook {
  std::string label;
  int n = 2;
  std::vector<Eigen::MatrixXcd> matrices;
  double bits_per_channel_use() const;
};

NumericCodebook numeric_codebook(const Codebook& cb);
NumericCodebook read_codebook_binary(const std::string& path, const std::string& label = "");
NumericCodebook numeric_codebook_from_json(const json& j);

}  // namespace cda
