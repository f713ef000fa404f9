#pragma once

// Hermite normal form over the Euclidean rings Z[i] and Z[omega].
//
// Row-style: the output is upper echelon, each pivot is a canonical associate,
// and entries above a pivot are canonical residues modulo it. The form is
// unique for a given row span.

#include <optional>
#include <vector>

#include "cda/scalars.hpp"

namespace cda {

using ScalarMatrix = std::vector<std::vector<QuadScalar>>;

struct Hnf {
  ScalarMatrix rows;
  std::vector<int> pivot_cols;
};

/// HNF of the O_F-span of `rows`. When `modulus` is given it must satisfy
/// modulus * O_F^m contained in the span; the rows of R*I are then added
/// implicitly and intermediate entries are kept reduced modulo it.
Hnf hnf_over_center(const ScalarMatrix& rows, const std::optional<QuadScalar>& modulus = std::nullopt);

/// Determinant of a square integral matrix by Bareiss elimination.
QuadScalar integral_determinant(ScalarMatrix m);

/// Solves v = sum c_r H_r against an echelon form. With `integral` set the
/// solve fails as soon as a coefficient leaves O_F.
std::optional<std::vector<QuadScalar>> solve_echelon(const Hnf& h, std::vector<QuadScalar> v, bool integral);

}  // namespace cda
