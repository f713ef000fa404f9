#pragma once

#include <string>

#include "cda/scalars.hpp"

namespace cda {

/// Fundamental-parallelotope measure. The square is always an exact
/// rational; the measure itself is exact when that square is a perfect square.
struct MeasureValue {
  BigRat squared;
  bool is_rational = false;
  BigRat exact;  // valid when is_rational
  double value = 0.0;

  std::string to_string() const;
};

/// |d| over Z[i], (sqrt(3)/2)^(n^2) |d| over Z[omega].
MeasureValue measure_from_discriminant(const QuadScalar& d, int n);

}  // namespace cda
