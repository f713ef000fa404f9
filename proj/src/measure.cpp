#include "cda/measure.hpp"

#include <cmath>

namespace cda {

std::string MeasureValue::to_string() const {
  if (is_rational) return exact.get_str();
  return "sqrt(" + squared.get_str() + ")";
}

MeasureValue measure_from_discriminant(const QuadScalar& d, int n) {
  MeasureValue m;
  BigRat factor = 1;
  BigRat t = imag_theta_squared(d.center());
  for (int k = 0; k < n * n; ++k) factor *= t;
  m.squared = d.norm() * factor;
  m.is_rational = rational_sqrt(m.squared, m.exact);
  m.value = m.is_rational ? m.exact.get_d() : std::sqrt(m.squared.get_d());
  return m;
}

}  // namespace cda
