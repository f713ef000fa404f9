#pragma once

// Minimal discriminants of central division algebras over Q(i) and Q(omega),
// and the discriminant of a maximal order from its local indices.

#include <utility>
#include <vector>

#include "cda/measure.hpp"
#include "cda/scalars.hpp"

namespace cda {

struct LocalDatum {
  QuadScalar prime;
  int local_index = 1;
};

/// The two prime ideals of smallest norm: (1+i, 2+i) or (2+omega ~ sqrt(-3), 2).
std::pair<QuadScalar, QuadScalar> smallest_primes(CenterId c);

/// prod P^((m_P - 1) n^2 / m_P), canonicalized.
QuadScalar discriminant_from_local_data(const std::vector<LocalDatum>& data, int n);

QuadScalar minimal_discriminant(CenterId c, int n);
MeasureValue minimal_measure(CenterId c, int n);

}  // namespace cda
