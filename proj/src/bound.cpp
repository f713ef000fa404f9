#include "cda/bound.hpp"

#include <numeric>

namespace cda {

std::pair<QuadScalar, QuadScalar> smallest_primes(CenterId c) {
  if (c == CenterId::GaussQi) return {QuadScalar(c, 1L, 1L), QuadScalar(c, 2L, 1L)};
  return {canonical_associate(QuadScalar(c, 1L, -1L)).canon, QuadScalar(c, 2L, 0L)};
}

QuadScalar discriminant_from_local_data(const std::vector<LocalDatum>& data, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  long l = 1;
  for (const auto& d : data) {
    if (d.local_index < 1 || n % d.local_index != 0)
      throw Error(ErrorCode::InconsistentIndices,
                  "local index " + std::to_string(d.local_index) + " does not divide " + std::to_string(n));
    l = std::lcm(l, static_cast<long>(d.local_index));
  }
  if (l != n) throw Error(ErrorCode::InconsistentIndices, "lcm of local indices is " + std::to_string(l));
  CenterId c = data.empty() ? CenterId::GaussQi : data.front().prime.center();
  QuadScalar out = QuadScalar::one(c);
  for (const auto& d : data) {
    unsigned e = static_cast<unsigned>((d.local_index - 1) * n * n / d.local_index);
    out *= pow(d.prime, e);
  }
  return canonical_associate(out).canon;
}

QuadScalar minimal_discriminant(CenterId c, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  auto [p1, p2] = smallest_primes(c);
  return canonical_associate(pow(p1 * p2, static_cast<unsigned>(n * (n - 1)))).canon;
}

MeasureValue minimal_measure(CenterId c, int n) { return measure_from_discriminant(minimal_discriminant(c, n), n); }

}  // namespace cda
