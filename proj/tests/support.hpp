#pragma once

#include <random>

#include "cda/scalars.hpp"

namespace cda::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed1234abcdULL);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline QuadScalar gi(long a, long b = 0) { return QuadScalar(CenterId::GaussQi, a, b); }
inline QuadScalar ew(long a, long b = 0) { return QuadScalar(CenterId::EisensteinQomega, a, b); }

inline QuadScalar random_scalar(CenterId c, long bound = 20) { return QuadScalar(c, uniform(-bound, bound), uniform(-bound, bound)); }

inline QuadScalar random_nonzero(CenterId c, long bound = 20) {
  for (;;) {
    QuadScalar x = random_scalar(c, bound);
    if (!x.is_zero()) return x;
  }
}

inline QuadScalar random_rational_scalar(CenterId c, long bound = 6) {
  return QuadScalar(c, BigRat(uniform(-bound, bound), uniform(1, 4)), BigRat(uniform(-bound, bound), uniform(1, 4)));
}

}  // namespace cda::testing

#include "cda/fixtures.hpp"

namespace cda::testing {

inline const Fixture& fixture(const std::string& name) {
  static FixtureRegistry reg = FixtureRegistry::builtin();
  return reg.get(name);
}

inline FieldElem random_field(const ExtPtr& ext, long bound = 5) {
  Poly c;
  for (int j = 0; j < ext->degree(); ++j) c.push_back(random_scalar(ext->center(), bound));
  return ext->from_coeffs(c);
}

inline FieldElem random_field_rational(const ExtPtr& ext) {
  Poly c;
  for (int j = 0; j < ext->degree(); ++j) c.push_back(random_rational_scalar(ext->center()));
  return ext->from_coeffs(c);
}

inline FieldElem random_nonzero_field(const ExtPtr& ext, long bound = 5) {
  for (;;) {
    FieldElem x = random_field(ext, bound);
    if (!x.is_zero()) return x;
  }
}

inline AlgebraElem random_algebra(const AlgPtr& alg, long bound = 3) {
  std::vector<FieldElem> xs;
  for (int i = 0; i < alg->degree(); ++i) xs.push_back(random_field(alg->extension(), bound));
  return AlgebraElem(alg, xs);
}

inline const std::vector<std::string>& algebra_fixture_names() {
  static const std::vector<std::string> names{"golden", "golden_plus", "a_ell_3", "a_ell_4", "eisenstein_2x2"};
  return names;
}

}  // namespace cda::testing

#include "cda/lattice.hpp"

namespace cda::testing {

inline QuadScalar gq(long an, long ad, long bn, long bd) {
  return QuadScalar(CenterId::GaussQi, BigRat(an, ad), BigRat(bn, bd));
}

// The element w of A_3 with w^2 = -i + i w and w zeta = -1 + zeta^3 - zeta w.
inline AlgebraElem a3_w() {
  AlgPtr a3 = fixture("a_ell_3").algebra;
  ExtPtr ext = a3->extension();
  FieldElem sqrt2 = ext->generator() * gi(1, -1);
  auto s = [&](const QuadScalar& c) { return ext->scalar(c); };
  QuadScalar q = gq(1, 4, 0, 1);
  MatrixOverE w(2, std::vector<FieldElem>(2));
  w[0][0] = (s(gi(0, 2)) - sqrt2 * gi(1, -1)) * q;
  w[0][1] = (s(gi(0, 2)) - sqrt2 * gi(1, 1)) * gi(2, 1) * q;
  w[1][0] = (s(gi(1)) + sqrt2 + s(gi(0, 1))) * gi(1, 1) * q;
  w[1][1] = (s(gi(0, 2)) + sqrt2 * gi(1, -1)) * q;
  return from_matrix(a3, w);
}

// Z[i]-basis M_1..M_4 of the maximal order of GA+ from its matrix display.
inline std::vector<AlgebraElem> ga_plus_m_basis() {
  AlgPtr gp = fixture("golden_plus").algebra;
  ExtPtr ext = gp->extension();
  FieldElem l = ext->generator();
  auto s = [&](const QuadScalar& c) { return ext->scalar(c); };
  QuadScalar h = gq(1, 2, 0, 1);
  auto mat = [&](FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
    MatrixOverE m(2, std::vector<FieldElem>(2));
    m[0][0] = a;
    m[0][1] = b;
    m[1][0] = c;
    m[1][1] = d;
    return from_matrix(gp, m);
  };
  std::vector<AlgebraElem> out;
  out.push_back(AlgebraElem::one(gp));
  out.push_back(mat((s(gi(0, 1)) + l) * h, (s(gi(0, 1)) - l * gi(0, 1)) * h, (s(gi(1)) + l) * h,
                    (s(gi(0, 1)) - l) * h));
  out.push_back(mat(l * gi(1, -1) * h, s(gi(1, 1)) * h, s(gi(1, -1)) * h, l * gi(-1, 1) * h));
  out.push_back(mat((s(gi(1)) + l) * gi(1, -1) * h, (s(gi(1)) - l) * gi(1, 1) * h, (s(gi(1)) + l) * gi(1, -1) * h,
                    (s(gi(1)) - l) * gi(1, -1) * h));
  return out;
}

inline QuadScalar random_unit(CenterId c) {
  auto us = units(c);
  return us[static_cast<size_t>(uniform(0, static_cast<long>(us.size()) - 1))];
}

// Random unimodular change of basis built from elementary operations.
inline std::vector<AlgebraElem> random_unimodular(std::vector<AlgebraElem> b, int ops = 0) {
  long k = static_cast<long>(b.size());
  if (k < 2) return b;
  CenterId c = b[0].algebra()->center();
  if (ops == 0) ops = 3 * static_cast<int>(k);
  for (int t = 0; t < ops; ++t) {
    long i = uniform(0, k - 1), j = uniform(0, k - 2);
    if (j >= i) ++j;
    switch (uniform(0, 3)) {
      case 0:
        std::swap(b[static_cast<size_t>(i)], b[static_cast<size_t>(j)]);
        break;
      case 1:
        b[static_cast<size_t>(i)] *= random_unit(c);
        break;
      default:
        b[static_cast<size_t>(i)] += random_scalar(c, 2) * b[static_cast<size_t>(j)];
    }
  }
  return b;
}


}  // namespace cda::testing
