#include "doctest.h"
#include "support.hpp"

using namespace cda;
using namespace cda::testing;

namespace {

// Left-regular representation over F on the ambient basis {u^i e^j}.
std::vector<std::vector<QuadScalar>> regular_rep(const AlgebraElem& a) {
  const AlgPtr& alg = a.algebra();
  int n = alg->degree();
  int N = n * n;
  std::vector<std::vector<QuadScalar>> m(N, std::vector<QuadScalar>(N, QuadScalar::zero(alg->center())));
  for (int col = 0; col < N; ++col) {
    std::vector<QuadScalar> e(N, QuadScalar::zero(alg->center()));
    e[col] = QuadScalar::one(alg->center());
    auto prod = alg_mul(a, AlgebraElem::from_ambient(alg, e)).ambient_coords();
    for (int r = 0; r < N; ++r) m[r][col] = prod[r];
  }
  return m;
}

}  // namespace

TEST_CASE("u squared is gamma") {
  AlgPtr gp = fixture("golden_plus").algebra;
  AlgebraElem u = AlgebraElem::u(gp);
  CHECK(alg_mul(u, u) == AlgebraElem::from_scalar(gp, gi(0, 1)));
  AlgPtr a4 = fixture("a_ell_4").algebra;
  CHECK(alg_pow(AlgebraElem::u(a4), 4) == AlgebraElem::from_scalar(a4, gi(2, 1)));
}

TEST_CASE("matrix_rep fixed cases") {
  AlgPtr gp = fixture("golden_plus").algebra;
  ExtPtr ext = gp->extension();
  MatrixOverE one = matrix_rep(AlgebraElem::one(gp));
  CHECK(one[0][0].is_one());
  CHECK(one[1][1].is_one());
  CHECK(one[0][1].is_zero());
  MatrixOverE mu = matrix_rep(AlgebraElem::u(gp));
  CHECK(mu[0][0].is_zero());
  CHECK(mu[0][1] == ext->scalar(gi(0, 1)));
  CHECK(mu[1][0].is_one());
  CHECK(mu[1][1].is_zero());
  CHECK(reduced_norm(AlgebraElem::u(gp)) == gi(0, -1));
  CHECK(reduced_norm(AlgebraElem::one(gp)) == gi(1));
  CHECK(reduced_trace(AlgebraElem::one(gp)) == gi(2));
}

TEST_CASE("from_matrix round trip and rejection") {
  for (const auto& name : algebra_fixture_names()) {
    AlgPtr alg = fixture(name).algebra;
    CHECK(from_matrix(alg, matrix_rep(AlgebraElem::one(alg))) == AlgebraElem::one(alg));
    for (int t = 0; t < 50; ++t) {
      AlgebraElem a = random_algebra(alg);
      REQUIRE(from_matrix(alg, matrix_rep(a)) == a);
    }
  }
  AlgPtr gp = fixture("golden_plus").algebra;
  MatrixOverE m = matrix_rep(AlgebraElem::one(gp));
  m[0][1] = gp->extension()->one();
  CHECK_THROWS_AS(from_matrix(gp, m), Error);
}

TEST_CASE("the element w of A_3") {
  AlgPtr a3 = fixture("a_ell_3").algebra;
  ExtPtr ext = a3->extension();
  FieldElem z = ext->generator();
  FieldElem sqrt2 = z * gi(1, -1);  // (1-i) zeta
  REQUIRE(field_mul(sqrt2, sqrt2) == ext->scalar(gi(2)));
  auto s = [&](const QuadScalar& c) { return ext->scalar(c); };
  QuadScalar q = gq(1, 4, 0, 1);
  MatrixOverE w(2, std::vector<FieldElem>(2));
  w[0][0] = (s(gi(0, 2)) - sqrt2 * gi(1, -1)) * q;
  w[0][1] = (s(gi(0, 2)) - sqrt2 * gi(1, 1)) * gi(2, 1) * q;
  w[1][0] = (s(gi(1)) + sqrt2 + s(gi(0, 1))) * gi(1, 1) * q;
  w[1][1] = (s(gi(0, 2)) + sqrt2 * gi(1, -1)) * q;
  AlgebraElem we = from_matrix(a3, w);
  AlgebraElem one = AlgebraElem::one(a3);
  AlgebraElem zeta = AlgebraElem::from_field(a3, z);
  AlgebraElem i_ = AlgebraElem::from_scalar(a3, gi(0, 1));
  CHECK(alg_mul(we, we) == -i_ + alg_mul(i_, we));
  CHECK(alg_mul(we, zeta) == -one + alg_pow(zeta, 3) - alg_mul(zeta, we));
}

TEST_CASE("matrix_rep is an injective ring homomorphism") {
  for (const auto& name : algebra_fixture_names()) {
    AlgPtr alg = fixture(name).algebra;
    for (int t = 0; t < 1000; ++t) {
      AlgebraElem a = random_algebra(alg), b = random_algebra(alg);
      REQUIRE(matrix_rep(alg_mul(a, b)) == matrix_mul(matrix_rep(a), matrix_rep(b)));
      REQUIRE(matrix_rep(a + b) == [&] {
        MatrixOverE ma = matrix_rep(a), mb = matrix_rep(b);
        for (size_t r = 0; r < ma.size(); ++r)
          for (size_t c = 0; c < ma.size(); ++c) ma[r][c] += mb[r][c];
        return ma;
      }());
      if (!a.is_zero()) {
        MatrixOverE ma = matrix_rep(a);
        bool nonzero = false;
        for (const auto& row : ma)
          for (const auto& v : row) nonzero = nonzero || !v.is_zero();
        REQUIRE(nonzero);
      }
    }
  }
}

TEST_CASE("reduced norm is multiplicative, reduced trace is linear and symmetric") {
  for (const auto& name : algebra_fixture_names()) {
    AlgPtr alg = fixture(name).algebra;
    for (int t = 0; t < 1000; ++t) {
      AlgebraElem a = random_algebra(alg), b = random_algebra(alg);
      REQUIRE(reduced_norm(alg_mul(a, b)) == reduced_norm(a) * reduced_norm(b));
      QuadScalar c = random_scalar(alg->center(), 5);
      REQUIRE(reduced_trace(a * c + b) == reduced_trace(a) * c + reduced_trace(b));
      REQUIRE(reduced_trace(alg_mul(a, b)) == reduced_trace(alg_mul(b, a)));
    }
  }
}

TEST_CASE("algebra norm equals reduced norm to the n") {
  for (const auto& name : algebra_fixture_names()) {
    AlgPtr alg = fixture(name).algebra;
    int trials = alg->degree() > 2 ? 200 : 1000;
    for (int t = 0; t < trials; ++t) {
      AlgebraElem a = random_algebra(alg, 2);
      REQUIRE(determinant(regular_rep(a)) == pow(reduced_norm(a), static_cast<unsigned>(alg->degree())));
    }
  }
}

TEST_CASE("numeric matrix and determinant consistency") {
  AlgPtr gp = fixture("golden_plus").algebra;
  ExtPtr ext = gp->extension();
  FieldElem lam = ext->generator();
  // M_2 = ((i + lambda) + u (1 + lambda)) / 2
  AlgebraElem m2(gp, {(ext->scalar(gi(0, 1)) + lam) * gq(1, 2, 0, 1), (ext->one() + lam) * gq(1, 2, 0, 1)});
  Eigen::MatrixXcd nm = numeric_matrix(m2);
  std::complex<double> l = embed_complex(lam);
  std::complex<double> I(0, 1);
  CHECK(std::abs(nm(0, 0) - (I + l) / 2.0) < 1e-12);
  CHECK(std::abs(nm(0, 1) - (I - I * l) / 2.0) < 1e-12);
  CHECK(std::abs(nm(1, 0) - (1.0 + l) / 2.0) < 1e-12);
  CHECK(std::abs(nm(1, 1) - (I - l) / 2.0) < 1e-12);
  CHECK(numeric_matrix(AlgebraElem::one(gp)).isApprox(Eigen::MatrixXcd::Identity(2, 2)));
  for (const auto& name : algebra_fixture_names()) {
    AlgPtr alg = fixture(name).algebra;
    for (int t = 0; t < 100; ++t) {
      AlgebraElem a = random_algebra(alg);
      std::complex<double> nr = reduced_norm(a).to_complex();
      REQUIRE(std::abs(numeric_matrix(a).determinant() - nr) <= 1e-9 * (1 + std::abs(nr)));
    }
  }
}

TEST_CASE("division sanity sampling") {
  auto rep = division_sanity_sample(fixture("golden_plus").algebra, 1000, 7);
  CHECK(rep.trials == 1000);
  CHECK(rep.zero_norm_elements.empty());
  AlgPtr split = Algebra::create("golden_gamma_one", fixture("golden").algebra->extension(), gi(1));
  auto rep2 = division_sanity_sample(split, 1000, 7, 1);
  CHECK(!rep2.zero_norm_elements.empty());
  for (const auto& z : rep2.zero_norm_elements) CHECK(reduced_norm(z).is_zero());
  CHECK_THROWS_AS(division_sanity_sample(split, 0, 7), Error);
}
