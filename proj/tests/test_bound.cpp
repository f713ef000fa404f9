#include "doctest.h"
#include "support.hpp"

#include "cda/maxorder.hpp"

using namespace cda;
using namespace cda::testing;

namespace {

BigInt two_pow(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

QuadScalar natural_from_data(const Fixture& f) {
  return natural_discriminant_formula(f.relative_discriminant_value(), f.gamma, f.degree);
}

QuadScalar maximal_from_data(const Fixture& f) { return discriminant_from_local_data(f.local_data, f.degree); }

}  // namespace

TEST_CASE("smallest primes") {
  auto [a, b] = smallest_primes(CenterId::GaussQi);
  CHECK(a.norm() == 2);
  CHECK(b.norm() == 5);
  CHECK(b == gi(2, 1));
  auto [c, d] = smallest_primes(CenterId::EisensteinQomega);
  CHECK(c.norm() == 3);
  CHECK(d.norm() == 4);
  CHECK(associates(c * c, ew(-3)));
  for (CenterId z : {CenterId::GaussQi, CenterId::EisensteinQomega}) {
    auto [p, q] = smallest_primes(z);
    CHECK(p != q);
    CHECK(canonical_associate(p).canon == p);
    CHECK(canonical_associate(q).canon == q);
  }
}

TEST_CASE("discriminant from local data") {
  QuadScalar p = gi(1, 1), q = gi(2, 1);
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    unsigned e = static_cast<unsigned>(n * (n - 1));
    CHECK(associates(discriminant_from_local_data({{p, n}, {q, n}}, n), pow(p * q, e)));
    CHECK(associates(discriminant_from_local_data({{q, n}}, n), pow(q, e)));
    CHECK(discriminant_from_local_data({{p, n}, {q, n}}, n) == minimal_discriminant(CenterId::GaussQi, n));
  }
  // n = 6 with local indices 2, 3, 6.
  CHECK(associates(discriminant_from_local_data({{p, 2}, {q, 3}}, 6), pow(p, 18) * pow(q, 24)));
  CHECK(associates(discriminant_from_local_data({{p, 6}}, 6), pow(p, 30)));
  CHECK(discriminant_from_local_data({}, 1) == gi(1));
}

TEST_CASE("inconsistent local indices") {
  QuadScalar p = gi(1, 1), q = gi(2, 1);
  auto expect = [](const std::vector<LocalDatum>& d, int n) {
    try {
      discriminant_from_local_data(d, n);
      FAIL("expected InconsistentIndices");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InconsistentIndices);
    }
  };
  expect({{p, 2}, {q, 2}}, 6);
  expect({{p, 4}}, 6);
  expect({{p, 0}}, 2);
  expect({}, 3);
}

TEST_CASE("minimal discriminants and measures") {
  CHECK(associates(minimal_discriminant(CenterId::GaussQi, 2), pow(gi(1, 1), 2) * pow(gi(2, 1), 2)));
  CHECK(associates(minimal_discriminant(CenterId::GaussQi, 2), gi(-8, 6)));
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    MeasureValue m = minimal_measure(CenterId::GaussQi, n);
    REQUIRE(m.is_rational);
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(n * (n - 1) / 2));
    CHECK(m.exact == BigRat(ten_pow));
  }
  CHECK(minimal_measure(CenterId::EisensteinQomega, 2).exact == BigRat(27, 4));
  CHECK(minimal_measure(CenterId::EisensteinQomega, 1).value == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(minimal_discriminant(CenterId::EisensteinQomega, 1) == ew(1));
  // (sqrt(3)/2)^(n^2) 12^(n(n-1)/2) over Z[omega].
  for (int n = 1; n <= 4; ++n) {
    double v = std::pow(std::sqrt(3.0) / 2, n * n) * std::pow(12.0, n * (n - 1) / 2.0);
    CHECK(minimal_measure(CenterId::EisensteinQomega, n).value == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("found maximal orders respect the bound") {
  for (const std::string name : {"golden", "golden_plus", "a_ell_3", "eisenstein_2x2"}) {
    CAPTURE(name);
    const Fixture& f = fixture(name);
    MaxOrderResult r = find_maximal_order(f);
    MeasureValue found = discriminant(r.order).measure();
    MeasureValue bound = minimal_measure(f.center, f.degree);
    CHECK(found.squared >= bound.squared);
    CHECK((found.squared == bound.squared) == (name != "golden"));
  }
}

TEST_CASE("perfect algebra data") {
  const Fixture& p3 = fixture("perfect_3x3_data");
  REQUIRE(p3.data_only);
  QuadScalar sqrt_m3 = ew(1, 2);
  REQUIRE(sqrt_m3 * sqrt_m3 == ew(-3));
  QuadScalar a = ew(2) + sqrt_m3, b = ew(2) - sqrt_m3;
  CHECK(associates(natural_from_data(p3), pow(a, 6) * pow(b, 6)));
  CHECK(module_index_from_discriminants(make_discriminant(natural_from_data(p3), 3),
                                        make_discriminant(maximal_from_data(p3), 3)) == ew(1));

  const Fixture& p4 = fixture("perfect_4x4_data");
  CHECK(associates(module_index_from_discriminants(make_discriminant(natural_from_data(p4), 4),
                                                   make_discriminant(maximal_from_data(p4), 4)),
                   gi(81)));

  const Fixture& p6 = fixture("perfect_6x6_data");
  QuadScalar idx = module_index_from_discriminants(make_discriminant(natural_from_data(p6), 6),
                                                   make_discriminant(maximal_from_data(p6), 6));
  CHECK(associates(idx, QuadScalar(CenterId::EisensteinQomega, BigRat(two_pow(18)), BigRat(0))));
  for (const auto* f : {&p3, &p4, &p6}) CHECK(f->relative_discriminant.reassemble() == f->relative_discriminant_value());
}

TEST_CASE("fixture registry loads from JSON and detects edits") {
  FixtureRegistry builtin = FixtureRegistry::builtin();
  std::vector<std::string> expected{"golden",         "golden_plus",      "a_ell_3",          "a_ell_4",         "a_ell_5",
                                    "eisenstein_2x2", "perfect_3x3_data", "perfect_4x4_data", "perfect_6x6_data"};
  CHECK(builtin.names() == expected);
  json j = read_json_file(std::string(CDA_DATA_DIR) + "/fixtures.json");
  FixtureRegistry same = FixtureRegistry::from_json(j);
  CHECK(same.names() == expected);
  for (auto& f : j["fixtures"])
    if (f["name"] == "golden") f["gamma"] = json::array({2, 1});
  FixtureRegistry edited = FixtureRegistry::from_json(j);
  const Fixture& g = edited.get("golden");
  CHECK(g.gamma == gi(2, 1));
  CHECK_FALSE(associates(discriminant(natural_order(g.algebra, g.oe_basis)).canon, gi(25)));
  CHECK_THROWS_AS(builtin.get("no_such_fixture"), Error);
}
