#include <chrono>

#include "doctest.h"
#include "support.hpp"

#include "cda/maxorder.hpp"

using namespace cda;
using namespace cda::testing;

namespace {

OFLattice nat(const std::string& name) {
  const Fixture& f = fixture(name);
  return natural_order(f.algebra, f.oe_basis);
}

struct GaPlus {
  AlgPtr alg = fixture("golden_plus").algebra;
  AlgebraElem one = AlgebraElem::one(alg);
  AlgebraElem u = AlgebraElem::u(alg);
  AlgebraElem lam = AlgebraElem::from_field(alg, alg->extension()->generator());
  AlgebraElem ulam = alg_mul(u, lam);
  QuadScalar p = gi(1, 1);
  AlgebraElem rho = alg_mul(one + u, one + lam) * gi(1, 1).inverse();
  AlgebraElem tau = (u + lam) * gi(1, 1).inverse();
  AlgebraElem nu = alg_mul(one + u, u + lam) * gq(1, 2, 0, 1);
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("radical of the GA+ natural order") {
  GaPlus g;
  OFLattice l = nat("golden_plus");
  OFLattice j = radical_preimage(l, g.p);
  std::vector<AlgebraElem> expected{g.one * g.p, g.one + g.u, g.one + g.lam, g.one + g.ulam};
  CHECK(j.basis() == expected);
  CHECK(j == OFLattice::span(g.alg, expected));
  for (const auto& b : j.basis()) CHECK(divides(g.p, reduced_norm(b)));
  CHECK(l.contains(j));
  for (const auto& b : l.basis()) CHECK(j.contains(b * g.p));
}

TEST_CASE("radical of the second GA+ order") {
  GaPlus g;
  OFLattice l = OFLattice::span(g.alg, {g.one, g.u, g.lam, g.rho});
  REQUIRE(is_order(l).is_order);
  OFLattice j = radical_preimage(l, g.p);
  CHECK(j == OFLattice::span(g.alg, {g.one * g.p, g.one + g.u, g.one + g.lam, g.one + g.rho}));
  for (const auto& b : j.basis()) CHECK(divides(g.p, reduced_norm(b)));
}

TEST_CASE("radical does not depend on the basis order") {
  for (const std::string name : {"golden_plus", "a_ell_3", "eisenstein_2x2", "golden"}) {
    CAPTURE(name);
    const Fixture& f = fixture(name);
    OFLattice l = nat(name);
    for (const auto& p : f.division_primes) {
      OFLattice j = radical_preimage(l, p);
      for (int t = 0; t < 10; ++t) {
        OFLattice l2 = OFLattice::span(l.algebra(), random_unimodular(l.basis()));
        REQUIRE(l2 == l);
        CHECK(radical_preimage(l2, p) == j);
      }
    }
  }
}

TEST_CASE("left orders") {
  for (const auto& name : algebra_fixture_names()) {
    CAPTURE(name);
    OFLattice l = nat(name);
    CHECK(left_order(l) == l);
  }
  GaPlus g;
  OFLattice j = radical_preimage(nat("golden_plus"), g.p);
  OFLattice o1 = left_order(j);
  CHECK(o1.contains(g.rho));
  CHECK(is_order(o1).is_order);

  OFLattice l2 = OFLattice::span(g.alg, {g.one, g.u, g.tau, g.rho});
  REQUIRE(is_order(l2).is_order);
  OFLattice o3 = left_order(radical_preimage(l2, g.p));
  CHECK(o3.contains(g.nu));
}

TEST_CASE("GA+ saturation follows the enlargement chain") {
  GaPlus g;
  auto t0 = std::chrono::steady_clock::now();
  auto [fin, trace] = saturate_at_prime(nat("golden_plus"), g.p);
  CHECK(seconds_since(t0) < 10.0);
  CHECK(trace.terminated == Termination::Fixpoint);
  REQUIRE(trace.iterations.size() == 3);
  CHECK(trace.iterations[0].order_after == OFLattice::span(g.alg, {g.one, g.u, g.lam, g.rho}));
  CHECK(trace.iterations[1].order_after == OFLattice::span(g.alg, {g.one, g.u, g.tau, g.rho}));
  CHECK(fin.contains(g.nu));
  CHECK(associates(discriminant(fin).canon, gi(-8, 6)));
  CHECK(discriminant(fin).measure().exact == 10);
  // Every M_i of the printed basis lies in the result.
  for (const auto& m : ga_plus_m_basis()) CHECK(fin.contains(m));
  CHECK(fin == OFLattice::span(g.alg, {ga_plus_m_basis()[0], ga_plus_m_basis()[1], ga_plus_m_basis()[2], g.u}));

  OFLattice prev = nat("golden_plus");
  BigRat prev_norm = discriminant(prev).norm;
  for (const auto& st : trace.iterations) {
    CHECK(st.order_after.contains(prev));
    CHECK(st.order_after != prev);
    CHECK_FALSE(st.new_generators.empty());
    BigRat ratio = prev_norm / st.disc_after.norm;
    BigRat root;
    CHECK(ratio > 1);
    CHECK(rational_sqrt(ratio, root));
    prev = st.order_after;
    prev_norm = st.disc_after.norm;
  }
  CHECK(left_order(radical_preimage(fin, g.p)) == fin);
  CHECK(gram_and_measure_numeric(fin).measure == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("saturation budget") {
  GaPlus g;
  try {
    saturate_at_prime(nat("golden_plus"), g.p, 1);
    FAIL("expected BudgetExhausted");
  } catch (const SearchBudgetError& e) {
    CHECK(e.code() == ErrorCode::BudgetExhausted);
    CHECK(e.trace().iterations.size() == 1);
    CHECK(e.trace().terminated == Termination::Budget);
  }
  CHECK_THROWS_AS(saturate_at_prime(nat("golden_plus"), g.p, 0), Error);
}

TEST_CASE("Golden natural order is already maximal") {
  const Fixture& f = fixture("golden");
  OFLattice l = nat("golden");
  for (const auto& p : f.division_primes) {
    auto [fin, trace] = saturate_at_prime(l, p);
    CHECK(trace.iterations.empty());
    CHECK(fin == l);
  }
  MaxOrderResult r = find_maximal_order(f);
  CHECK(r.order == l);
  CHECK(r.certification.status == CertStatus::CertifiedMaximal);
  CHECK(discriminant(r.order).canon == gi(25));
}

TEST_CASE("GA+ maximal order is certified") {
  MaxOrderResult r = find_maximal_order(fixture("golden_plus"));
  CHECK(r.certification.status == CertStatus::CertifiedMaximal);
  CHECK(associates(discriminant(r.order).canon, gi(-8, 6)));
  CHECK(associates(r.certification.bound.canon, gi(-8, 6)));
  REQUIRE(r.traces.size() == 2);
  CHECK(r.traces[0].iterations.size() == 3);
  CHECK(r.traces[1].terminated == Termination::AlreadyMinimal);
  CHECK(is_order(r.order).is_order);
}

TEST_CASE("A_3 maximal order") {
  const Fixture& f = fixture("a_ell_3");
  MaxOrderResult r = find_maximal_order(f);
  DiscriminantValue d = discriminant(r.order);
  CHECK(associates(d.canon, pow(gi(1, 1), 2) * pow(gi(2, 1), 2)));
  CHECK(index_from_discriminants(discriminant(nat("a_ell_3")), d) == 8);
  REQUIRE(r.compressed.has_value());
  CHECK(r.compressed->order.profile() == std::vector<long>{0, 3});
  MaxOrderResult plain = find_maximal_order(f, MaxOrderOptions{kDefaultBudget, false, std::nullopt});
  CHECK(plain.order == r.order);
  CHECK(r.certification.status == CertStatus::CertifiedMaximal);
  // span{1, w} over Z[zeta_8] is this maximal order.
  AlgPtr a3 = f.algebra;
  ExtPtr ext = a3->extension();
  OFLattice w_span = OFLattice::span(a3, expand_left({AlgebraElem::one(a3), a3_w()}, {ext->one(), ext->generator()}));
  CHECK(w_span == r.order);
}

TEST_CASE("A_4 maximal order through O_E bases") {
  const Fixture& f = fixture("a_ell_4");
  auto t0 = std::chrono::steady_clock::now();
  MaxOrderResult r = find_maximal_order(f);
  CHECK(seconds_since(t0) < 300.0);
  DiscriminantValue d = discriminant(r.order);
  CHECK(associates(d.canon, pow(gi(1, 1), 12) * pow(gi(2, 1), 12)));
  BigInt two26;
  mpz_ui_pow_ui(two26.get_mpz_t(), 2, 26);
  CHECK(index_from_discriminants(discriminant(nat("a_ell_4")), d) == two26);
  REQUIRE(r.compressed.has_value());
  std::vector<long> prof = r.compressed->order.profile();
  CHECK(prof == std::vector<long>{0, 3, 10, 13});
  RegressionReport rep = regression_basis_check(4, r.order, prof);
  CHECK(rep.equal);
  CHECK(rep.first_mismatch.empty());
  CHECK(rep.profile_sum == 26);
  CHECK(r.certification.status == CertStatus::CertifiedMaximal);
  // Each compressed basis element is in the lattice and the trace is consistent.
  for (const auto& e : r.compressed->order.elements()) CHECK(r.order.contains(e));
  CHECK(r.traces[0].iterations.back().order_after == r.order);
  // The order is closed under multiplication.
  CHECK(is_order(r.order).is_order);
}

TEST_CASE("compressed and O_F searches agree step by step on A_3") {
  const Fixture& f = fixture("a_ell_3");
  CompressedBasis c = CompressedBasis::natural(f.algebra);
  OFLattice l = nat("a_ell_3");
  CHECK(c.lattice() == l);
  for (int it = 0; it < 3; ++it) {
    CompressedBasis rad = compressed_radical(c);
    OFLattice rad_l = radical_preimage(l, gi(1, 1));
    CHECK(rad.lattice() == rad_l);
    auto [next, pos] = compressed_left_order(c, rad);
    OFLattice next_l = left_order(rad_l);
    CHECK(next.lattice() == next_l);
    c = next;
    l = next_l;
  }
}

TEST_CASE("certification rules") {
  Certification c = certify(make_discriminant(pow(gi(1, 1), 2) * pow(gi(2, 1), 2), 2), CenterId::GaussQi, 2);
  CHECK(c.status == CertStatus::CertifiedMaximal);
  Certification two = certify(make_discriminant(pow(gi(2, 1), 2) * pow(gi(2, -1), 2), 2), CenterId::GaussQi, 2);
  CHECK(two.status == CertStatus::CertifiedMaximal);
  Certification no = certify(make_discriminant(pow(gi(1, 1), 4) * pow(gi(2, 1), 2), 2), CenterId::GaussQi, 2);
  CHECK(no.status == CertStatus::ExtremalUncertified);
  Certification three = certify(make_discriminant(gi(1, 1) * gi(2, 1) * gi(3), 2), CenterId::GaussQi, 2);
  CHECK(three.status == CertStatus::ExtremalUncertified);
}

TEST_CASE("search contract errors") {
  Fixture f = fixture("golden_plus");
  f.division_primes.clear();
  try {
    find_maximal_order(f);
    FAIL("expected UnsupportedPrime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedPrime);
  }
  try {
    radical_preimage(nat("golden_plus"), gi(3));
    FAIL("expected ResidueFieldTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResidueFieldTooLarge);
  }
}

TEST_CASE("Eisenstein 2x2 saturates at both small primes") {
  const Fixture& f = fixture("eisenstein_2x2");
  MaxOrderResult r = find_maximal_order(f);
  DiscriminantValue d = discriminant(r.order);
  CHECK(associates(d.canon, minimal_discriminant(CenterId::EisensteinQomega, 2)));
  CHECK(d.measure().exact == BigRat(27, 4));
  CHECK(r.certification.status == CertStatus::CertifiedMaximal);
  CHECK(is_order(r.order).is_order);
  for (const auto& p : f.division_primes) CHECK(left_order(radical_preimage(r.order, p)) == r.order);
}
