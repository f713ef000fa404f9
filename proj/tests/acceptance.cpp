// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
//   acceptance              criteria 1-9
//   acceptance --only 2,5   selected criteria
//   acceptance --extended   the l = 5 search only (non-gating)

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "support.hpp"

#include "cda/codebook.hpp"
#include "cda/maxorder.hpp"
#include "cda/simulator.hpp"

using namespace cda;
using namespace cda::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    lines_.push_back(std::string(ok ? "    ok    " : "    FAIL  ") + what);
    pass_ = pass_ && ok;
  }
  void note(const std::string& what) { lines_.push_back("    note  " + what); }
  void fail(const std::string& what) { check(false, what); }
  bool pass() const { return pass_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  bool pass_ = true;
  std::vector<std::string> lines_;
};

template <typename T>
std::string str(const T& x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

BigInt two_pow(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

OFLattice nat(const std::string& name) {
  const Fixture& f = fixture(name);
  return natural_order(f.algebra, f.oe_basis);
}

// Left-regular representation over F on the ambient basis {u^i e^j}.
std::vector<std::vector<QuadScalar>> regular_rep(const AlgebraElem& a) {
  const AlgPtr& alg = a.algebra();
  int N = alg->degree() * alg->degree();
  std::vector<std::vector<QuadScalar>> m(N, std::vector<QuadScalar>(N, QuadScalar::zero(alg->center())));
  for (int col = 0; col < N; ++col) {
    std::vector<QuadScalar> e(N, QuadScalar::zero(alg->center()));
    e[col] = QuadScalar::one(alg->center());
    auto prod = alg_mul(a, AlgebraElem::from_ambient(alg, e)).ambient_coords();
    for (int r = 0; r < N; ++r) m[r][col] = prod[r];
  }
  return m;
}

// Smallest N(nr(X - X')) over all pairs, by direct reduced norms.
BigRat pairwise_min_norm(const Codebook& cb) {
  BigRat best = -1;
  for (size_t i = 0; i < cb.entries.size(); ++i)
    for (size_t j = i + 1; j < cb.entries.size(); ++j) {
      BigRat v = reduced_norm(cb.entries[i].element - cb.entries[j].element).norm();
      if (best < 0 || v < best) best = v;
    }
  return best;
}

void criterion_1(Criterion& c) {
  auto t0 = Clock::now();
  OFLattice l = nat("golden");
  DiscriminantValue d = discriminant(l);
  double secs = since(t0);
  c.check(d.canon == gi(25), "canonical discriminant " + d.canon.to_string() + " == 25");
  c.check(canonical_associate(discriminant_of_basis(l.basis())).canon == gi(25), "direct trace-form determinant agrees");
  MeasureValue m = d.measure();
  c.check(m.is_rational && m.exact == 25, "measure " + m.to_string() + " == 25");
  c.check(std::abs(gram_and_measure_numeric(l).measure - 25) <= 1e-6 * 25, "Gram measure agrees to 1e-6");
  c.check(secs < 1.0, "runtime " + str(secs) + " s < 1 s");
}

void criterion_2(Criterion& c) {
  const Fixture& f = fixture("golden_plus");
  auto t0 = Clock::now();
  auto [fin, trace] = saturate_at_prime(nat("golden_plus"), gi(1, 1));
  Certification cert = certify(discriminant(fin), f.center, f.degree);
  double secs = since(t0);
  c.check(trace.iterations.size() == 3, "strict enlargements: " + str(trace.iterations.size()) + " == 3");
  OFLattice prev = nat("golden_plus");
  bool strict = true;
  for (const auto& st : trace.iterations) {
    strict = strict && st.order_after.contains(prev) && st.order_after != prev;
    prev = st.order_after;
  }
  c.check(strict, "each step strictly contains the previous order");
  DiscriminantValue d = discriminant(fin);
  c.check(associates(d.canon, gi(-8, 6)), "final discriminant " + d.canon.to_string() + " ~ -8+6i");
  c.check(d.measure().is_rational && d.measure().exact == 10, "measure " + d.measure().to_string() + " == 10");
  c.check(cert.status == CertStatus::CertifiedMaximal, std::string("certification ") + cert_status_name(cert.status));
  std::vector<AlgebraElem> m = ga_plus_m_basis();
  OFLattice span_m = OFLattice::span(f.algebra, m);
  bool m_in_found = true;
  for (const auto& x : m) m_in_found = m_in_found && fin.contains(x);
  bool found_in_m = true;
  for (const auto& x : fin.basis()) found_in_m = found_in_m && span_m.contains(x);
  c.check(m_in_found, "M1..M4 lie in the found order");
  c.check(found_in_m, "found order lies in span{M1..M4} (span rank " + str(span_m.rank()) + " of 4)");
  if (fin == OFLattice::span(f.algebra, {m[0], m[1], m[2], AlgebraElem::u(f.algebra)}))
    c.note("found order = span{M1, M2, M3, u}");
  c.check(secs < 10.0, "runtime " + str(secs) + " s < 10 s");
}

void criterion_3(Criterion& c) {
  AlgPtr a3 = fixture("a_ell_3").algebra;
  ExtPtr ext = a3->extension();
  AlgebraElem w = a3_w();
  AlgebraElem one = AlgebraElem::one(a3);
  AlgebraElem zeta = AlgebraElem::from_field(a3, ext->generator());
  AlgebraElem i_ = AlgebraElem::from_scalar(a3, gi(0, 1));
  c.check(alg_mul(w, w) == -i_ + alg_mul(i_, w), "w^2 = -i + i w");
  c.check(alg_mul(w, zeta) == -one + alg_pow(zeta, 3) - alg_mul(zeta, w), "w zeta = -1 + zeta^3 - zeta w");
  // The same relations through the matrix representation.
  MatrixOverE mw = matrix_rep(w);
  c.check(matrix_mul(mw, mw) == matrix_rep(-i_ + alg_mul(i_, w)), "w^2 relation holds for matrices");
  OFLattice l = OFLattice::span(a3, expand_left({one, w}, {ext->one(), ext->generator()}));
  c.check(l.rank() == 4, "O_F-rank " + str(l.rank()) + " == 4");
  QuadScalar d = discriminant(l).canon;
  c.check(associates(d, pow(gi(1, 1), 2) * pow(gi(2, 1), 2)), "discriminant " + d.to_string() + " ~ (1+i)^2 (2+i)^2");
  c.check(associates(discriminant_of_basis(l.basis()), d), "direct trace-form determinant agrees");
}

void criterion_4(Criterion& c) {
  MeasureValue m3 = discriminant(nat("a_ell_3")).measure();
  c.check(m3.is_rational && m3.exact == 80, "l=3 natural measure " + m3.to_string() + " == 80");
  MaxOrderResult r3 = find_maximal_order(fixture("a_ell_3"));
  BigInt i3 = index_from_discriminants(discriminant(nat("a_ell_3")), discriminant(r3.order));
  c.check(i3 == 8, "l=3 index " + i3.get_str() + " == 2^3");

  auto t0 = Clock::now();
  MaxOrderResult r4 = find_maximal_order(fixture("a_ell_4"));
  double secs = since(t0);
  DiscriminantValue d4 = discriminant(r4.order);
  c.check(associates(d4.canon, pow(gi(1, 1), 12) * pow(gi(2, 1), 12)), "l=4 discriminant " + d4.to_string());
  BigInt i4 = index_from_discriminants(discriminant(nat("a_ell_4")), d4);
  c.check(i4 == two_pow(26), "l=4 index " + i4.get_str() + " == 2^26");
  std::vector<long> prof = r4.compressed ? r4.compressed->order.profile() : std::vector<long>{};
  std::string ps;
  for (long v : prof) ps += (ps.empty() ? "" : ",") + std::to_string(v);
  c.check(prof == std::vector<long>{0, 3, 10, 13}, "l=4 profile (" + ps + ") == (0,3,10,13)");
  RegressionReport rep = regression_basis_check(4, r4.order, prof);
  c.check(rep.equal, "l=4 published u1..u4 span the found order" + (rep.equal ? "" : ": " + rep.first_mismatch));
  c.check(secs < 300.0, "l=4 runtime " + str(secs) + " s < 300 s");
}

void criterion_4_extended(Criterion& c) {
  auto t0 = Clock::now();
  MaxOrderResult r5 = find_maximal_order(fixture("a_ell_5"));
  double secs = since(t0);
  std::vector<long> prof = r5.compressed ? r5.compressed->order.profile() : std::vector<long>{};
  long sum = 0;
  for (long v : prof) sum += v;
  c.check(sum == 164, "l=5 profile sum " + str(sum) + " == 164");
  BigInt i5 = index_from_discriminants(discriminant(nat("a_ell_5")), discriminant(r5.order));
  c.check(i5 == two_pow(164), "l=5 index == 2^164");
  RegressionReport rep = regression_basis_check(5, r5.order, prof);
  c.check(rep.equal, "l=5 published generators span the found order" + (rep.equal ? "" : ": " + rep.first_mismatch));
  c.check(secs < 3600.0, "l=5 runtime " + str(secs) + " s < 3600 s");
}

void criterion_5(Criterion& c) {
  const long expected[] = {10, 1000, 1000000};
  for (int n = 2; n <= 4; ++n) {
    MeasureValue m = minimal_measure(CenterId::GaussQi, n);
    c.check(m.is_rational && m.exact == expected[n - 2], "Q(i) n=" + str(n) + " measure " + m.to_string());
  }
  MeasureValue e = minimal_measure(CenterId::EisensteinQomega, 2);
  c.check(e.is_rational && e.exact == BigRat(27, 4), "Q(omega) n=2 measure " + e.to_string() + " == 27/4");
}

QuadScalar natural_from_data(const Fixture& f) {
  return natural_discriminant_formula(f.relative_discriminant_value(), f.gamma, f.degree);
}

QuadScalar data_index(const Fixture& f) {
  return module_index_from_discriminants(make_discriminant(natural_from_data(f), f.degree),
                                         make_discriminant(discriminant_from_local_data(f.local_data, f.degree), f.degree));
}

void criterion_6(Criterion& c) {
  const Fixture& p3 = fixture("perfect_3x3_data");
  QuadScalar r3 = ew(1, 2);
  QuadScalar d3 = natural_from_data(p3);
  c.check(associates(d3, pow(ew(2) + r3, 6) * pow(ew(2) - r3, 6)), "3x3 natural discriminant " + d3.to_string());
  QuadScalar i3 = data_index(p3);
  c.check(i3.is_unit(), "3x3 index " + i3.to_string() + " == 1 (natural order is maximal)");
  QuadScalar i4 = data_index(fixture("perfect_4x4_data"));
  c.check(associates(i4, gi(81)), "4x4 index " + i4.to_string() + " == 81");
  QuadScalar i6 = data_index(fixture("perfect_6x6_data"));
  c.check(associates(i6, QuadScalar(CenterId::EisensteinQomega, BigRat(two_pow(18)), BigRat(0))),
          "6x6 index " + i6.to_string() + " == 2^18");
}

void criterion_7(Criterion& c) {
  FixtureRegistry reg = FixtureRegistry::builtin();
  Codebook cb = golden_plus_codebook(reg, 4);
  c.check(cb.size() == 256, "GA+ codebook size " + str(cb.size()));
  c.check(cb.min_det && cb.min_det->squared == 1, "GA+ exact min det after scaling: " +
                                                      (cb.min_det ? cb.min_det->squared.get_str() : "missing"));
  BigRat direct = pairwise_min_norm(cb) * cb.scale.rho_pow_2n;
  c.check(direct == 1, "direct pairwise scan agrees: " + direct.get_str());
  for (const CodeLattice& cl : {golden_plus_code_lattice(reg), golden_code_lattice(reg)}) {
    int n = cl.order.algebra()->degree();
    double mo = gram_and_measure_numeric(cl.order).measure;
    double mi = gram_and_measure_numeric(cl.ideal).measure * std::pow(cl.scale.rho, 2 * n * n);
    c.check(std::abs(mi - mo) <= 1e-6 * mo, "scaled ideal measure " + str(mi) + " vs order " + str(mo));
  }
  CodeLattice gl = golden_code_lattice(reg);
  CodebookSpec spec;
  spec.lattice = gl.ideal;
  spec.coset_offset = uniform_offset(gl.ideal, gq(1, 2, 1, 2));
  spec.size = 256;
  spec.scale = gl.scale;
  spec.label = "golden_half_coset";
  Codebook half = select_lowest_energy(spec);
  double lo = half.entries.front().energy, hi = lo;
  for (const auto& e : half.entries) {
    lo = std::min(lo, e.energy);
    hi = std::max(hi, e.energy);
  }
  c.check(half.size() == 256 && (hi - lo) <= 1e-9 * hi,
          "Golden (1+i)/2 coset: 256 energies within " + str((hi - lo) / hi) + " relative");
}

void criterion_8(Criterion& c) {
  const int cases = 1000;
  const std::vector<std::string> names{"golden", "golden_plus", "a_ell_3", "eisenstein_2x2", "a_ell_4"};
  auto alg_at = [&](int t) { return fixture(names[static_cast<size_t>(t) % names.size()]).algebra; };
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    AlgPtr a = alg_at(t);
    AlgebraElem x = random_algebra(a), y = random_algebra(a);
    if (matrix_rep(alg_mul(x, y)) != matrix_mul(matrix_rep(x), matrix_rep(y))) ++bad;
  }
  c.check(bad == 0, "matrix_rep homomorphism: " + str(bad) + " failures in " + str(cases));
  bad = 0;
  for (int t = 0; t < cases; ++t) {
    AlgPtr a = alg_at(t);
    AlgebraElem x = random_algebra(a), y = random_algebra(a);
    if (reduced_norm(alg_mul(x, y)) != reduced_norm(x) * reduced_norm(y)) ++bad;
  }
  c.check(bad == 0, "nr multiplicativity: " + str(bad) + " failures in " + str(cases));
  bad = 0;
  for (int t = 0; t < cases; ++t) {
    AlgPtr a = alg_at(t);
    AlgebraElem x = random_algebra(a, 2);
    if (determinant(regular_rep(x)) != pow(reduced_norm(x), static_cast<unsigned>(a->degree()))) ++bad;
  }
  c.check(bad == 0, "N_A/F = nr^n: " + str(bad) + " failures in " + str(cases));
  bad = 0;
  const std::vector<std::string> small{"golden", "golden_plus", "a_ell_3", "eisenstein_2x2"};
  for (int t = 0; t < cases; ++t) {
    OFLattice l = nat(small[static_cast<size_t>(t) % small.size()]);
    QuadScalar d0 = discriminant(l).canon;
    std::vector<AlgebraElem> b = random_unimodular(l.basis());
    if (canonical_associate(discriminant_of_basis(b)).canon != d0 || OFLattice::span(l.algebra(), b) != l) ++bad;
  }
  c.check(bad == 0, "discriminant unimodular invariance: " + str(bad) + " failures in " + str(cases));
  int bad_index = 0, bad_gram = 0;
  double worst = 0;
  for (int t = 0; t < cases; ++t) {
    OFLattice l = nat(small[static_cast<size_t>(t) % small.size()]);
    CenterId cz = l.algebra()->center();
    std::vector<QuadScalar> ps = cz == CenterId::GaussQi ? std::vector<QuadScalar>{gi(1, 1), gi(2, 1), gi(2, -1), gi(3)}
                                                         : std::vector<QuadScalar>{ew(2, 1), ew(2), ew(3, 1), ew(1, 3)};
    QuadScalar p = ps[static_cast<size_t>(uniform(0, 3))];
    std::vector<AlgebraElem> b = random_unimodular(l.basis());
    b[0] *= p;
    OFLattice s = OFLattice::span(l.algebra(), b);
    DiscriminantValue ds = discriminant(s), dl = discriminant(l);
    if (!associates(ds.canon, p * p * dl.canon) || BigRat(index_from_discriminants(ds, dl)) != p.norm()) ++bad_index;
    double g = gram_and_measure_numeric(s).measure, e = ds.measure().value;
    double rel = std::abs(g - e) / e;
    worst = std::max(worst, rel);
    if (rel > 1e-6) ++bad_gram;
  }
  c.check(bad_index == 0, "index-square law on index-p sublattices: " + str(bad_index) + " failures in " + str(cases));
  c.check(bad_gram == 0, "Gram vs discriminant measure: " + str(bad_gram) + " beyond 1e-6 (worst " + str(worst) + ")");
}

SimCurve curve_of(const SimResult& r, size_t k) { return r.curves.at(k); }

void criterion_9(Criterion& c) {
  FixtureRegistry reg = FixtureRegistry::builtin();
  const double target = 1e-3;
  auto t0 = Clock::now();

  SimConfig six;
  six.codebooks = {numeric_codebook(golden_reference(reg, 6, GoldenMode::Pam)),
                   numeric_codebook(golden_plus_codebook(reg, 6)),
                   numeric_codebook(golden_reference(reg, 6, GoldenMode::CosetOptimized))};
  for (int s = 20; s <= 28; ++s) six.snr_grid_db.push_back(s);
  six.min_block_errors = 400;
  six.max_trials = 1000000;
  six.seed = 20240601;
  SimResult r6 = run_bler(six);

  SimConfig four;
  four.codebooks = {numeric_codebook(golden_reference(reg, 4, GoldenMode::Pam)),
                    numeric_codebook(golden_plus_codebook(reg, 4))};
  for (int s = 14; s <= 20; ++s) four.snr_grid_db.push_back(s);
  four.min_block_errors = 400;
  four.max_trials = 1000000;
  four.seed = 20240602;
  SimResult r4 = run_bler(four);

  for (const SimResult* r : {&r6, &r4})
    for (const auto& cv : r->curves)
      for (const auto& p : cv.points)
        c.note(cv.codebook + " " + str(p.snr_db) + " dB: bler " + str(p.bler) + " (" + str(p.errors) + "/" +
               str(p.trials) + ")");

  auto gap = [&](const SimCurve& a, const SimCurve& b, double lo, double hi, const std::string& what) {
    try {
      double g = compare_at_bler(a, b, target);
      c.check(g >= lo && g <= hi, what + " gap " + str(g) + " dB in [" + str(lo) + ", " + str(hi) + "]");
    } catch (const Error& e) {
      c.fail(what + ": " + e.what());
    }
  };
  gap(curve_of(r6, 0), curve_of(r6, 1), 0.5, 1.3, "6 bpcu Golden-PAM minus GA+");
  gap(curve_of(r4, 0), curve_of(r4, 1), -0.25, 0.25, "4 bpcu Golden-PAM minus GA+");
  gap(curve_of(r6, 2), curve_of(r6, 1), 0.1, 0.6, "6 bpcu Golden coset-optimized minus GA+");
  for (const SimResult* r : {&r6, &r4})
    for (const auto& cv : r->curves) {
      MonotonicityReport m = bler_monotonicity(cv);
      c.check(m.holds(), cv.codebook + " monotone: " + str(m.violations) + " violations in " + str(m.edges) + " steps");
    }
  c.note("simulation time " + str(since(t0)) + " s");
}

struct Entry {
  int id;
  std::string title;
  std::function<void(Criterion&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  bool extended = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) {
      extended = true;
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream s(argv[++i]);
      std::string item;
      while (std::getline(s, item, ',')) only.insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--only 1,2,...] [--extended]\n";
      return 2;
    }
  }
  std::vector<Entry> entries{
      {1, "Golden natural order discriminant 25 and measure 25", criterion_1},
      {2, "GA+ maximal order search at 1+i", criterion_2},
      {3, "w-element relations and span{1, w} in A_3", criterion_3},
      {4, "A_l family for l = 3, 4", criterion_4},
      {5, "minimal measure table", criterion_5},
      {6, "perfect algebra data indices", criterion_6},
      {7, "codebook min det, measure invariance, equal-energy coset", criterion_7},
      {8, "randomized property suites", criterion_8},
      {9, "BLER gaps at 1e-3 and monotonicity", criterion_9},
  };
  if (extended) entries = {{4, "A_l family for l = 5 (extended)", criterion_4_extended}};
  int failed = 0;
  for (const auto& e : entries) {
    if (!only.empty() && !only.count(e.id)) continue;
    Criterion c;
    auto t0 = Clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.fail(std::string("exception: ") + ex.what());
    }
    std::cout << (c.pass() ? "PASS" : "FAIL") << "  criterion " << e.id << (extended ? "x" : "") << ": " << e.title
              << " (" << std::fixed << std::setprecision(1) << since(t0) << " s)\n";
    std::cout.unsetf(std::ios::fixed);
    for (const auto& l : c.lines()) std::cout << l << '\n';
    std::cout.flush();
    if (!c.pass()) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criterion line(s) failed" : std::string("all criteria passed"))
            << '\n';
  return failed ? 1 : 0;
}
