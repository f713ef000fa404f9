#include "cda/verify.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "cda/codebook.hpp"
#include "cda/maxorder.hpp"

namespace cda {

bool VerifyReport::all_passed() const { return failures() == 0; }

int VerifyReport::failures() const {
  int f = 0;
  for (const auto& r : rows) f += r.pass ? 0 : 1;
  return f;
}

AlgebraElem a3_w_element(const AlgPtr& a3) {
  ExtPtr ext = a3->extension();
  CenterId c = a3->center();
  auto gi = [c](long a, long b) { return QuadScalar(c, a, b); };
  auto s = [&](long a, long b) { return ext->scalar(gi(a, b)); };
  FieldElem sqrt2 = ext->generator() * gi(1, -1);
  QuadScalar q(c, BigRat(1, 4), BigRat(0));
  MatrixOverE w(2, std::vector<FieldElem>(2));
  w[0][0] = (s(0, 2) - sqrt2 * gi(1, -1)) * q;
  w[0][1] = (s(0, 2) - sqrt2 * gi(1, 1)) * gi(2, 1) * q;
  w[1][0] = (s(1, 0) + sqrt2 + s(0, 1)) * gi(1, 1) * q;
  w[1][1] = (s(0, 2) + sqrt2 * gi(1, -1)) * q;
  return from_matrix(a3, w);
}

namespace {

using Outcome = std::pair<std::string, bool>;

class Suite {
 public:
  explicit Suite(VerifyReport& r) : report_(r) {}

  void check(const std::string& group, const std::string& check, const std::string& expected,
             const std::function<Outcome()>& fn) {
    VerifyRow row{group, check, expected, "", false};
    try {
      auto [computed, pass] = fn();
      row.computed = computed;
      row.pass = pass;
    } catch (const std::exception& e) {
      row.computed = std::string("error: ") + e.what();
    }
    report_.rows.push_back(row);
  }

 private:
  VerifyReport& report_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

QuadScalar gpow(const QuadScalar& x, unsigned e) { return pow(x, e); }

BigInt two_pow(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::string join_profile(const std::vector<long>& p) {
  std::ostringstream s;
  for (size_t k = 0; k < p.size(); ++k) s << (k ? "," : "") << p[k];
  return s.str();
}

OFLattice natural_of(const Fixture& f) { return natural_order(f.algebra, f.oe_basis); }

AlgebraElem random_element(const AlgPtr& alg, std::mt19937_64& gen) {
  std::uniform_int_distribution<long> d(-3, 3);
  std::vector<FieldElem> xs;
  for (int i = 0; i < alg->degree(); ++i) {
    Poly c;
    for (int j = 0; j < alg->extension()->degree(); ++j) c.push_back(QuadScalar(alg->center(), d(gen), d(gen)));
    xs.push_back(alg->extension()->from_coeffs(c));
  }
  return AlgebraElem(alg, xs);
}

QuadScalar data_natural(const Fixture& f) {
  return natural_discriminant_formula(f.relative_discriminant_value(), f.gamma, f.degree);
}

QuadScalar data_module_index(const Fixture& f) {
  return module_index_from_discriminants(make_discriminant(data_natural(f), f.degree),
                                         make_discriminant(discriminant_from_local_data(f.local_data, f.degree), f.degree));
}

void golden_checks(Suite& s, const FixtureRegistry& reg) {
  s.check("golden", "natural order discriminant", "25", [&] {
    DiscriminantValue d = discriminant(natural_of(reg.get("golden")));
    return Outcome{d.canon.to_string(), d.canon == QuadScalar(CenterId::GaussQi, 25L, 0L)};
  });
  s.check("golden", "natural order measure", "25", [&] {
    MeasureValue m = discriminant(natural_of(reg.get("golden"))).measure();
    return Outcome{m.to_string(), m.is_rational && m.exact == 25};
  });
}

void golden_plus_checks(Suite& s, const FixtureRegistry& reg) {
  const Fixture& f = reg.get("golden_plus");
  QuadScalar p(CenterId::GaussQi, 1L, 1L);
  auto [fin, trace] = saturate_at_prime(natural_of(f), p);
  s.check("golden_plus", "strict enlargements at 1+i", "3",
          [&] { return Outcome{std::to_string(trace.iterations.size()), trace.iterations.size() == 3}; });
  s.check("golden_plus", "final discriminant", "-8+6i up to units", [&] {
    QuadScalar d = discriminant(fin).canon;
    return Outcome{d.to_string(), associates(d, QuadScalar(CenterId::GaussQi, -8L, 6L))};
  });
  s.check("golden_plus", "final measure", "10", [&] {
    MeasureValue m = discriminant(fin).measure();
    return Outcome{m.to_string(), m.is_rational && m.exact == 10};
  });
  s.check("golden_plus", "certification", "CertifiedMaximal", [&] {
    Certification c = certify(discriminant(fin), f.center, f.degree);
    return Outcome{cert_status_name(c.status), c.status == CertStatus::CertifiedMaximal};
  });
  s.check("golden_plus", "displayed M1..M4 lie in the found order", "yes", [&] {
    bool all = true;
    for (const auto& m : golden_plus_displayed(f.algebra)) all = all && fin.contains(m);
    return Outcome{yes_no(all), all};
  });
  s.check("golden_plus", "found order = span{M1, M2, M3, u}", "yes", [&] {
    auto m = golden_plus_displayed(f.algebra);
    bool eq = fin == OFLattice::span(f.algebra, {m[0], m[1], m[2], AlgebraElem::u(f.algebra)});
    return Outcome{yes_no(eq), eq};
  });
}

void a3_checks(Suite& s, const FixtureRegistry& reg) {
  const Fixture& f = reg.get("a_ell_3");
  AlgPtr a3 = f.algebra;
  CenterId c = a3->center();
  s.check("a_ell_3", "w^2 = -i + i w", "holds", [&] {
    AlgebraElem w = a3_w_element(a3);
    AlgebraElem i_ = AlgebraElem::from_scalar(a3, QuadScalar(c, 0L, 1L));
    bool ok = alg_mul(w, w) == -i_ + alg_mul(i_, w);
    return Outcome{ok ? "holds" : "fails", ok};
  });
  s.check("a_ell_3", "w zeta = -1 + zeta^3 - zeta w", "holds", [&] {
    AlgebraElem w = a3_w_element(a3);
    AlgebraElem z = AlgebraElem::from_field(a3, a3->extension()->generator());
    bool ok = alg_mul(w, z) == -AlgebraElem::one(a3) + alg_pow(z, 3) - alg_mul(z, w);
    return Outcome{ok ? "holds" : "fails", ok};
  });
  s.check("a_ell_3", "discriminant of span{1, w} over Z[zeta_8]", "(1+i)^2 (2+i)^2 up to units", [&] {
    ExtPtr ext = a3->extension();
    OFLattice l = OFLattice::span(a3, expand_left({AlgebraElem::one(a3), a3_w_element(a3)}, {ext->one(), ext->generator()}));
    QuadScalar d = discriminant(l).canon;
    bool ok = l.full_rank() && associates(d, gpow(QuadScalar(c, 1L, 1L), 2) * gpow(QuadScalar(c, 2L, 1L), 2));
    return Outcome{d.to_string(), ok};
  });
  s.check("a_ell_3", "natural order measure", "80", [&] {
    MeasureValue m = discriminant(natural_of(f)).measure();
    return Outcome{m.to_string(), m.is_rational && m.exact == 80};
  });
  s.check("a_ell_3", "index of the natural order in the maximal order", "8", [&] {
    MaxOrderResult r = find_maximal_order(f);
    BigInt idx = index_from_discriminants(discriminant(natural_of(f)), discriminant(r.order));
    return Outcome{idx.get_str(), idx == 8};
  });
}

void cyclotomic_checks(Suite& s, const FixtureRegistry& reg, int ell, const std::vector<long>& profile,
                       unsigned disc_exp, unsigned index_exp) {
  const Fixture& f = reg.get("a_ell_" + std::to_string(ell));
  std::string g = f.name;
  MaxOrderResult r = find_maximal_order(f);
  CenterId c = f.center;
  s.check(g, "maximal order discriminant",
          "(1+i)^" + std::to_string(disc_exp) + " (2+i)^" + std::to_string(disc_exp) + " up to units", [&] {
            QuadScalar d = discriminant(r.order).canon;
            QuadScalar want = gpow(QuadScalar(c, 1L, 1L), disc_exp) * gpow(QuadScalar(c, 2L, 1L), disc_exp);
            return Outcome{discriminant(r.order).to_string(), associates(d, want)};
          });
  s.check(g, "index of the natural order", "2^" + std::to_string(index_exp), [&] {
    BigInt idx = index_from_discriminants(discriminant(natural_of(f)), discriminant(r.order));
    return Outcome{idx.get_str(), idx == two_pow(index_exp)};
  });
  std::vector<long> prof = r.compressed ? r.compressed->order.profile() : std::vector<long>{};
  s.check(g, "compressed power profile", join_profile(profile),
          [&] { return Outcome{join_profile(prof), prof == profile}; });
  s.check(g, "published generators span the found order", "yes", [&] {
    RegressionReport rep = regression_basis_check(ell, r.order, prof);
    return Outcome{rep.equal ? "yes" : "no: " + rep.first_mismatch, rep.equal};
  });
  s.check(g, "certification", "CertifiedMaximal", [&] {
    return Outcome{cert_status_name(r.certification.status), r.certification.status == CertStatus::CertifiedMaximal};
  });
}

void bound_checks(Suite& s) {
  for (int n : {2, 3, 4}) {
    BigInt want;
    mpz_ui_pow_ui(want.get_mpz_t(), 10, static_cast<unsigned long>(n * (n - 1) / 2));
    s.check("bound", "qi minimal measure n=" + std::to_string(n), want.get_str(), [&] {
      MeasureValue m = minimal_measure(CenterId::GaussQi, n);
      return Outcome{m.to_string(), m.is_rational && m.exact == BigRat(want)};
    });
  }
  s.check("bound", "qomega minimal measure n=2", "27/4", [&] {
    MeasureValue m = minimal_measure(CenterId::EisensteinQomega, 2);
    return Outcome{m.to_string(), m.is_rational && m.exact == BigRat(27, 4)};
  });
}

void perfect_checks(Suite& s, const FixtureRegistry& reg) {
  s.check("perfect_3x3_data", "natural discriminant", "(2+sqrt-3)^6 (2-sqrt-3)^6 up to units", [&] {
    CenterId c = CenterId::EisensteinQomega;
    QuadScalar r3(c, 1L, 2L);
    QuadScalar want = gpow(QuadScalar(c, 2L, 0L) + r3, 6) * gpow(QuadScalar(c, 2L, 0L) - r3, 6);
    QuadScalar d = data_natural(reg.get("perfect_3x3_data"));
    return Outcome{d.to_string(), associates(d, want)};
  });
  s.check("perfect_3x3_data", "natural order index in the maximal order", "1", [&] {
    QuadScalar idx = data_module_index(reg.get("perfect_3x3_data"));
    return Outcome{idx.to_string(), idx.is_unit()};
  });
  s.check("perfect_4x4_data", "natural order index in the maximal order", "81", [&] {
    QuadScalar idx = data_module_index(reg.get("perfect_4x4_data"));
    return Outcome{idx.to_string(), associates(idx, QuadScalar(CenterId::GaussQi, 81L, 0L))};
  });
  s.check("perfect_6x6_data", "natural order index in the maximal order", "2^18", [&] {
    QuadScalar idx = data_module_index(reg.get("perfect_6x6_data"));
    return Outcome{idx.to_string(), associates(idx, QuadScalar(CenterId::EisensteinQomega, BigRat(two_pow(18)), BigRat(0)))};
  });
}

void codebook_checks(Suite& s, const FixtureRegistry& reg) {
  s.check("codebook", "golden_plus 4 bpcu exact min det", "1", [&] {
    Codebook cb = golden_plus_codebook(reg, 4);
    if (!cb.min_det || cb.size() != 256) return Outcome{"missing", false};
    return Outcome{cb.min_det->squared.get_str() + " (squared)", cb.min_det->squared == 1};
  });
  s.check("codebook", "scaled principal ideal measure", "equals the order measure to 1e-6", [&] {
    CodeLattice cl = golden_plus_code_lattice(reg);
    int n = cl.order.algebra()->degree();
    double m_order = gram_and_measure_numeric(cl.order).measure;
    double scaled = gram_and_measure_numeric(cl.ideal).measure * std::pow(cl.scale.rho, 2 * n * n);
    double rel = std::abs(scaled - m_order) / m_order;
    return Outcome{"relative error " + sci(rel), rel <= 1e-6};
  });
  s.check("codebook", "golden (1+i)/2 coset: 256 equal energies", "spread <= 1e-9 relative", [&] {
    CodeLattice cl = golden_code_lattice(reg);
    CodebookSpec spec;
    spec.lattice = cl.ideal;
    spec.coset_offset = uniform_offset(cl.ideal, QuadScalar(CenterId::GaussQi, BigRat(1, 2), BigRat(1, 2)));
    spec.size = 256;
    spec.scale = cl.scale;
    spec.label = "golden_half_coset";
    Codebook cb = select_lowest_energy(spec);
    double lo = cb.entries.front().energy, hi = lo;
    for (const auto& e : cb.entries) {
      lo = std::min(lo, e.energy);
      hi = std::max(hi, e.energy);
    }
    double spread = (hi - lo) / hi;
    return Outcome{std::to_string(cb.size()) + " entries, spread " + std::to_string(spread),
                   cb.size() == 256 && spread <= 1e-9};
  });
}

void property_checks(Suite& s, const FixtureRegistry& reg, const VerifyOptions& opts) {
  std::mt19937_64 gen(opts.seed);
  std::vector<AlgPtr> algs;
  for (const char* name : {"golden", "golden_plus", "a_ell_3", "eisenstein_2x2"}) algs.push_back(reg.get(name).algebra);
  int cases = opts.property_cases;
  s.check("properties", "matrix_rep is multiplicative", std::to_string(cases) + " cases", [&] {
    int bad = 0;
    for (int t = 0; t < cases; ++t) {
      const AlgPtr& a = algs[static_cast<size_t>(t) % algs.size()];
      AlgebraElem x = random_element(a, gen), y = random_element(a, gen);
      if (matrix_rep(alg_mul(x, y)) != matrix_mul(matrix_rep(x), matrix_rep(y))) ++bad;
    }
    return Outcome{std::to_string(bad) + " failures", bad == 0};
  });
  s.check("properties", "reduced norm is multiplicative", std::to_string(cases) + " cases", [&] {
    int bad = 0;
    for (int t = 0; t < cases; ++t) {
      const AlgPtr& a = algs[static_cast<size_t>(t) % algs.size()];
      AlgebraElem x = random_element(a, gen), y = random_element(a, gen);
      if (reduced_norm(alg_mul(x, y)) != reduced_norm(x) * reduced_norm(y)) ++bad;
    }
    return Outcome{std::to_string(bad) + " failures", bad == 0};
  });
}

void extended_checks(Suite& s, const FixtureRegistry& reg) {
  cyclotomic_checks(s, reg, 5, {0, 3, 10, 13, 28, 31, 38, 41}, 56, 164);
  const Fixture& e = reg.get("eisenstein_2x2");
  MaxOrderResult r = find_maximal_order(e);
  s.check("eisenstein_2x2", "saturated discriminant", "minimal discriminant for n=2", [&] {
    QuadScalar d = discriminant(r.order).canon;
    return Outcome{d.to_string(), associates(d, minimal_discriminant(e.center, 2))};
  });
  s.check("eisenstein_2x2", "saturated measure", "27/4", [&] {
    MeasureValue m = discriminant(r.order).measure();
    return Outcome{m.to_string(), m.is_rational && m.exact == BigRat(27, 4)};
  });
}

}  // namespace

VerifyReport run_verify(const FixtureRegistry& reg, const VerifyOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport report;
  Suite s(report);
  // A failure while building shared state for a group becomes one failed row.
  auto group = [&](const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report.rows.push_back({name, "setup", "completes", std::string("error: ") + e.what(), false});
    }
  };
  group("golden", [&] { golden_checks(s, reg); });
  group("golden_plus", [&] { golden_plus_checks(s, reg); });
  group("a_ell_3", [&] { a3_checks(s, reg); });
  group("a_ell_4", [&] { cyclotomic_checks(s, reg, 4, {0, 3, 10, 13}, 12, 26); });
  group("bound", [&] { bound_checks(s); });
  group("perfect", [&] { perfect_checks(s, reg); });
  group("codebook", [&] { codebook_checks(s, reg); });
  group("properties", [&] { property_checks(s, reg, opts); });
  if (opts.extended) group("extended", [&] { extended_checks(s, reg); });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

json verify_report_to_json(const VerifyReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"group", row.group},
                    {"check", row.check},
                    {"expected", row.expected},
                    {"computed", row.computed},
                    {"pass", row.pass}});
  return {{"passed", r.all_passed()}, {"failures", r.failures()}, {"checks", rows}};
}

std::string verify_report_table(const VerifyReport& r) {
  std::ostringstream out;
  for (const auto& row : r.rows)
    out << (row.pass ? "PASS  " : "FAIL  ") << row.group << " | " << row.check << " | expected " << row.expected
        << " | computed " << row.computed << '\n';
  out << (r.all_passed() ? "all checks passed" : std::to_string(r.failures()) + " check(s) failed") << '\n';
  return out.str();
}

}  // namespace cda
