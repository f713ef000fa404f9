#include "cda/maxorder.hpp"

#include <sstream>

namespace cda {

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Fixpoint:
      return "Fixpoint";
    case Termination::Budget:
      return "Budget";
    case Termination::AlreadyMinimal:
      return "AlreadyMinimal";
  }
  return "?";
}

const char* cert_status_name(CertStatus s) {
  return s == CertStatus::CertifiedMaximal ? "CertifiedMaximal" : "ExtremalUncertified";
}

namespace {

constexpr std::uint64_t kCandidateLimit = 1u << 15;

BigInt lcm_denominators(const std::vector<QuadScalar>& v, BigInt acc = 1) {
  for (const auto& x : v) {
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.a().get_den_mpz_t());
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.b().get_den_mpz_t());
  }
  return acc;
}

std::vector<QuadScalar> hnf_coords(const OFLattice& m, const AlgebraElem& x) {
  std::vector<QuadScalar> v = x.ambient_coords();
  BigRat d(m.denominator());
  for (auto& c : v) c *= d;
  auto sol = solve_echelon(m.hnf(), std::move(v), false);
  if (!sol) throw Error(ErrorCode::RankDeficient, "element outside the F-span of the lattice");
  return *sol;
}

// Iterates over all tuples in reps^k, last coordinate fastest.
struct Odometer {
  size_t base;
  std::vector<size_t> digits;
  bool next() {
    for (size_t k = digits.size(); k-- > 0;) {
      if (++digits[k] < base) return true;
      digits[k] = 0;
    }
    return false;
  }
};

// Left coefficients c_k of a = sum c_k u^k.
std::vector<FieldElem> left_coeffs(const AlgebraElem& a) {
  int n = a.degree();
  std::vector<FieldElem> out;
  for (int k = 0; k < n; ++k) out.push_back(apply_sigma(a.coord(k), (n - k) % n));
  return out;
}

std::vector<FieldElem> scale_left(const FieldElem& c, const std::vector<FieldElem>& row) {
  std::vector<FieldElem> out;
  for (const auto& x : row) out.push_back(field_mul(c, x));
  return out;
}

void add_into(std::vector<FieldElem>& acc, const std::vector<FieldElem>& row) {
  for (size_t k = 0; k < acc.size(); ++k) acc[k] += row[k];
}

QuadScalar one_plus_i() { return QuadScalar(CenterId::GaussQi, 1L, 1L); }

}  // namespace

OFLattice radical_preimage(const OFLattice& order, const QuadScalar& p) {
  if (!order.full_rank()) throw Error(ErrorCode::RankDeficient, "radical of a rank-deficient lattice");
  if (p.norm() > 5)
    throw Error(ErrorCode::ResidueFieldTooLarge, "residue field of " + p.to_string() + " has more than 5 elements");
  std::vector<QuadScalar> reps = residue_representatives(p);
  const auto& g = order.basis();
  std::vector<size_t> free_pos;
  std::vector<AlgebraElem> r;
  for (size_t i = 0; i < g.size(); ++i) {
    std::uint64_t count = 1;
    for (size_t k = 0; k < free_pos.size(); ++k) {
      count *= reps.size();
      if (count > kCandidateLimit)
        throw Error(ErrorCode::CandidateSearchExhausted,
                    "radical search at position " + std::to_string(i) + " exceeds " + std::to_string(kCandidateLimit) + " candidates");
    }
    Odometer od{reps.size(), std::vector<size_t>(free_pos.size(), 0)};
    bool found = false;
    do {
      AlgebraElem cand = g[i];
      for (size_t k = 0; k < free_pos.size(); ++k)
        if (od.digits[k]) cand += reps[od.digits[k]] * g[free_pos[k]];
      if (divides(p, reduced_norm(cand))) {
        r.push_back(cand);
        found = true;
        break;
      }
    } while (od.next());
    if (!found) {
      r.push_back(g[i] * p);
      free_pos.push_back(i);
    }
  }
  return OFLattice::span(order.algebra(), r);
}

OFLattice left_order(const OFLattice& m) {
  if (!m.full_rank()) throw Error(ErrorCode::RankDeficient, "left order of a rank-deficient lattice");
  const AlgPtr& alg = m.algebra();
  CenterId c = alg->center();
  std::vector<AlgebraElem> mb = m.hnf_basis();
  size_t N = mb.size();
  BigInt s = lcm_denominators(hnf_coords(m, AlgebraElem::one(alg)));
  BigRat sinv(BigInt(1), s);
  // cols[j*N + k][i] = (coordinate k of m_i m_j) / s
  std::vector<std::vector<QuadScalar>> cols(N * N, std::vector<QuadScalar>(N));
  BigInt dd = 1;
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      auto coords = hnf_coords(m, alg_mul(mb[i], mb[j]));
      for (size_t k = 0; k < N; ++k) cols[j * N + k][i] = coords[k] * sinv;
    }
  for (const auto& col : cols) dd = lcm_denominators(col, dd);
  ScalarMatrix rows;
  for (auto& col : cols) {
    bool zero = true;
    for (auto& x : col) {
      x *= BigRat(dd);
      if (!x.is_zero()) zero = false;
    }
    if (!zero) rows.push_back(std::move(col));
  }
  Hnf h = hnf_over_center(rows, QuadScalar(c, BigRat(dd)));
  if (h.rows.size() != N) throw Error(ErrorCode::RankDeficient, "left order system lost rank");
  // T = dd * H^{-1}, H upper triangular.
  std::vector<std::vector<QuadScalar>> t(N, std::vector<QuadScalar>(N, QuadScalar::zero(c)));
  for (size_t col = 0; col < N; ++col) {
    // Solve H x = dd e_col by back substitution.
    for (size_t ii = N; ii-- > 0;) {
      QuadScalar acc = ii == col ? QuadScalar(c, BigRat(dd)) : QuadScalar::zero(c);
      for (size_t k = ii + 1; k < N; ++k)
        if (!h.rows[ii][k].is_zero() && !t[k][col].is_zero()) acc -= h.rows[ii][k] * t[k][col];
      t[ii][col] = acc / h.rows[ii][ii];
    }
  }
  std::vector<AlgebraElem> out;
  for (size_t r = 0; r < N; ++r) {
    AlgebraElem b = AlgebraElem::zero(alg);
    for (size_t i = 0; i < N; ++i)
      if (!t[i][r].is_zero()) b += t[i][r] * mb[i];
    out.push_back(b * QuadScalar(c, sinv));
  }
  return OFLattice::span(alg, out);
}

std::pair<OFLattice, SearchTrace> saturate_at_prime(const OFLattice& order, const QuadScalar& p, int budget) {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be at least 1");
  SearchTrace trace;
  trace.prime = canonical_associate(p).canon;
  OFLattice cur = order;
  for (;;) {
    OFLattice rad = radical_preimage(cur, p);
    OFLattice next = left_order(rad);
    if (next == cur) {
      trace.terminated = Termination::Fixpoint;
      return {cur, trace};
    }
    if (!next.contains(cur)) throw Error(ErrorCode::InvalidArgument, "left order does not contain the order");
    if (static_cast<int>(trace.iterations.size()) == budget) {
      trace.terminated = Termination::Budget;
      throw SearchBudgetError("no fixpoint at " + trace.prime.to_string() + " within " + std::to_string(budget) +
                                  " iterations",
                              trace);
    }
    SearchStep step{rad, {}, next, discriminant(next)};
    for (const auto& b : next.basis())
      if (!cur.contains(b)) step.new_generators.push_back(b);
    trace.iterations.push_back(std::move(step));
    cur = next;
  }
}

CompressedBasis CompressedBasis::natural(const AlgPtr& alg) {
  CompressedBasis cb;
  cb.algebra = alg;
  int n = alg->degree();
  const ExtPtr& ext = alg->extension();
  for (int i = 0; i < n; ++i) {
    std::vector<FieldElem> row(n, ext->zero());
    row[i] = ext->one();
    cb.rows.push_back(row);
  }
  return cb;
}

std::vector<AlgebraElem> CompressedBasis::elements() const {
  std::vector<AlgebraElem> out;
  for (const auto& r : rows) out.push_back(AlgebraElem::from_left_coeffs(algebra, r));
  return out;
}

OFLattice CompressedBasis::lattice(const OFLattice* known) const {
  const ExtPtr& ext = algebra->extension();
  std::vector<FieldElem> powers;
  FieldElem z = ext->one();
  for (int k = 0; k < ext->degree(); ++k) {
    powers.push_back(z);
    z = field_mul(z, ext->generator());
  }
  return OFLattice::span(algebra, expand_left(elements(), powers), known);
}

bool CompressedBasis::contains(const AlgebraElem& x) const {
  std::vector<FieldElem> l = left_coeffs(x);
  int n = static_cast<int>(rows.size());
  for (int i = n - 1; i >= 0; --i) {
    if (l[i].is_zero()) continue;
    FieldElem a = field_mul(l[i], field_inv(rows[i][i]));
    if (!a.coeffs_integral()) return false;
    for (int k = 0; k <= i; ++k) l[k] -= field_mul(a, rows[i][k]);
  }
  return true;
}

std::vector<long> CompressedBasis::profile() const {
  std::vector<long> out;
  for (size_t i = 0; i < rows.size(); ++i)
    out.push_back(-valuation_rational(rel_norm(rows[i][i]), one_plus_i()));
  return out;
}

CompressedBasis compressed_radical(const CompressedBasis& order) {
  const AlgPtr& alg = order.algebra;
  const ExtPtr& ext = alg->extension();
  FieldElem pi = ext->one() - ext->generator();
  QuadScalar p = one_plus_i();
  CompressedBasis out;
  out.algebra = alg;
  std::vector<size_t> free_pos;
  for (size_t i = 0; i < order.rows.size(); ++i) {
    Odometer od{2, std::vector<size_t>(free_pos.size(), 0)};
    bool found = false;
    do {
      std::vector<FieldElem> cand = order.rows[i];
      for (size_t k = 0; k < free_pos.size(); ++k)
        if (od.digits[k]) add_into(cand, order.rows[free_pos[k]]);
      if (divides(p, reduced_norm(AlgebraElem::from_left_coeffs(alg, cand)))) {
        out.rows.push_back(cand);
        found = true;
        break;
      }
    } while (od.next());
    if (!found) {
      out.rows.push_back(scale_left(pi, order.rows[i]));
      free_pos.push_back(i);
    }
  }
  return out;
}

std::pair<CompressedBasis, std::vector<int>> compressed_left_order(const CompressedBasis& order,
                                                                   const CompressedBasis& radical) {
  const AlgPtr& alg = order.algebra;
  const ExtPtr& ext = alg->extension();
  int n = ext->degree();
  FieldElem s = field_inv(ext->one() - ext->generator());
  // O_F-basis of the radical, k = 0 first so that most failures show up early.
  std::vector<AlgebraElem> rad_elems;
  FieldElem z = ext->one();
  for (int k = 0; k < n; ++k) {
    for (const auto& r : radical.rows) rad_elems.push_back(AlgebraElem::from_left_coeffs(alg, scale_left(z, r)));
    z = field_mul(z, ext->generator());
  }
  CompressedBasis out;
  out.algebra = alg;
  std::vector<int> enlarged;
  std::vector<size_t> free_pos;
  for (size_t i = 0; i < order.rows.size(); ++i) {
    Odometer od{2, std::vector<size_t>(free_pos.size(), 0)};
    bool found = false;
    do {
      std::vector<FieldElem> cand = order.rows[i];
      for (size_t k = 0; k < free_pos.size(); ++k)
        if (od.digits[k]) add_into(cand, order.rows[free_pos[k]]);
      cand = scale_left(s, cand);
      AlgebraElem b = AlgebraElem::from_left_coeffs(alg, cand);
      bool ok = true;
      for (const auto& r : rad_elems)
        if (!radical.contains(alg_mul(b, r))) {
          ok = false;
          break;
        }
      if (ok) {
        out.rows.push_back(cand);
        enlarged.push_back(static_cast<int>(i));
        found = true;
        break;
      }
    } while (od.next());
    if (!found) {
      out.rows.push_back(order.rows[i]);
      free_pos.push_back(i);
    }
  }
  return {out, enlarged};
}

CompressedResult compressed_saturate(const CompressedBasis& start, int budget) {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be at least 1");
  CompressedResult res;
  res.order = start;
  for (;;) {
    CompressedBasis rad = compressed_radical(res.order);
    auto [next, pos] = compressed_left_order(res.order, rad);
    if (pos.empty()) {
      res.terminated = Termination::Fixpoint;
      return res;
    }
    if (static_cast<int>(res.steps.size()) == budget) {
      res.terminated = Termination::Budget;
      throw Error(ErrorCode::BudgetExhausted, "compressed search found no fixpoint within " + std::to_string(budget) +
                                                  " iterations");
    }
    res.steps.push_back({rad, next, pos});
    res.order = next;
  }
}

Certification certify(const DiscriminantValue& d, CenterId center, int n) {
  Certification c;
  c.bound = make_discriminant(minimal_discriminant(center, n), n);
  if (associates(d.canon, c.bound.canon)) {
    c.status = CertStatus::CertifiedMaximal;
    c.reason = "discriminant equals the minimal discriminant for index " + std::to_string(n);
    return c;
  }
  if (d.factorization && d.factorization->factors.size() == 2) {
    const auto& f = d.factorization->factors;
    unsigned e = static_cast<unsigned>(n * (n - 1));
    if (f[0].exponent == e && f[1].exponent == e) {
      c.status = CertStatus::CertifiedMaximal;
      c.reason = "discriminant is (PQ)^(n(n-1)) for the two ramified primes " + f[0].prime.to_string() + ", " +
                 f[1].prime.to_string();
      return c;
    }
  }
  c.status = CertStatus::ExtremalUncertified;
  c.reason = "discriminant " + d.to_string() + " is neither minimal nor of two-prime form";
  return c;
}

namespace {

SearchTrace trace_from_compressed(const CompressedResult& res, const OFLattice& start, OFLattice& final_order) {
  SearchTrace t;
  t.prime = one_plus_i();
  t.terminated = res.terminated;
  OFLattice cur = start;
  for (const auto& st : res.steps) {
    OFLattice rad = st.radical.lattice(&cur);
    OFLattice next = st.order_after.lattice(&cur);
    SearchStep step{rad, {}, next, discriminant(next)};
    for (int pos : st.enlarged_positions)
      step.new_generators.push_back(AlgebraElem::from_left_coeffs(cur.algebra(), st.order_after.rows[pos]));
    t.iterations.push_back(std::move(step));
    cur = next;
  }
  final_order = cur;
  return t;
}

}  // namespace

MaxOrderResult find_maximal_order(const Fixture& fx, const OFLattice& start, const MaxOrderOptions& opts) {
  if (!fx.algebra) throw Error(ErrorCode::InvalidArgument, "fixture " + fx.name + " has no algebra");
  int n = fx.degree;
  MaxOrderResult res;
  res.order = start;
  if (!start.contains(AlgebraElem::one(fx.algebra)))
    throw Error(ErrorCode::InvalidArgument, "start lattice does not contain 1");
  DiscriminantValue d = discriminant(start);
  if (!d.factorization) throw Error(ErrorCode::FactorBudgetExceeded, "cannot factor " + d.canon.to_string());
  std::vector<PrimePower> primes = d.factorization->factors;
  if (opts.only_prime) {
    QuadScalar op = canonical_associate(*opts.only_prime).canon;
    std::vector<PrimePower> sel;
    for (const auto& pp : primes)
      if (pp.prime == op) sel.push_back(pp);
    primes = sel;
  }
  for (const auto& pp : primes) {
    bool declared = false;
    for (const auto& q : fx.division_primes)
      if (associates(q, pp.prime)) declared = true;
    if (!declared)
      throw Error(ErrorCode::UnsupportedPrime,
                  "no division-algebra contract at " + pp.prime.to_string() + " for fixture " + fx.name);
    if (pp.exponent == static_cast<unsigned>(n * (n - 1)) && !opts.only_prime) {
      SearchTrace t;
      t.prime = pp.prime;
      t.terminated = Termination::AlreadyMinimal;
      res.traces.push_back(t);
      continue;
    }
    bool use_compressed = opts.compressed && fx.cyclotomic_ell >= 3 && associates(pp.prime, one_plus_i()) &&
                          res.order == natural_order(fx.algebra, fx.oe_basis);
    if (use_compressed) {
      CompressedResult cr = compressed_saturate(CompressedBasis::natural(fx.algebra), opts.budget);
      OFLattice fin;
      res.traces.push_back(trace_from_compressed(cr, res.order, fin));
      res.order = fin;
      res.compressed = std::move(cr);
    } else {
      auto [ord, tr] = saturate_at_prime(res.order, pp.prime, opts.budget);
      res.order = ord;
      res.traces.push_back(std::move(tr));
    }
  }
  res.certification = certify(discriminant(res.order), fx.center, n);
  return res;
}

MaxOrderResult find_maximal_order(const Fixture& fx, const MaxOrderOptions& opts) {
  return find_maximal_order(fx, natural_order(fx.algebra, fx.oe_basis), opts);
}

namespace {

// sum c * s^e over the listed terms.
FieldElem s_poly(const FieldElem& s, const std::vector<std::pair<int, long>>& terms) {
  FieldElem acc = s.extension()->zero();
  for (const auto& [e, c] : terms) acc += field_pow(s, static_cast<unsigned>(e)) * QuadScalar(s.center(), c, 0L);
  return acc;
}

}  // namespace

std::vector<AlgebraElem> published_generators(const AlgPtr& alg, int ell) {
  const ExtPtr& ext = alg->extension();
  int n = ext->degree();
  if ((ell != 4 && ell != 5) || n != (1 << (ell - 2)))
    throw Error(ErrorCode::InvalidArgument, "published generators exist for l = 4, 5 only");
  FieldElem s = field_inv(ext->one() - ext->generator());
  auto elem = [&](std::vector<std::vector<std::pair<int, long>>> coeffs) {
    std::vector<FieldElem> c(n, ext->zero());
    for (size_t k = 0; k < coeffs.size(); ++k) c[k] = s_poly(s, coeffs[k]);
    return AlgebraElem(alg, c);
  };
  AlgebraElem u1 = AlgebraElem::one(alg);
  AlgebraElem u2 = elem({{{2, 1}, {3, 1}}, {{3, 1}}});
  if (ell == 4) {
    AlgebraElem u3 = elem({{{4, 1}, {5, 2}, {6, 2}, {8, 1}, {10, 1}}, {{5, 1}, {6, 1}}, {{10, 1}}});
    AlgebraElem u4 = elem({{{1, 1}, {4, 1}, {5, 1}, {8, 1}, {9, 1}, {10, 1}, {11, 1}, {12, 1}, {13, 1}},
                           {{9, 1}, {11, 1}, {13, 1}},
                           {{12, 1}, {13, 1}},
                           {{13, 1}}});
    return {u1, u2, u3, u4};
  }
  AlgebraElem u3 = elem({{{1, 1}, {2, 1}, {4, 1}, {5, 2}, {6, 2}, {8, 1}, {10, 1}}, {{5, 1}, {6, 1}}, {{10, 1}}});
  AlgebraElem u5 = elem({{{1, 1}, {2, 2}, {3, 1}, {4, 2}, {5, 5}, {6, 8}, {7, 8}, {8, 3}, {9, 5}, {10, 6}, {11, 5},
                          {12, 7}, {13, 6}, {14, 7}, {15, 4}, {16, 5}, {18, 2}, {20, 2}, {24, 1}, {28, 1}},
                         {{5, 1}, {6, 2}, {7, 4}, {8, 1}, {9, 1}, {10, 1}, {11, 2}, {12, 2}, {13, 3}, {14, 3}, {15, 1},
                          {16, 3}},
                         {{11, 1}, {14, 2}, {15, 2}, {16, 1}, {18, 1}, {20, 1}},
                         {{15, 1}, {16, 1}},
                         {{28, 1}}});
  AlgebraElem u4 = alg_mul(u2, u3);
  AlgebraElem u6 = alg_mul(u2, u5);
  AlgebraElem u7 = alg_mul(u3, u5);
  AlgebraElem u8 = alg_mul(u4, u5);
  return {u1, u2, u3, u4, u5, u6, u7, u8};
}

RegressionReport regression_basis_check(int ell, const OFLattice& order, const std::vector<long>& profile) {
  RegressionReport rep;
  rep.profile = profile;
  for (long k : profile) rep.profile_sum += k;
  const AlgPtr& alg = order.algebra();
  std::vector<AlgebraElem> pub = published_generators(alg, ell);
  CompressedBasis cb;
  cb.algebra = alg;
  for (const auto& g : pub) cb.rows.push_back(left_coeffs(g));
  OFLattice published = cb.lattice();
  for (size_t i = 0; i < pub.size() && rep.first_mismatch.empty(); ++i)
    if (!order.contains(pub[i])) rep.first_mismatch = "published u" + std::to_string(i + 1) + " is not in the order";
  if (rep.first_mismatch.empty()) {
    auto hb = order.hnf_basis();
    for (size_t i = 0; i < hb.size(); ++i)
      if (!published.contains(hb[i])) {
        rep.first_mismatch = "order basis element " + std::to_string(i) + " is not in the published span";
        break;
      }
  }
  rep.equal = rep.first_mismatch.empty() && published == order;
  return rep;
}

}  // namespace cda
