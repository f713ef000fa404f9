#include "cda/lattice.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace cda {

namespace {

BigInt scalar_denominator(const QuadScalar& x) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), x.a().get_den_mpz_t(), x.b().get_den_mpz_t());
  return l;
}

std::vector<QuadScalar> scaled_coords(const AlgebraElem& x, const BigInt& d) {
  std::vector<QuadScalar> v = x.ambient_coords();
  BigRat dr(d);
  for (auto& c : v) c *= dr;
  return v;
}

void require_algebra(const AlgPtr& alg, const AlgebraElem& x) {
  if (x.algebra() != alg && x.algebra()->name() != alg->name())
    throw Error(ErrorCode::AlgebraMismatch, "element of algebra " + x.algebra()->name() + " in lattice over " + alg->name());
}

// Gaussian elimination for sum_k c_k rows[k] = v over F.
std::optional<std::vector<QuadScalar>> solve_over_f(const std::vector<std::vector<QuadScalar>>& rows,
                                                    const std::vector<QuadScalar>& v) {
  size_t k = rows.size(), m = v.size();
  CenterId c = v[0].center();
  // Column-major system: unknowns c_0..c_{k-1}, equations per coordinate.
  std::vector<std::vector<QuadScalar>> a(m, std::vector<QuadScalar>(k + 1, QuadScalar::zero(c)));
  for (size_t r = 0; r < m; ++r) {
    for (size_t j = 0; j < k; ++j) a[r][j] = rows[j][r];
    a[r][k] = v[r];
  }
  std::vector<size_t> pivcol;
  size_t row = 0;
  for (size_t col = 0; col < k && row < m; ++col) {
    size_t p = row;
    while (p < m && a[p][col].is_zero()) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    QuadScalar inv = a[row][col].inverse();
    for (size_t j = col; j <= k; ++j) a[row][j] *= inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      QuadScalar f = a[r][col];
      for (size_t j = col; j <= k; ++j)
        if (!a[row][j].is_zero()) a[r][j] -= f * a[row][j];
    }
    pivcol.push_back(col);
    ++row;
  }
  for (size_t r = row; r < m; ++r)
    if (!a[r][k].is_zero()) return std::nullopt;
  std::vector<QuadScalar> out(k, QuadScalar::zero(c));
  for (size_t i = 0; i < pivcol.size(); ++i) out[pivcol[i]] = a[i][k];
  return out;
}

}  // namespace

OFLattice OFLattice::span(const AlgPtr& alg, const std::vector<AlgebraElem>& gens, const OFLattice* known) {
  if (!alg) throw Error(ErrorCode::InvalidArgument, "lattice without algebra");
  size_t dim = static_cast<size_t>(alg->degree() * alg->degree());
  CenterId c = alg->center();
  BigInt d = 1;
  for (const auto& g : gens) {
    require_algebra(alg, g);
    for (const auto& x : g.ambient_coords()) {
      BigInt dx = scalar_denominator(x);
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), dx.get_mpz_t());
    }
  }
  if (known) {
    if (known->algebra() != alg && known->algebra()->name() != alg->name())
      throw Error(ErrorCode::AlgebraMismatch, "sublattice over another algebra");
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), known->denominator().get_mpz_t());
  }
  ScalarMatrix rows;
  std::optional<QuadScalar> modulus;
  if (known && known->full_rank()) {
    BigInt scale = d / known->denominator();
    QuadScalar mod = QuadScalar::one(c);
    for (size_t r = 0; r < known->hnf().rows.size(); ++r) {
      auto row = known->hnf().rows[r];
      for (auto& x : row) x *= BigRat(scale);
      mod *= row[r];
      rows.push_back(std::move(row));
    }
    modulus = mod;
  }
  for (const auto& g : gens) rows.push_back(scaled_coords(g, d));
  if (!modulus && gens.size() >= dim && dim > 0) {
    ScalarMatrix head(rows.begin(), rows.begin() + static_cast<long>(dim));
    QuadScalar det = integral_determinant(head);
    if (!det.is_zero()) modulus = canonical_associate(det).canon;
  }
  OFLattice l;
  l.alg_ = alg;
  if (rows.empty()) {
    l.den_ = 1;
    return l;
  }
  l.hnf_ = hnf_over_center(rows, modulus);
  // Make D minimal.
  BigInt g = d;
  for (const auto& row : l.hnf_.rows)
    for (const auto& x : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.a().get_num_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.b().get_num_mpz_t());
    }
  if (g != 1) {
    BigRat inv(BigInt(1), g);
    for (auto& row : l.hnf_.rows)
      for (auto& x : row) x *= inv;
  }
  l.den_ = d / g;
  if (gens.size() == l.hnf_.rows.size() && !known)
    l.basis_ = gens;
  else
    l.basis_ = l.hnf_basis();
  return l;
}

OFLattice OFLattice::from_hnf_rows(const AlgPtr& alg, const BigInt& denominator, const ScalarMatrix& rows) {
  std::vector<AlgebraElem> gens;
  BigRat inv(BigInt(1), denominator);
  for (const auto& r : rows) {
    auto v = r;
    for (auto& x : v) x *= inv;
    gens.push_back(AlgebraElem::from_ambient(alg, v));
  }
  OFLattice l = span(alg, gens);
  l.basis_ = l.hnf_basis();
  return l;
}

std::vector<AlgebraElem> OFLattice::hnf_basis() const {
  std::vector<AlgebraElem> out;
  BigRat inv(BigInt(1), den_);
  for (const auto& r : hnf_.rows) {
    auto v = r;
    for (auto& x : v) x *= inv;
    out.push_back(AlgebraElem::from_ambient(alg_, v));
  }
  return out;
}

bool OFLattice::contains(const AlgebraElem& x) const {
  require_algebra(alg_, x);
  auto v = scaled_coords(x, den_);
  for (const auto& c : v)
    if (!c.is_integral()) return false;
  return solve_echelon(hnf_, std::move(v), true).has_value();
}

bool OFLattice::contains(const OFLattice& sub) const {
  for (const auto& b : sub.hnf_basis())
    if (!contains(b)) return false;
  return true;
}

QuadScalar OFLattice::basis_determinant() const {
  if (!full_rank()) throw Error(ErrorCode::RankDeficient, "determinant of a rank-deficient lattice");
  CenterId c = alg_->center();
  QuadScalar d = QuadScalar::one(c);
  for (size_t r = 0; r < hnf_.rows.size(); ++r) d *= hnf_.rows[r][r];
  BigInt dn;
  mpz_pow_ui(dn.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(ambient_dim()));
  return d * BigRat(BigInt(1), dn);
}

bool operator==(const OFLattice& a, const OFLattice& b) {
  if (a.alg_ != b.alg_ && (!a.alg_ || !b.alg_ || a.alg_->name() != b.alg_->name())) return false;
  return a.den_ == b.den_ && a.hnf_.rows == b.hnf_.rows;
}

std::vector<AlgebraElem> expand_left(const std::vector<AlgebraElem>& gens, const std::vector<FieldElem>& ring_basis) {
  std::vector<AlgebraElem> out;
  for (const auto& g : gens)
    for (const auto& c : ring_basis) out.push_back(left_mul(c, g));
  return out;
}

OFLattice natural_order(const AlgPtr& alg, const std::vector<FieldElem>& oe_basis) {
  int n = alg->degree();
  if (!alg->gamma().is_integral())
    throw Error(ErrorCode::NonIntegralGamma, "gamma = " + alg->gamma().to_string() + " is not integral");
  if (static_cast<int>(oe_basis.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "O_E basis needs " + std::to_string(n) + " elements");
  std::vector<AlgebraElem> gens;
  for (const auto& b : oe_basis)
    for (int i = 0; i < n; ++i) {
      AlgebraElem e = AlgebraElem::zero(alg);
      std::vector<FieldElem> xs = e.coords();
      xs[i] = b;
      gens.emplace_back(alg, std::move(xs));
    }
  return OFLattice::span(alg, gens);
}

Membership lattice_membership(const AlgebraElem& x, const OFLattice& l) {
  if (!l.full_rank()) throw Error(ErrorCode::RankDeficient, "membership needs a full-rank lattice");
  require_algebra(l.algebra(), x);
  std::vector<std::vector<QuadScalar>> rows;
  for (const auto& b : l.basis()) rows.push_back(b.ambient_coords());
  auto sol = solve_over_f(rows, x.ambient_coords());
  Membership m;
  if (!sol) return m;
  m.coefficients = *sol;
  m.member = true;
  for (const auto& c : m.coefficients)
    if (!c.is_integral()) m.member = false;
  return m;
}

std::string DiscriminantValue::to_string() const {
  std::ostringstream os;
  os << canon.to_string();
  if (factorization) os << " = " << factorization->to_string();
  os << ", norm " << norm.get_str();
  return os.str();
}

DiscriminantValue make_discriminant(const QuadScalar& d, int degree) {
  DiscriminantValue v;
  v.degree = degree;
  if (d.is_zero()) {
    v.canon = d;
    v.norm = 0;
    return v;
  }
  v.canon = canonical_associate(d).canon;
  v.norm = v.canon.norm();
  if (v.canon.is_integral()) {
    try {
      v.factorization = factor_scalar(v.canon);
    } catch (const Error&) {
    }
  }
  return v;
}

QuadScalar ambient_trace_determinant(const AlgPtr& alg) {
  static std::mutex mu;
  static std::map<const Algebra*, std::pair<std::weak_ptr<const Algebra>, QuadScalar>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(alg.get());
    if (it != cache.end() && !it->second.first.expired() && it->second.first.lock() == alg) return it->second.second;
  }
  int n = alg->degree();
  const ExtPtr& ext = alg->extension();
  std::vector<AlgebraElem> mono;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly p(n, QuadScalar::zero(alg->center()));
      p[j] = QuadScalar::one(alg->center());
      AlgebraElem e = AlgebraElem::zero(alg);
      std::vector<FieldElem> xs = e.coords();
      xs[i] = ext->from_coeffs(p);
      mono.emplace_back(alg, std::move(xs));
    }
  QuadScalar d = discriminant_of_basis(mono);
  std::lock_guard<std::mutex> lock(mu);
  cache[alg.get()] = {alg, d};
  return d;
}

QuadScalar discriminant_of_basis(const std::vector<AlgebraElem>& basis) {
  size_t m = basis.size();
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "empty basis");
  std::vector<std::vector<QuadScalar>> t(m, std::vector<QuadScalar>(m));
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a; b < m; ++b) {
      QuadScalar v = reduced_trace(alg_mul(basis[a], basis[b]));
      t[a][b] = v;
      t[b][a] = v;
    }
  return determinant(t);
}

DiscriminantValue discriminant(const OFLattice& l) {
  if (!l.full_rank()) throw Error(ErrorCode::RankDeficient, "discriminant of a rank-deficient lattice");
  QuadScalar b = l.basis_determinant();
  return make_discriminant(b * b * ambient_trace_determinant(l.algebra()), l.algebra()->degree());
}

QuadScalar natural_discriminant_formula(const QuadScalar& d_ef, const QuadScalar& gamma, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  QuadScalar v = pow(d_ef, static_cast<unsigned>(n)) * pow(gamma, static_cast<unsigned>(n * (n - 1)));
  return canonical_associate(v).canon;
}

QuadScalar cyclotomic_relative_discriminant(int ell) {
  if (ell < 2) throw Error(ErrorCode::InvalidArgument, "ell must be at least 2");
  unsigned n = 1u << (ell - 2);
  return canonical_associate(pow(QuadScalar(CenterId::GaussQi, 1L, 1L), 2 * n * static_cast<unsigned>(ell - 2))).canon;
}

GramReal gram_and_measure_numeric(const OFLattice& l) {
  if (!l.full_rank()) throw Error(ErrorCode::RankDeficient, "Gram matrix of a rank-deficient lattice");
  int n = l.algebra()->degree();
  int dim = 2 * n * n;
  std::complex<double> th = theta_value(l.algebra()->center());
  Eigen::MatrixXd v(dim, dim);
  int row = 0;
  for (const auto& b : l.basis()) {
    Eigen::MatrixXcd m = numeric_matrix(b);
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::MatrixXcd mm = pass == 0 ? m : Eigen::MatrixXcd(th * m);
      int col = 0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          v(row, col++) = mm(r, c).real();
          v(row, col++) = mm(r, c).imag();
        }
      ++row;
    }
  }
  GramReal out;
  out.gram = v * v.transpose();
  double det_v = v.fullPivLu().determinant();
  double det_g = det_v * det_v;
  if (!(det_g >= 1e-30)) throw Error(ErrorCode::NumericallySingular, "Gram determinant below 1e-30");
  out.measure = std::abs(det_v);
  return out;
}

BigInt index_from_discriminants(const DiscriminantValue& d_sub, const DiscriminantValue& d_super) {
  if (d_super.canon.is_zero() || !divides(d_super.canon, d_sub.canon))
    throw Error(ErrorCode::NotDivisible, d_super.canon.to_string() + " does not divide " + d_sub.canon.to_string());
  BigRat ratio = d_sub.norm / d_super.norm;
  BigRat root;
  if (!rational_sqrt(ratio, root) || root.get_den() != 1)
    throw Error(ErrorCode::NotASquare, "norm ratio " + ratio.get_str() + " is not a square");
  return root.get_num();
}

QuadScalar module_index_from_discriminants(const DiscriminantValue& d_sub, const DiscriminantValue& d_super) {
  if (d_super.canon.is_zero() || !divides(d_super.canon, d_sub.canon))
    throw Error(ErrorCode::NotDivisible, d_super.canon.to_string() + " does not divide " + d_sub.canon.to_string());
  QuadScalar q = exact_div(d_sub.canon, d_super.canon);
  ScalarFactorization f = factor_scalar(q);
  QuadScalar r = QuadScalar::one(q.center());
  for (const auto& pp : f.factors) {
    if (pp.exponent % 2 != 0)
      throw Error(ErrorCode::NotASquare, "quotient " + f.to_string() + " is not a square up to units");
    r *= pow(pp.prime, pp.exponent / 2);
  }
  return canonical_associate(r).canon;
}

OrderCheck is_order(const OFLattice& l) {
  OrderCheck out;
  if (!l.full_rank()) throw Error(ErrorCode::RankDeficient, "order check on a rank-deficient lattice");
  AlgebraElem one = AlgebraElem::one(l.algebra());
  if (!l.contains(one)) {
    out.witness = one;
    out.reason = "1 is not in the lattice";
    return out;
  }
  const auto& b = l.basis();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      AlgebraElem p = alg_mul(b[i], b[j]);
      if (!l.contains(p)) {
        out.witness = p;
        out.reason = "basis[" + std::to_string(i) + "] * basis[" + std::to_string(j) + "] is not in the lattice";
        return out;
      }
    }
  out.is_order = true;
  return out;
}

}  // namespace cda
