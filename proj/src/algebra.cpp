#include "cda/algebra.hpp"

#include <random>
#include <sstream>

namespace cda {

AlgPtr Algebra::create(std::string name, ExtPtr ext, QuadScalar gamma) {
  if (!ext) throw Error(ErrorCode::InvalidArgument, "algebra without extension");
  if (gamma.center() != ext->center()) throw Error(ErrorCode::CenterMismatch, "gamma from another center");
  if (gamma.is_zero()) throw Error(ErrorCode::InvalidArgument, "gamma must be nonzero");
  std::shared_ptr<Algebra> a(new Algebra());
  a->name_ = std::move(name);
  a->ext_ = std::move(ext);
  a->gamma_ = std::move(gamma);
  return a;
}

AlgebraElem::AlgebraElem(AlgPtr alg, std::vector<FieldElem> coords) : alg_(std::move(alg)), x_(std::move(coords)) {
  if (!alg_) throw Error(ErrorCode::InvalidArgument, "algebra element without algebra");
  if (static_cast<int>(x_.size()) != alg_->degree())
    throw Error(ErrorCode::InvalidArgument, "algebra element needs " + std::to_string(alg_->degree()) + " coordinates");
}

AlgebraElem AlgebraElem::zero(const AlgPtr& alg) {
  return AlgebraElem(alg, std::vector<FieldElem>(alg->degree(), alg->extension()->zero()));
}

AlgebraElem AlgebraElem::one(const AlgPtr& alg) { return from_scalar(alg, QuadScalar::one(alg->center())); }

AlgebraElem AlgebraElem::u(const AlgPtr& alg) { return u_power(alg, 1 % alg->degree()); }

AlgebraElem AlgebraElem::u_power(const AlgPtr& alg, int k) {
  int n = alg->degree();
  if (k < 0 || k >= n) throw Error(ErrorCode::InvalidArgument, "u power out of range");
  AlgebraElem r = zero(alg);
  r.x_[k] = alg->extension()->one();
  return r;
}

AlgebraElem AlgebraElem::from_field(const AlgPtr& alg, const FieldElem& x) {
  AlgebraElem r = zero(alg);
  r.x_[0] = x;
  return r;
}

AlgebraElem AlgebraElem::from_scalar(const AlgPtr& alg, const QuadScalar& c) {
  return from_field(alg, alg->extension()->scalar(c));
}

AlgebraElem AlgebraElem::from_left_coeffs(const AlgPtr& alg, const std::vector<FieldElem>& c) {
  AlgebraElem r = zero(alg);
  for (size_t k = 0; k < c.size(); ++k) r.x_[k] = apply_sigma(c[k], static_cast<int>(k));
  return r;
}

bool AlgebraElem::is_zero() const {
  for (const auto& x : x_)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<QuadScalar> AlgebraElem::ambient_coords() const {
  std::vector<QuadScalar> v;
  v.reserve(x_.size() * x_.size());
  for (const auto& x : x_)
    for (const auto& c : x.coeffs()) v.push_back(c);
  return v;
}

AlgebraElem AlgebraElem::from_ambient(const AlgPtr& alg, const std::vector<QuadScalar>& v) {
  int n = alg->degree();
  if (static_cast<int>(v.size()) != n * n) throw Error(ErrorCode::InvalidArgument, "ambient vector has wrong length");
  std::vector<FieldElem> xs;
  for (int i = 0; i < n; ++i)
    xs.push_back(alg->extension()->from_coeffs(Poly(v.begin() + i * n, v.begin() + (i + 1) * n)));
  return AlgebraElem(alg, std::move(xs));
}

static void require_same_alg(const AlgebraElem& a, const AlgebraElem& b) {
  if (a.algebra() != b.algebra() && a.algebra()->name() != b.algebra()->name())
    throw Error(ErrorCode::AlgebraMismatch, "elements of different algebras");
}

AlgebraElem& AlgebraElem::operator+=(const AlgebraElem& o) {
  require_same_alg(*this, o);
  for (size_t i = 0; i < x_.size(); ++i) x_[i] += o.x_[i];
  return *this;
}

AlgebraElem& AlgebraElem::operator-=(const AlgebraElem& o) {
  require_same_alg(*this, o);
  for (size_t i = 0; i < x_.size(); ++i) x_[i] -= o.x_[i];
  return *this;
}

AlgebraElem& AlgebraElem::operator*=(const QuadScalar& c) {
  for (auto& x : x_) x *= c;
  return *this;
}

AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b) { return alg_mul(a, b); }

AlgebraElem AlgebraElem::operator-() const {
  AlgebraElem r = *this;
  for (auto& x : r.x_) x = -x;
  return r;
}

std::string AlgebraElem::to_string() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < x_.size(); ++i) os << (i ? ", " : "") << x_[i].to_string();
  os << "}";
  return os.str();
}

AlgebraElem alg_mul(const AlgebraElem& a, const AlgebraElem& b) {
  require_same_alg(a, b);
  const AlgPtr& alg = a.algebra();
  int n = alg->degree();
  AlgebraElem r = AlgebraElem::zero(alg);
  std::vector<FieldElem> out(n, alg->extension()->zero());
  for (int j = 0; j < n; ++j) {
    if (b.coord(j).is_zero()) continue;
    for (int i = 0; i < n; ++i) {
      if (a.coord(i).is_zero()) continue;
      FieldElem term = field_mul(apply_sigma(a.coord(i), j), b.coord(j));
      if (i + j >= n) term *= alg->gamma();
      out[(i + j) % n] += term;
    }
  }
  return AlgebraElem(alg, std::move(out));
}

AlgebraElem alg_pow(const AlgebraElem& a, unsigned e) {
  AlgebraElem result = AlgebraElem::one(a.algebra());
  AlgebraElem base = a;
  while (e) {
    if (e & 1u) result = alg_mul(result, base);
    e >>= 1;
    if (e) base = alg_mul(base, base);
  }
  return result;
}

AlgebraElem left_mul(const FieldElem& c, const AlgebraElem& a) {
  std::vector<FieldElem> out;
  for (int i = 0; i < a.degree(); ++i) out.push_back(field_mul(apply_sigma(c, i), a.coord(i)));
  return AlgebraElem(a.algebra(), std::move(out));
}

MatrixOverE matrix_rep(const AlgebraElem& a) {
  const AlgPtr& alg = a.algebra();
  int n = alg->degree();
  MatrixOverE m(n, std::vector<FieldElem>(n));
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      FieldElem v = apply_sigma(a.coord(((r - c) % n + n) % n), c);
      if (r < c) v *= alg->gamma();
      m[r][c] = std::move(v);
    }
  }
  return m;
}

MatrixOverE matrix_mul(const MatrixOverE& a, const MatrixOverE& b) {
  size_t n = a.size();
  MatrixOverE out(n, std::vector<FieldElem>(n));
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      FieldElem acc = a[r][0].extension()->zero();
      for (size_t k = 0; k < n; ++k) acc += field_mul(a[r][k], b[k][c]);
      out[r][c] = std::move(acc);
    }
  return out;
}

AlgebraElem from_matrix(const AlgPtr& alg, const MatrixOverE& m) {
  int n = alg->degree();
  if (static_cast<int>(m.size()) != n) throw Error(ErrorCode::NotARepresentation, "matrix has wrong size");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::NotARepresentation, "matrix is not square");
  std::vector<FieldElem> xs;
  for (int i = 0; i < n; ++i) xs.push_back(m[i][0]);
  AlgebraElem a(alg, std::move(xs));
  if (matrix_rep(a) != m) throw Error(ErrorCode::NotARepresentation, "matrix is not in the image of matrix_rep");
  return a;
}

FieldElem determinant_over_e(MatrixOverE m) {
  size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "determinant of empty matrix");
  const ExtPtr& ext = m[0][0].extension();
  bool negate = false;
  FieldElem prev_inv = ext->one();
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return ext->zero();
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        FieldElem v = field_mul(m[k][k], m[i][j]) - field_mul(m[i][k], m[k][j]);
        m[i][j] = field_mul(v, prev_inv);
      }
    }
    prev_inv = field_inv(m[k][k]);
  }
  FieldElem d = m[n - 1][n - 1];
  return negate ? -d : d;
}

QuadScalar reduced_norm(const AlgebraElem& a) {
  FieldElem d = determinant_over_e(matrix_rep(a));
  if (!d.in_base()) throw Error(ErrorCode::NotInCenter, "reduced norm outside the center: " + d.to_string());
  return d.coeff(0);
}

QuadScalar reduced_trace(const AlgebraElem& a) {
  FieldElem acc = a.algebra()->extension()->zero();
  for (int c = 0; c < a.degree(); ++c) acc += apply_sigma(a.coord(0), c);
  if (!acc.in_base()) throw Error(ErrorCode::NotInCenter, "reduced trace outside the center");
  return acc.coeff(0);
}

Eigen::MatrixXcd numeric_matrix(const AlgebraElem& a) {
  MatrixOverE m = matrix_rep(a);
  int n = a.degree();
  Eigen::MatrixXcd out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = embed_complex(m[r][c]);
  return out;
}

DivisionSanityReport division_sanity_sample(const AlgPtr& alg, std::uint64_t trials, std::uint64_t seed,
                                            int coeff_bound) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> dist(-coeff_bound, coeff_bound);
  int n = alg->degree();
  CenterId c = alg->center();
  DivisionSanityReport rep;
  rep.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<QuadScalar> v;
    for (int k = 0; k < n * n; ++k) v.push_back(QuadScalar(c, dist(gen), dist(gen)));
    AlgebraElem a = AlgebraElem::from_ambient(alg, v);
    if (a.is_zero()) continue;
    if (reduced_norm(a).is_zero()) rep.zero_norm_elements.push_back(a);
  }
  return rep;
}

}  // namespace cda
