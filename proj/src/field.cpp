#include "cda/field.hpp"

#include <sstream>

namespace cda {

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_mul(const Poly& x, const Poly& y, CenterId c) {
  if (x.empty() || y.empty()) return {};
  Poly out(x.size() + y.size() - 1, QuadScalar::zero(c));
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < y.size(); ++j) {
      if (y[j].is_zero()) continue;
      out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

Poly poly_sub(Poly x, const Poly& y, CenterId c) {
  if (x.size() < y.size()) x.resize(y.size(), QuadScalar::zero(c));
  for (size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
  trim(x);
  return x;
}

// Division with remainder in F[x]; divisor must be nonzero after trimming.
void poly_divmod(Poly a, Poly b, CenterId c, Poly& q, Poly& r) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) {
    q.clear();
    r = a;
    return;
  }
  q.assign(a.size() - b.size() + 1, QuadScalar::zero(c));
  QuadScalar lead_inv = b.back().inverse();
  long db = static_cast<long>(b.size()) - 1;
  for (long k = static_cast<long>(a.size()) - 1; k >= db; --k) {
    QuadScalar t = a[k] * lead_inv;
    long shift = k - db;
    q[shift] = t;
    if (!t.is_zero())
      for (long j = 0; j <= db; ++j) a[shift + j] -= t * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  r = std::move(a);
}

QuadScalar poly_eval_base(const Poly& p, const QuadScalar& x) {
  QuadScalar acc = QuadScalar::zero(x.center());
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

void enumerate_divisors(const ScalarFactorization& f, size_t idx, const QuadScalar& cur,
                        std::vector<QuadScalar>& out) {
  if (idx == f.factors.size()) {
    out.push_back(cur);
    return;
  }
  QuadScalar p = cur;
  for (unsigned e = 0; e <= f.factors[idx].exponent; ++e) {
    enumerate_divisors(f, idx + 1, p, out);
    p *= f.factors[idx].prime;
  }
}

}  // namespace

ExtPtr FieldExtension::create(std::string name, CenterId center, Poly minpoly, Poly sigma_image,
                              std::complex<double> embedding_root) {
  if (minpoly.size() < 2) throw Error(ErrorCode::InvalidFixture, name + ": minimal polynomial of degree < 1");
  int n = static_cast<int>(minpoly.size()) - 1;
  if (!minpoly.back().is_one()) throw Error(ErrorCode::InvalidFixture, name + ": minimal polynomial not monic");
  if (static_cast<int>(sigma_image.size()) != n)
    throw Error(ErrorCode::InvalidFixture, name + ": sigma image must have " + std::to_string(n) + " coefficients");
  for (const auto& c : minpoly)
    if (c.center() != center) throw Error(ErrorCode::CenterMismatch, name + ": minimal polynomial center");
  for (const auto& c : sigma_image)
    if (c.center() != center) throw Error(ErrorCode::CenterMismatch, name + ": sigma image center");
  std::shared_ptr<FieldExtension> ext(new FieldExtension());
  ext->name_ = std::move(name);
  ext->center_ = center;
  ext->n_ = n;
  ext->minpoly_ = std::move(minpoly);
  ext->sigma_image_ = std::move(sigma_image);
  ext->root_ = embedding_root;
  ext->build_tables();
  ext->validate();
  return ext;
}

namespace {

// Product of two reduced coefficient vectors modulo the minimal polynomial.
Poly mulmod(const FieldExtension& ext, const Poly& x, const Poly& y) {
  int n = ext.degree();
  CenterId c = ext.center();
  Poly prod = poly_mul(x, y, c);
  Poly out(n, QuadScalar::zero(c));
  for (size_t k = 0; k < prod.size(); ++k) {
    if (prod[k].is_zero()) continue;
    if (static_cast<int>(k) < n) {
      out[k] += prod[k];
    } else {
      const Poly& red = ext.reduction(static_cast<int>(k) - n);
      for (int j = 0; j < n; ++j)
        if (!red[j].is_zero()) out[j] += prod[k] * red[j];
    }
  }
  return out;
}

Poly unit_vector(int n, int j, CenterId c) {
  Poly v(n, QuadScalar::zero(c));
  v[j] = QuadScalar::one(c);
  return v;
}

Poly eval_at(const FieldExtension& ext, const Poly& p, const Poly& at) {
  int n = ext.degree();
  CenterId c = ext.center();
  Poly acc(n, QuadScalar::zero(c));
  for (size_t k = p.size(); k-- > 0;) {
    acc = mulmod(ext, acc, at);
    acc[0] += p[k];
  }
  return acc;
}

}  // namespace

void FieldExtension::build_tables() {
  int n = n_;
  CenterId c = center_;
  reduce_table_.clear();
  if (n >= 2) {
    Poly r0(n, QuadScalar::zero(c));
    for (int j = 0; j < n; ++j) r0[j] = -minpoly_[j];
    reduce_table_.push_back(r0);
    for (int t = 1; t <= n - 2; ++t) {
      const Poly& prev = reduce_table_.back();
      Poly next(n, QuadScalar::zero(c));
      for (int j = 0; j + 1 < n; ++j) next[j + 1] = prev[j];
      const QuadScalar& top = prev[n - 1];
      if (!top.is_zero())
        for (int j = 0; j < n; ++j) next[j] += top * r0[j];
      reduce_table_.push_back(next);
    }
  } else {
    reduce_table_.push_back(Poly{-minpoly_[0]});
  }
  sigma_table_.assign(n, std::vector<Poly>(n));
  Poly sk = unit_vector(n, n > 1 ? 1 : 0, c);
  if (n == 1) sk = Poly{QuadScalar::one(c)};
  for (int k = 0; k < n; ++k) {
    Poly pw = unit_vector(n, 0, c);
    for (int j = 0; j < n; ++j) {
      sigma_table_[k][j] = pw;
      pw = mulmod(*this, pw, sk);
    }
    if (n > 1) sk = eval_at(*this, sk, sigma_image_);
  }
}

void FieldExtension::validate() const {
  int n = n_;
  CenterId c = center_;
  if (n == 1) return;
  Poly at_sigma = eval_at(*this, minpoly_, sigma_image_);
  for (const auto& v : at_sigma)
    if (!v.is_zero()) throw Error(ErrorCode::InvalidFixture, name_ + ": minpoly(sigma(e)) != 0");
  Poly e = unit_vector(n, 1, c);
  Poly cur = e;
  for (int k = 1; k <= n; ++k) {
    cur = eval_at(*this, cur, sigma_image_);
    bool back = cur == e;
    if (k < n && back) throw Error(ErrorCode::InvalidFixture, name_ + ": sigma has order " + std::to_string(k));
    if (k == n && !back) throw Error(ErrorCode::InvalidFixture, name_ + ": sigma^n != identity");
  }
  if (n <= 4) {
    bool integral = true;
    for (const auto& m : minpoly_) integral = integral && m.is_integral();
    if (minpoly_[0].is_zero()) throw Error(ErrorCode::InvalidFixture, name_ + ": minimal polynomial divisible by x");
    if (integral) {
      ScalarFactorization f = factor_scalar(minpoly_[0]);
      std::vector<QuadScalar> divs;
      enumerate_divisors(f, 0, QuadScalar::one(c), divs);
      for (const auto& d : divs)
        for (const auto& u : units(c))
          if (poly_eval_base(minpoly_, d * u).is_zero())
            throw Error(ErrorCode::InvalidFixture, name_ + ": minimal polynomial has root " + (d * u).to_string());
    }
  }
}

FieldElem FieldExtension::zero() const { return FieldElem(shared_from_this(), Poly(n_, QuadScalar::zero(center_))); }

FieldElem FieldExtension::one() const { return scalar(QuadScalar::one(center_)); }

FieldElem FieldExtension::generator() const {
  if (n_ == 1) throw Error(ErrorCode::InvalidArgument, "degree-1 extension has no proper generator");
  return FieldElem(shared_from_this(), unit_vector(n_, 1, center_));
}

FieldElem FieldExtension::scalar(const QuadScalar& c) const {
  if (c.center() != center_) throw Error(ErrorCode::CenterMismatch, "scalar from another center");
  Poly v(n_, QuadScalar::zero(center_));
  v[0] = c;
  return FieldElem(shared_from_this(), v);
}

FieldElem FieldExtension::from_coeffs(Poly coeffs) const { return FieldElem(shared_from_this(), std::move(coeffs)); }

FieldElem::FieldElem(ExtPtr ext, Poly coeffs) : ext_(std::move(ext)), c_(std::move(coeffs)) {
  if (!ext_) throw Error(ErrorCode::InvalidArgument, "field element without extension");
  int n = ext_->degree();
  if (static_cast<int>(c_.size()) > n) {
    Poly reduced(n, QuadScalar::zero(ext_->center()));
    for (size_t k = 0; k < c_.size(); ++k) {
      if (static_cast<int>(k) < n) {
        reduced[k] += c_[k];
      } else {
        const Poly& red = ext_->reduction(static_cast<int>(k) - n);
        for (int j = 0; j < n; ++j) reduced[j] += c_[k] * red[j];
      }
    }
    c_ = std::move(reduced);
  }
  c_.resize(n, QuadScalar::zero(ext_->center()));
  for (const auto& v : c_)
    if (v.center() != ext_->center()) throw Error(ErrorCode::CenterMismatch, "coefficient from another center");
}

bool FieldElem::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

bool FieldElem::is_one() const { return in_base() && c_[0].is_one(); }

bool FieldElem::in_base() const {
  for (size_t j = 1; j < c_.size(); ++j)
    if (!c_[j].is_zero()) return false;
  return true;
}

bool FieldElem::coeffs_integral() const {
  for (const auto& v : c_)
    if (!v.is_integral()) return false;
  return true;
}

static void require_same_ext(const FieldElem& x, const FieldElem& y) {
  if (x.extension() != y.extension() && x.extension()->name() != y.extension()->name())
    throw Error(ErrorCode::ExtensionMismatch, "elements of different extensions");
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  require_same_ext(*this, o);
  for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  require_same_ext(*this, o);
  for (size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  *this = field_mul(*this, o);
  return *this;
}

FieldElem& FieldElem::operator*=(const QuadScalar& c) {
  for (auto& v : c_) v *= c;
  return *this;
}

FieldElem operator*(const FieldElem& x, const FieldElem& y) { return field_mul(x, y); }

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

std::string FieldElem::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t j = 0; j < c_.size(); ++j) os << (j ? ", " : "") << c_[j].to_string();
  os << "]";
  return os.str();
}

FieldElem field_mul(const FieldElem& x, const FieldElem& y) {
  require_same_ext(x, y);
  return FieldElem(x.extension(), mulmod(*x.extension(), x.coeffs(), y.coeffs()));
}

FieldElem field_inv(const FieldElem& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInverse, "inverse of zero field element");
  const FieldExtension& ext = *x.extension();
  CenterId c = ext.center();
  Poly r0 = ext.minpoly();
  Poly r1 = x.coeffs();
  trim(r1);
  Poly s0;
  Poly s1{QuadScalar::one(c)};
  while (r1.size() > 1) {
    Poly q, r;
    poly_divmod(r0, r1, c, q, r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1, c), c);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw Error(ErrorCode::ZeroInverse, "element shares a factor with the minimal polynomial");
  QuadScalar k = r1[0].inverse();
  for (auto& v : s1) v *= k;
  FieldElem inv(x.extension(), s1);
  if (!field_mul(inv, x).is_one()) throw Error(ErrorCode::ZeroInverse, "inverse check failed");
  return inv;
}

FieldElem field_pow(const FieldElem& x, unsigned e) {
  FieldElem result = x.extension()->one();
  FieldElem base = x;
  while (e) {
    if (e & 1u) result = field_mul(result, base);
    e >>= 1;
    if (e) base = field_mul(base, base);
  }
  return result;
}

FieldElem apply_sigma(const FieldElem& x, int k) {
  const FieldExtension& ext = *x.extension();
  int n = ext.degree();
  k = ((k % n) + n) % n;
  if (k == 0) return x;
  CenterId c = ext.center();
  Poly out(n, QuadScalar::zero(c));
  for (int j = 0; j < n; ++j) {
    if (x.coeff(j).is_zero()) continue;
    const Poly& s = ext.sigma_power(k, j);
    for (int t = 0; t < n; ++t)
      if (!s[t].is_zero()) out[t] += x.coeff(j) * s[t];
  }
  return FieldElem(x.extension(), out);
}

QuadScalar rel_trace(const FieldElem& x) {
  FieldElem acc = x.extension()->zero();
  for (int k = 0; k < x.degree(); ++k) acc += apply_sigma(x, k);
  if (!acc.in_base()) throw Error(ErrorCode::NotRational, "relative trace left higher coefficients");
  return acc.coeff(0);
}

QuadScalar rel_norm(const FieldElem& x) {
  FieldElem acc = x;
  for (int k = 1; k < x.degree(); ++k) acc = field_mul(acc, apply_sigma(x, k));
  if (!acc.in_base()) throw Error(ErrorCode::NotRational, "relative norm left higher coefficients");
  return acc.coeff(0);
}

std::complex<double> embed_complex(const FieldElem& x) {
  std::complex<double> root = x.extension()->embedding_root();
  std::complex<double> acc = 0.0;
  for (int j = x.degree(); j-- > 0;) acc = acc * root + x.coeff(j).to_complex();
  return acc;
}

std::vector<std::vector<QuadScalar>> multiplication_matrix(const FieldElem& x) {
  const FieldExtension& ext = *x.extension();
  int n = ext.degree();
  std::vector<std::vector<QuadScalar>> m(n, std::vector<QuadScalar>(n, QuadScalar::zero(ext.center())));
  for (int j = 0; j < n; ++j) {
    Poly e(n, QuadScalar::zero(ext.center()));
    e[j] = QuadScalar::one(ext.center());
    FieldElem col = field_mul(x, FieldElem(x.extension(), e));
    for (int r = 0; r < n; ++r) m[r][j] = col.coeff(r);
  }
  return m;
}

QuadScalar determinant(std::vector<std::vector<QuadScalar>> m) {
  size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "determinant of empty matrix");
  CenterId c = m[0][0].center();
  QuadScalar det = QuadScalar::one(c);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return QuadScalar::zero(c);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    QuadScalar inv = m[col][col].inverse();
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      QuadScalar f = m[r][col] * inv;
      for (size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

}  // namespace cda
