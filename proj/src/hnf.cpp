#include "cda/hnf.hpp"

namespace cda {

namespace {

using Row = std::vector<QuadScalar>;

bool row_zero(const Row& r) {
  for (const auto& v : r)
    if (!v.is_zero()) return false;
  return true;
}

void reduce_tail(Row& r, size_t from, const std::optional<QuadScalar>& mod) {
  if (!mod) return;
  for (size_t k = from; k < r.size(); ++k)
    if (!r[k].is_zero()) r[k] = euclid_mod(r[k], *mod);
}

// Replaces (acc, other) by a unimodular combination with acc[col] = gcd and
// other[col] = 0.
void combine(Row& acc, Row& other, size_t col, const std::optional<QuadScalar>& mod) {
  const QuadScalar a = acc[col];
  const QuadScalar b = other[col];
  if (b.is_zero()) return;
  if (a.is_zero()) {
    std::swap(acc, other);
    return;
  }
  if (divides(a, b)) {
    QuadScalar q = b / a;
    for (size_t k = col; k < acc.size(); ++k)
      if (!acc[k].is_zero()) other[k] -= q * acc[k];
    reduce_tail(other, col + 1, mod);
    return;
  }
  Bezout bz = xgcd(a, b);
  QuadScalar ag = a / bz.g, bg = b / bz.g;
  for (size_t k = col; k < acc.size(); ++k) {
    QuadScalar x = acc[k], y = other[k];
    acc[k] = bz.s * x + bz.t * y;
    other[k] = ag * y - bg * x;
  }
  reduce_tail(acc, col + 1, mod);
  reduce_tail(other, col + 1, mod);
}

}  // namespace

Hnf hnf_over_center(const ScalarMatrix& input, const std::optional<QuadScalar>& modulus) {
  Hnf out;
  if (input.empty() && !modulus) return out;
  size_t m = input.empty() ? 0 : input[0].size();
  CenterId c = modulus ? modulus->center() : input[0][0].center();
  std::vector<Row> pool;
  for (const auto& r : input) {
    if (r.size() != m) throw Error(ErrorCode::InvalidArgument, "ragged matrix");
    for (const auto& v : r)
      if (!v.is_integral()) throw Error(ErrorCode::NonIntegralEntry, "HNF input entry " + v.to_string());
    Row rr = r;
    reduce_tail(rr, 0, modulus);
    if (!row_zero(rr)) pool.push_back(std::move(rr));
  }
  if (modulus && modulus->is_zero()) throw Error(ErrorCode::InvalidArgument, "zero modulus");
  for (size_t col = 0; col < m; ++col) {
    std::vector<size_t> hits;
    for (size_t i = 0; i < pool.size(); ++i)
      if (!pool[i][col].is_zero()) hits.push_back(i);
    Row acc;
    bool have = false;
    if (modulus) {
      acc.assign(m, QuadScalar::zero(c));
      acc[col] = *modulus;
      have = true;
    }
    for (size_t idx : hits) {
      if (!have) {
        acc = pool[idx];
        pool[idx].assign(m, QuadScalar::zero(c));
        have = true;
        continue;
      }
      combine(acc, pool[idx], col, modulus);
    }
    std::vector<Row> kept;
    for (auto& r : pool)
      if (!row_zero(r)) kept.push_back(std::move(r));
    pool = std::move(kept);
    if (!have || acc[col].is_zero()) continue;
    CanonicalForm cf = canonical_associate(acc[col]);
    if (!cf.unit.is_one()) {
      QuadScalar uinv = cf.unit.inverse();
      for (size_t k = col; k < m; ++k) acc[k] *= uinv;
    }
    out.rows.push_back(std::move(acc));
    out.pivot_cols.push_back(static_cast<int>(col));
  }
  // Reduce entries above each pivot.
  for (size_t r = 0; r < out.rows.size(); ++r) {
    size_t col = static_cast<size_t>(out.pivot_cols[r]);
    const QuadScalar& piv = out.rows[r][col];
    for (size_t i = 0; i < r; ++i) {
      QuadScalar x = out.rows[i][col];
      if (x.is_zero()) continue;
      QuadScalar q = euclid_divmod(x, piv).q;
      if (q.is_zero()) continue;
      for (size_t k = col; k < m; ++k)
        if (!out.rows[r][k].is_zero()) out.rows[i][k] -= q * out.rows[r][k];
    }
  }
  return out;
}

QuadScalar integral_determinant(ScalarMatrix m) {
  size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "determinant of empty matrix");
  CenterId c = m[0][0].center();
  QuadScalar prev = QuadScalar::one(c);
  bool negate = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return QuadScalar::zero(c);
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

std::optional<std::vector<QuadScalar>> solve_echelon(const Hnf& h, std::vector<QuadScalar> v, bool integral) {
  if (v.empty()) return std::vector<QuadScalar>{};
  CenterId c = v[0].center();
  std::vector<QuadScalar> coeffs(h.rows.size(), QuadScalar::zero(c));
  size_t r = 0;
  for (size_t col = 0; col < v.size(); ++col) {
    bool pivot_here = r < h.rows.size() && static_cast<size_t>(h.pivot_cols[r]) == col;
    if (!pivot_here) {
      if (!v[col].is_zero()) return std::nullopt;
      continue;
    }
    if (!v[col].is_zero()) {
      QuadScalar q = v[col] / h.rows[r][col];
      if (integral && !q.is_integral()) return std::nullopt;
      for (size_t k = col; k < v.size(); ++k)
        if (!h.rows[r][k].is_zero()) v[k] -= q * h.rows[r][k];
      coeffs[r] = q;
    }
    ++r;
  }
  return coeffs;
}

}  // namespace cda
