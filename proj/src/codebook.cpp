#include "cda/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>

#include "cda/maxorder.hpp"

namespace cda {

namespace {

void require_nonzero_member(const OFLattice& order, const AlgebraElem& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroGenerator, "ideal generator is zero");
  if (!order.contains(x)) throw Error(ErrorCode::NotAMember, "ideal generator " + x.to_string() + " not in the order");
}

}  // namespace

OFLattice principal_right_ideal(const OFLattice& order, const AlgebraElem& x) {
  require_nonzero_member(order, x);
  std::vector<AlgebraElem> gens;
  for (const auto& g : order.basis()) gens.push_back(alg_mul(x, g));
  return OFLattice::span(order.algebra(), gens);
}

OFLattice principal_left_ideal(const OFLattice& order, const AlgebraElem& x) {
  require_nonzero_member(order, x);
  std::vector<AlgebraElem> gens;
  for (const auto& g : order.basis()) gens.push_back(alg_mul(g, x));
  return OFLattice::span(order.algebra(), gens);
}

MinDetScale unit_mindet_scale(const OFLattice& ideal, const AlgebraElem& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroGenerator, "ideal generator is zero");
  int n = ideal.algebra()->degree();
  MinDetScale s;
  s.nr_x = reduced_norm(x);
  BigRat nn = s.nr_x.norm();
  s.rho_pow_2n = 1 / nn;
  s.rho = std::pow(nn.get_d(), -1.0 / (2.0 * n));
  return s;
}

std::vector<QuadScalar> uniform_offset(const OFLattice& l, const QuadScalar& c) {
  return std::vector<QuadScalar>(l.basis().size(), c);
}

std::vector<QuadScalar> offset_coordinates(const OFLattice& l, const AlgebraElem& offset) {
  if (static_cast<int>(l.basis().size()) != l.ambient_dim())
    throw Error(ErrorCode::RankDeficient, "coset coordinates need a full basis");
  return lattice_membership(offset, l).coefficients;
}

double Codebook::bits_per_channel_use() const { return std::log2(static_cast<double>(size())) / degree(); }

double Codebook::normalized_min_det() const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < entries.size(); ++a)
    for (size_t b = a + 1; b < entries.size(); ++b)
      best = std::min(best, std::abs((entries[a].matrix - entries[b].matrix).determinant()));
  return best;
}

namespace {

// Numeric matrices of the Z-basis {b_j, theta b_j}.
std::vector<Eigen::MatrixXcd> real_basis_matrices(const OFLattice& l) {
  std::complex<double> th = theta_value(l.algebra()->center());
  std::vector<Eigen::MatrixXcd> v;
  for (const auto& b : l.basis()) {
    Eigen::MatrixXcd m = numeric_matrix(b);
    v.push_back(m);
    v.push_back(m * th);
  }
  return v;
}

std::vector<double> real_offsets(const std::vector<QuadScalar>& off) {
  std::vector<double> o;
  for (const auto& c : off) {
    o.push_back(c.a().get_d());
    o.push_back(c.b().get_d());
  }
  return o;
}

struct Point {
  std::vector<int> c;
  double energy;
};

// All integer c with |c_k| <= box and (c+o)^T G (c+o) <= r2.
std::vector<Point> enumerate_ball(const Eigen::MatrixXd& g, const std::vector<double>& o, double r2, int box) {
  int m = static_cast<int>(g.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NumericallySingular, "coset Gram matrix is not definite");
  Eigen::MatrixXd r = llt.matrixU();
  std::vector<double> qd(m);
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    qd[i] = r(i, i) * r(i, i);
    for (int j = i + 1; j < m; ++j) mu(i, j) = r(i, j) / r(i, i);
  }
  std::vector<Point> out;
  std::vector<int> c(m, 0);
  std::vector<double> y(m, 0.0);
  std::function<void(int, double)> rec = [&](int i, double partial) {
    double center = 0.0;
    for (int j = i + 1; j < m; ++j) center -= mu(i, j) * y[j];
    double slack = r2 - partial;
    if (slack < 0) return;
    double w = std::sqrt(slack / qd[i]);
    long lo = static_cast<long>(std::ceil(center - o[i] - w - 1e-12));
    long hi = static_cast<long>(std::floor(center - o[i] + w + 1e-12));
    lo = std::max<long>(lo, -box);
    hi = std::min<long>(hi, box);
    for (long v = lo; v <= hi; ++v) {
      c[i] = static_cast<int>(v);
      y[i] = v + o[i];
      double t = y[i] - center;
      double e = partial + qd[i] * t * t;
      if (e > r2) continue;
      if (i == 0)
        out.push_back({c, e});
      else
        rec(i - 1, e);
    }
  };
  rec(m - 1, 0.0);
  return out;
}

bool energy_tie(double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::max(a, b)); }

// Energy order with near-equal energies grouped and broken lexicographically.
void sort_points(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.c < b.c;
  });
  size_t s = 0;
  while (s < pts.size()) {
    size_t e = s + 1;
    while (e < pts.size() && energy_tie(pts[e - 1].energy, pts[e].energy)) ++e;
    std::sort(pts.begin() + static_cast<long>(s), pts.begin() + static_cast<long>(e),
              [](const Point& a, const Point& b) { return a.c < b.c; });
    s = e;
  }
}

double ball_volume(int m) { return std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1.0); }

// LLL on a Gram matrix; rows of the result are the reduced basis in the
// coordinates of the original one.
Eigen::MatrixXd lll_transform(const Eigen::MatrixXd& g0, double delta = 0.99) {
  int m = static_cast<int>(g0.rows());
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(m, m);
  auto gram_schmidt = [&](Eigen::MatrixXd& mu, Eigen::VectorXd& bstar) {
    Eigen::MatrixXd g = u * g0 * u.transpose();
    mu.setZero(m, m);
    bstar.resize(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < i; ++j) {
        double v = g(i, j);
        for (int k = 0; k < j; ++k) v -= mu(j, k) * mu(i, k) * bstar(k);
        mu(i, j) = v / bstar(j);
      }
      double v = g(i, i);
      for (int k = 0; k < i; ++k) v -= mu(i, k) * mu(i, k) * bstar(k);
      bstar(i) = v;
    }
  };
  Eigen::MatrixXd mu;
  Eigen::VectorXd bstar;
  int k = 1;
  for (int guard = 0; k < m && guard < 100000; ++guard) {
    gram_schmidt(mu, bstar);
    for (int j = k - 1; j >= 0; --j) {
      double q = std::round(mu(k, j));
      if (q != 0) {
        u.row(k) -= q * u.row(j);
        gram_schmidt(mu, bstar);
      }
    }
    if (bstar(k) < (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar(k - 1)) {
      u.row(k).swap(u.row(k - 1));
      k = std::max(k - 1, 1);
    } else {
      ++k;
    }
  }
  return u;
}

// The `size` lowest points of the coset, enumerated in LLL-reduced
// coordinates bounded by `box`, with shell completeness checked.
std::vector<Point> lowest_points(const Eigen::MatrixXd& g, const std::vector<double>& o, int size, int box) {
  int m = static_cast<int>(g.rows());
  Eigen::MatrixXd u = lll_transform(g);
  Eigen::MatrixXd gr = u * g * u.transpose();
  Eigen::VectorXd t = u.transpose().inverse() * Eigen::Map<const Eigen::VectorXd>(o.data(), m);
  std::vector<double> orr(m);
  Eigen::VectorXd shift(m);
  for (int i = 0; i < m; ++i) {
    shift(i) = std::round(t(i));
    orr[i] = t(i) - shift(i);
  }
  double covol = std::sqrt(gr.determinant());
  double r2 = std::pow(1.5 * size * covol / ball_volume(m), 2.0 / m);
  std::vector<Point> red;
  for (int attempt = 0;; ++attempt) {
    red = enumerate_ball(gr, orr, r2 * (1 + 1e-9), box);
    if (static_cast<int>(red.size()) >= size) break;
    if (attempt > 60) throw Error(ErrorCode::BoxTooSmall, "box " + std::to_string(box) + " holds too few points");
    r2 *= 1.5;
  }
  std::vector<Point> pts;
  pts.reserve(red.size());
  for (const auto& p : red) {
    Eigen::VectorXd cp(m);
    for (int i = 0; i < m; ++i) cp(i) = p.c[i] - shift(i);
    Eigen::VectorXd c = u.transpose() * cp;
    Point q;
    q.c.resize(m);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
      q.c[i] = static_cast<int>(std::lround(c(i)));
      y(i) = q.c[i] + o[i];
    }
    q.energy = y.dot(g * y);
    pts.push_back(std::move(q));
  }
  sort_points(pts);
  double en = pts[static_cast<size_t>(size - 1)].energy;
  // A point with |c_k| > box has |y_k| >= box + 1 - |o_k|, hence energy at
  // least (box + 1 - |o_k|)^2 / (G^-1)_kk; this dominates lambda_min(G) times the same square.
  Eigen::MatrixXd ginv = gr.inverse();
  double floor_energy = std::numeric_limits<double>::infinity();
  int need = 0;
  for (int k = 0; k < m; ++k) {
    double reach = box + 1 - std::abs(orr[k]);
    floor_energy = std::min(floor_energy, reach * reach / ginv(k, k));
    need = std::max(need, static_cast<int>(std::floor(std::sqrt(en * ginv(k, k)) + std::abs(orr[k]) - 1)) + 1);
  }
  if (!(en < floor_energy))
    throw Error(ErrorCode::BoxTooSmall, "shell not complete inside box " + std::to_string(box) + "; need box >= " +
                                            std::to_string(need));
  pts.resize(static_cast<size_t>(size));
  std::vector<std::vector<int>> seen;
  for (const auto& p : pts) seen.push_back(p.c);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw Error(ErrorCode::DuplicatePoints, "duplicate coset point");
  return pts;
}

Codebook build_codebook(const OFLattice& l, const MinDetScale& scale, const std::vector<QuadScalar>& offset,
                        std::vector<Point> pts, const std::string& label, double target) {
  const AlgPtr& alg = l.algebra();
  int n = alg->degree();
  if (target <= 0) target = n * n;
  std::vector<Eigen::MatrixXcd> v = real_basis_matrices(l);
  std::vector<double> o = real_offsets(offset);
  CenterId cid = alg->center();
  Codebook cb;
  cb.label = label;
  cb.algebra = alg;
  cb.scale = scale;
  cb.coset_offset = offset;
  cb.lattice_basis = l.basis();
  double total = 0.0;
  for (auto& p : pts) {
    CodebookEntry e;
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n, n);
    for (size_t k = 0; k < p.c.size(); ++k) mat += v[k] * (p.c[k] + o[k]);
    e.matrix = mat * scale.rho;
    e.energy = e.matrix.squaredNorm();
    AlgebraElem x = AlgebraElem::zero(alg);
    for (size_t j = 0; j < l.basis().size(); ++j) {
      QuadScalar cj = offset[j] + QuadScalar(cid, static_cast<long>(p.c[2 * j]), static_cast<long>(p.c[2 * j + 1]));
      e.coords.push_back(cj);
      x += l.basis()[j] * cj;
    }
    e.element = std::move(x);
    total += e.energy;
    cb.entries.push_back(std::move(e));
  }
  if (cb.entries.empty()) throw Error(ErrorCode::InvalidArgument, "empty codebook");
  cb.mean_energy_before_normalization = total / cb.size();
  cb.normalization = std::sqrt(target / cb.mean_energy_before_normalization);
  for (auto& e : cb.entries) {
    e.matrix *= cb.normalization;
    e.energy = e.matrix.squaredNorm();
  }
  return cb;
}

}  // namespace

Eigen::MatrixXd coset_gram(const OFLattice& l, double rho) {
  std::vector<Eigen::MatrixXcd> v = real_basis_matrices(l);
  int m = static_cast<int>(v.size());
  Eigen::MatrixXd g(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g(a, b) = rho * rho * (v[a].array() * v[b].array().conjugate()).sum().real();
  return g;
}

Codebook select_lowest_energy(const CodebookSpec& spec) {
  if (spec.size < 1) throw Error(ErrorCode::InvalidArgument, "codebook size must be positive");
  if (spec.enum_box < 1) throw Error(ErrorCode::InvalidArgument, "enumeration box must be positive");
  if (spec.coset_offset.size() != spec.lattice.basis().size() ||
      static_cast<int>(spec.lattice.basis().size()) != spec.lattice.ambient_dim())
    throw Error(ErrorCode::InvalidArgument, "offset needs one coordinate per basis element of a full lattice");
  Eigen::MatrixXd g = coset_gram(spec.lattice, spec.scale.rho);
  std::vector<Point> pts = lowest_points(g, real_offsets(spec.coset_offset), spec.size, spec.enum_box);
  return build_codebook(spec.lattice, spec.scale, spec.coset_offset, std::move(pts), spec.label, spec.target_energy);
}

namespace {

using I128 = __int128;

struct IntScalar {
  I128 a = 0, b = 0;
};

IntScalar imul(const IntScalar& x, const IntScalar& y, bool eisenstein) {
  if (!eisenstein) return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
}

I128 inorm(const IntScalar& x, bool eisenstein) {
  return eisenstein ? x.a * x.a - x.a * x.b + x.b * x.b : x.a * x.a + x.b * x.b;
}

IntScalar to_int(const QuadScalar& x) {
  if (!x.is_integral() || !x.a().get_num().fits_slong_p() || !x.b().get_num().fits_slong_p())
    throw Error(ErrorCode::InvalidArgument, "coefficient out of machine range");
  return {x.a().get_num().get_si(), x.b().get_num().get_si()};
}

// Degree two: nr(sum d_j b_j) = sum_{j<=k} q_jk d_j d_k.
ExactMinDet min_det_quadratic(const Codebook& cb) {
  bool eis = cb.algebra->center() == CenterId::EisensteinQomega;
  const auto& b = cb.lattice_basis;
  size_t dim = b.size();
  std::vector<std::vector<QuadScalar>> q(dim, std::vector<QuadScalar>(dim));
  BigInt den = 1;
  for (size_t j = 0; j < dim; ++j) q[j][j] = reduced_norm(b[j]);
  for (size_t j = 0; j < dim; ++j)
    for (size_t k = j + 1; k < dim; ++k) q[j][k] = reduced_norm(b[j] + b[k]) - q[j][j] - q[k][k];
  for (size_t j = 0; j < dim; ++j)
    for (size_t k = j; k < dim; ++k) {
      den = lcm(den, BigInt(q[j][k].a().get_den()));
      den = lcm(den, BigInt(q[j][k].b().get_den()));
    }
  std::vector<std::vector<IntScalar>> qi(dim, std::vector<IntScalar>(dim));
  for (size_t j = 0; j < dim; ++j)
    for (size_t k = j; k < dim; ++k) qi[j][k] = to_int(q[j][k] * BigRat(den));
  std::vector<std::vector<IntScalar>> c;
  for (const auto& e : cb.entries) {
    std::vector<IntScalar> row;
    for (size_t j = 0; j < dim; ++j) row.push_back(to_int(e.coords[j] - cb.coset_offset[j]));
    c.push_back(std::move(row));
  }
  I128 best = -1;
  std::vector<IntScalar> d(dim);
  for (size_t x = 0; x < c.size(); ++x)
    for (size_t y = x + 1; y < c.size(); ++y) {
      for (size_t j = 0; j < dim; ++j) d[j] = {c[x][j].a - c[y][j].a, c[x][j].b - c[y][j].b};
      IntScalar v;
      for (size_t j = 0; j < dim; ++j) {
        if (d[j].a == 0 && d[j].b == 0) continue;
        for (size_t k = j; k < dim; ++k) {
          if (d[k].a == 0 && d[k].b == 0) continue;
          IntScalar t = imul(qi[j][k], imul(d[j], d[k], eis), eis);
          v.a += t.a;
          v.b += t.b;
        }
      }
      I128 nv = inorm(v, eis);
      if (best < 0 || nv < best) best = nv;
    }
  auto to_big = [](I128 v) {
    BigInt hi = static_cast<long>(v >> 62), lo = static_cast<long>(v & ((I128(1) << 62) - 1));
    return BigInt(hi * (BigInt(1) << 62) + lo);
  };
  ExactMinDet out;
  out.squared = BigRat(to_big(best)) / BigRat(den * den) * cb.scale.rho_pow_2n;
  out.squared.canonicalize();
  out.value = std::sqrt(out.squared.get_d());
  return out;
}

}  // namespace

ExactMinDet min_determinant_exact(const Codebook& cb) {
  ExactMinDet out;
  if (cb.size() < 2) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  if (cb.degree() == 2 && cb.lattice_basis.size() == 4) return min_det_quadratic(cb);
  bool first = true;
  for (size_t a = 0; a < cb.entries.size(); ++a)
    for (size_t b = a + 1; b < cb.entries.size(); ++b) {
      BigRat v = reduced_norm(cb.entries[a].element - cb.entries[b].element).norm();
      if (first || v < out.squared) out.squared = v;
      first = false;
    }
  out.squared *= cb.scale.rho_pow_2n;
  out.value = std::sqrt(out.squared.get_d());
  return out;
}

std::vector<QuadScalar> optimize_coset(const OFLattice& l, const MinDetScale& scale, int size, int enum_box) {
  Eigen::MatrixXd g = coset_gram(l, scale.rho);
  size_t dim = l.basis().size();
  CenterId cid = l.algebra()->center();
  std::vector<QuadScalar> best;
  double best_mean = std::numeric_limits<double>::infinity();
  std::vector<QuadScalar> half = {QuadScalar(cid, 0L, 0L), QuadScalar(cid, BigRat(0), BigRat(1, 2)),
                                  QuadScalar(cid, BigRat(1, 2), BigRat(0)), QuadScalar(cid, BigRat(1, 2), BigRat(1, 2))};
  std::vector<size_t> idx(dim, 0);
  while (true) {
    std::vector<QuadScalar> off;
    for (size_t j = 0; j < dim; ++j) off.push_back(half[idx[j]]);
    std::vector<Point> pts = lowest_points(g, real_offsets(off), size, enum_box);
    double mean = 0.0;
    for (const auto& p : pts) mean += p.energy;
    mean /= size;
    if (mean < best_mean * (1 - 1e-10)) {
      best_mean = mean;
      best = off;
    }
    size_t k = dim;
    while (k > 0 && ++idx[k - 1] == half.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return best;
}

std::vector<AlgebraElem> golden_plus_displayed(const AlgPtr& alg) {
  ExtPtr ext = alg->extension();
  CenterId c = alg->center();
  FieldElem l = ext->generator();
  auto s = [&](long a, long b) { return ext->scalar(QuadScalar(c, a, b)); };
  auto q = [&](long a, long b) { return QuadScalar(c, a, b); };
  QuadScalar h(c, BigRat(1, 2), BigRat(0));
  auto mat = [&](FieldElem a, FieldElem b, FieldElem cc, FieldElem d) {
    MatrixOverE m{{a * h, b * h}, {cc * h, d * h}};
    return from_matrix(alg, m);
  };
  std::vector<AlgebraElem> out;
  out.push_back(AlgebraElem::one(alg));
  out.push_back(mat(s(0, 1) + l, s(0, 1) - l * q(0, 1), s(1, 0) + l, s(0, 1) - l));
  out.push_back(mat(l * q(1, -1), s(1, 1), s(1, -1), l * q(-1, 1)));
  out.push_back(mat((s(1, 0) + l) * q(1, -1), (s(1, 0) - l) * q(1, 1), (s(1, 0) + l) * q(1, -1),
                    (s(1, 0) - l) * q(1, -1)));
  return out;
}

AlgebraElem golden_plus_multiplier(const AlgPtr& alg) {
  ExtPtr ext = alg->extension();
  FieldElem l = ext->generator();
  FieldElem a = field_pow(ext->one() - l, 3), b = field_pow(ext->one() + l, 3);
  MatrixOverE m{{a, ext->zero()}, {ext->zero(), b}};
  return from_matrix(alg, m);
}

CodeLattice golden_plus_code_lattice(const FixtureRegistry& reg) {
  const Fixture& fx = reg.get("golden_plus");
  std::vector<AlgebraElem> m = golden_plus_displayed(fx.algebra);
  std::vector<AlgebraElem> gens = {m[0], m[1], m[2], AlgebraElem::u(fx.algebra)};
  CodeLattice cl;
  cl.order = OFLattice::span(fx.algebra, gens);
  MaxOrderResult found = find_maximal_order(fx);
  if (found.order != cl.order)
    throw Error(ErrorCode::MismatchReport, "span{M_1, M_2, M_3, u} differs from the computed maximal order");
  cl.generator = golden_plus_multiplier(fx.algebra);
  cl.ideal = principal_right_ideal(cl.order, cl.generator);
  cl.scale = unit_mindet_scale(cl.ideal, cl.generator);
  return cl;
}

CodeLattice golden_code_lattice(const FixtureRegistry& reg) {
  const Fixture& fx = reg.get("golden");
  CenterId c = fx.algebra->center();
  FieldElem theta = fx.oe_basis.at(1);
  FieldElem alpha = fx.algebra->extension()->scalar(QuadScalar(c, 1L, 1L)) - theta * QuadScalar(c, 0L, 1L);
  CodeLattice cl;
  cl.order = natural_order(fx.algebra, fx.oe_basis);
  cl.generator = AlgebraElem::from_field(fx.algebra, alpha);
  cl.ideal = principal_left_ideal(cl.order, cl.generator);
  cl.scale = unit_mindet_scale(cl.ideal, cl.generator);
  return cl;
}

GoldenMode parse_golden_mode(const std::string& s) {
  if (s == "pam") return GoldenMode::Pam;
  if (s == "coset_optimized" || s == "coset-optimized") return GoldenMode::CosetOptimized;
  throw Error(ErrorCode::InvalidArgument, "unknown golden mode '" + s + "'");
}

int codebook_size_for_rate(int bits_per_cu, int n) {
  if (bits_per_cu < 1 || bits_per_cu * n > 30) throw Error(ErrorCode::InvalidArgument, "unsupported rate");
  return 1 << (bits_per_cu * n);
}

Codebook golden_reference(const FixtureRegistry& reg, int bits_per_cu, GoldenMode mode) {
  if (bits_per_cu < 4 || bits_per_cu > 6) throw Error(ErrorCode::InvalidArgument, "golden reference rates are 4, 5, 6");
  CodeLattice cl = golden_code_lattice(reg);
  int size = codebook_size_for_rate(bits_per_cu);
  CenterId c = cl.ideal.algebra()->center();
  std::string label = "golden_" + std::string(mode == GoldenMode::Pam ? "pam" : "coset") + "_" +
                      std::to_string(bits_per_cu) + "bpcu";
  if (mode == GoldenMode::CosetOptimized) {
    CodebookSpec spec;
    spec.lattice = cl.ideal;
    spec.size = size;
    spec.scale = cl.scale;
    spec.label = label;
    spec.coset_offset = optimize_coset(cl.ideal, cl.scale, size, spec.enum_box);
    Codebook cb = select_lowest_energy(spec);
    cb.min_det = min_determinant_exact(cb);
    return cb;
  }
  std::vector<QuadScalar> off = uniform_offset(cl.ideal, QuadScalar(c, BigRat(1, 2), BigRat(1, 2)));
  int dims = 2 * static_cast<int>(off.size());
  int wide = 2 * (bits_per_cu - 4);
  std::vector<Point> pts;
  std::vector<int> cur(dims);
  std::function<void(int)> rec = [&](int k) {
    if (k == dims) {
      pts.push_back({cur, 0.0});
      return;
    }
    int lo = k < wide ? -2 : -1, hi = k < wide ? 1 : 0;
    for (int v = lo; v <= hi; ++v) {
      cur[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  Eigen::MatrixXd g = coset_gram(cl.ideal, cl.scale.rho);
  std::vector<double> o = real_offsets(off);
  for (auto& p : pts) {
    Eigen::VectorXd y(dims);
    for (int k = 0; k < dims; ++k) y(k) = p.c[k] + o[k];
    p.energy = y.dot(g * y);
  }
  sort_points(pts);
  Codebook cb = build_codebook(cl.ideal, cl.scale, off, std::move(pts), label, 0.0);
  cb.min_det = min_determinant_exact(cb);
  return cb;
}

Codebook golden_plus_codebook(const FixtureRegistry& reg, int bits_per_cu,
                              const std::optional<std::vector<QuadScalar>>& offset) {
  CodeLattice cl = golden_plus_code_lattice(reg);
  CodebookSpec spec;
  spec.lattice = cl.ideal;
  spec.size = codebook_size_for_rate(bits_per_cu);
  spec.scale = cl.scale;
  spec.label = "golden_plus_" + std::to_string(bits_per_cu) + "bpcu";
  spec.coset_offset =
      offset ? *offset : uniform_offset(cl.ideal, QuadScalar(cl.ideal.algebra()->center(), BigRat(1, 2), BigRat(1, 2)));
  Codebook cb = select_lowest_energy(spec);
  cb.min_det = min_determinant_exact(cb);
  return cb;
}

json codebook_to_json(const Codebook& cb) {
  json j;
  j["label"] = cb.label;
  j["algebra"] = cb.algebra->name();
  j["n"] = cb.degree();
  j["size"] = cb.size();
  j["bpcu"] = cb.bits_per_channel_use();
  j["rho"] = cb.scale.rho;
  j["nr_generator"] = scalar_to_json(cb.scale.nr_x);
  j["normalization"] = cb.normalization;
  j["mean_energy"] = cb.mean_energy_before_normalization * cb.normalization * cb.normalization;
  json lb = json::array();
  for (const auto& b : cb.lattice_basis) lb.push_back(algebra_elem_to_json(b));
  j["lattice_basis"] = lb;
  json off = json::array();
  for (const auto& c : cb.coset_offset) off.push_back(scalar_to_json(c));
  j["coset"] = off;
  if (cb.min_det) {
    j["min_det"] = {{"infinite", cb.min_det->infinite},
                    {"squared", cb.min_det->squared.get_str()},
                    {"value", cb.min_det->infinite ? -1.0 : cb.min_det->value}};
  }
  json entries = json::array();
  for (const auto& e : cb.entries) {
    json je;
    json coords = json::array();
    for (const auto& c : e.coords) coords.push_back(scalar_to_json(c));
    je["coords_exact"] = coords;
    json m = json::array();
    for (int r = 0; r < e.matrix.rows(); ++r)
      for (int c = 0; c < e.matrix.cols(); ++c) {
        m.push_back(e.matrix(r, c).real());
        m.push_back(e.matrix(r, c).imag());
      }
    je["matrix_re_im_rowmajor"] = m;
    je["energy"] = e.energy;
    entries.push_back(je);
  }
  j["entries"] = entries;
  return j;
}

void write_codebook_binary(const Codebook& cb, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  std::vector<double> buf = {static_cast<double>(cb.size()), static_cast<double>(cb.degree())};
  for (const auto& e : cb.entries)
    for (int r = 0; r < e.matrix.rows(); ++r)
      for (int c = 0; c < e.matrix.cols(); ++c) {
        buf.push_back(e.matrix(r, c).real());
        buf.push_back(e.matrix(r, c).imag());
      }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path);
}

double NumericCodebook::bits_per_channel_use() const {
  return std::log2(static_cast<double>(matrices.size())) / n;
}

NumericCodebook numeric_codebook(const Codebook& cb) {
  NumericCodebook nc;
  nc.label = cb.label;
  nc.n = cb.degree();
  for (const auto& e : cb.entries) nc.matrices.push_back(e.matrix);
  return nc;
}

NumericCodebook read_codebook_binary(const std::string& path, const std::string& label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  double hdr[2];
  if (!in.read(reinterpret_cast<char*>(hdr), sizeof(hdr))) throw Error(ErrorCode::Io, "truncated header in " + path);
  NumericCodebook nc;
  nc.label = label.empty() ? path : label;
  long size = std::lround(hdr[0]);
  nc.n = static_cast<int>(std::lround(hdr[1]));
  if (size < 1 || nc.n < 1) throw Error(ErrorCode::Io, "bad header in " + path);
  std::vector<double> buf(static_cast<size_t>(2 * nc.n * nc.n));
  for (long k = 0; k < size; ++k) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double))))
      throw Error(ErrorCode::Io, "truncated matrix data in " + path);
    Eigen::MatrixXcd m(nc.n, nc.n);
    for (int r = 0; r < nc.n; ++r)
      for (int c = 0; c < nc.n; ++c) m(r, c) = {buf[2 * (r * nc.n + c)], buf[2 * (r * nc.n + c) + 1]};
    nc.matrices.push_back(m);
  }
  return nc;
}

NumericCodebook numeric_codebook_from_json(const json& j) {
  NumericCodebook nc;
  nc.label = j.value("label", std::string("codebook"));
  nc.n = j.at("n").get<int>();
  for (const auto& e : j.at("entries")) {
    const auto& v = e.at("matrix_re_im_rowmajor");
    if (static_cast<int>(v.size()) != 2 * nc.n * nc.n) throw Error(ErrorCode::Io, "matrix entry has wrong length");
    Eigen::MatrixXcd m(nc.n, nc.n);
    for (int r = 0; r < nc.n; ++r)
      for (int c = 0; c < nc.n; ++c)
        m(r, c) = {v[2 * (r * nc.n + c)].get<double>(), v[2 * (r * nc.n + c) + 1].get<double>()};
    nc.matrices.push_back(m);
  }
  return nc;
}

}  // namespace cda
