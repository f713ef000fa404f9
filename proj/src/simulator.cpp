#include "cda/simulator.hpp"

#include <cmath>
#include <iomanip>
#include <thread>

#include "cda/rng.hpp"

namespace cda {

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = errors / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (errors == 0) iv.lo = 0.0;
  if (errors == trials) iv.hi = 1.0;
  return iv;
}

MlDecoder::MlDecoder(const NumericCodebook& cb) : n_(cb.n), count_(static_cast<int>(cb.matrices.size())) {
  if (cb.matrices.empty()) throw Error(ErrorCode::InvalidArgument, "empty codebook");
  auto push = [](std::vector<double>& v, const Eigen::MatrixXcd& m) {
    for (int c = 0; c < m.cols(); ++c)
      for (int r = 0; r < m.rows(); ++r) {
        v.push_back(m(r, c).real());
        v.push_back(m(r, c).imag());
      }
  };
  for (const auto& x : cb.matrices) {
    if (x.rows() != n_ || x.cols() != n_) throw Error(ErrorCode::InvalidArgument, "codeword has wrong shape");
    push(x_, x);
    push(outer_, x * x.adjoint());
  }
}

int MlDecoder::decode(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, double a) const {
  // ||Y - aHX||^2 = ||Y||^2 - 2a Re<H^H Y, X> + a^2 Re sum G_ij conj((XX^H)_ij), G = H^H H.
  Eigen::MatrixXcd z = h.adjoint() * y * (2 * a);
  Eigen::MatrixXcd g = h.adjoint() * h * (a * a);
  int len = 2 * n_ * n_;
  std::vector<double> zf(static_cast<size_t>(len)), gf(static_cast<size_t>(len));
  for (int c = 0, i = 0; c < n_; ++c)
    for (int r = 0; r < n_; ++r, i += 2) {
      zf[i] = z(r, c).real();
      zf[i + 1] = z(r, c).imag();
      gf[i] = g(r, c).real();
      gf[i + 1] = g(r, c).imag();
    }
  int best = 0;
  double best_m = 0.0;
  const double* xp = x_.data();
  const double* pp = outer_.data();
  for (int k = 0; k < count_; ++k, xp += len, pp += len) {
    double m = 0.0;
    for (int i = 0; i < len; ++i) m += gf[i] * pp[i] - zf[i] * xp[i];
    if (k == 0 || m < best_m) {
      best_m = m;
      best = k;
    }
  }
  return best;
}

double ml_metric(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& x, double a) {
  return (y - a * h * x).squaredNorm();
}

void require_normalized(const NumericCodebook& cb) {
  double total = 0.0;
  for (const auto& x : cb.matrices) total += x.squaredNorm();
  double mean = total / static_cast<double>(cb.matrices.size());
  double target = static_cast<double>(cb.n) * cb.n;
  if (std::abs(mean - target) > 1e-6 * target)
    throw Error(ErrorCode::UnnormalizedCodebook,
                cb.label + " has mean energy " + std::to_string(mean) + ", expected " + std::to_string(target));
}

namespace {

Eigen::MatrixXcd gaussian_matrix(Philox4x32& rng, int rows, int cols) {
  // Unit-variance circularly symmetric entries.
  Eigen::MatrixXcd m(rows, cols);
  const double s = std::sqrt(0.5);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double re = rng.next_normal();
      double im = rng.next_normal();
      m(r, c) = {s * re, s * im};
    }
  return m;
}

// Errors among trials [first, last) of one SNR point.
std::uint64_t run_trials(const MlDecoder& dec, const NumericCodebook& cb, int rx, double a, std::uint64_t seed,
                         std::uint64_t stream, std::uint64_t first, std::uint64_t last) {
  std::uint64_t errors = 0;
  int n = cb.n;
  for (std::uint64_t t = first; t < last; ++t) {
    Philox4x32 rng(seed, stream, t);
    int sent = static_cast<int>(rng.next_below(cb.matrices.size()));
    Eigen::MatrixXcd h = gaussian_matrix(rng, rx, n);
    Eigen::MatrixXcd w = gaussian_matrix(rng, rx, n);
    Eigen::MatrixXcd y = a * h * cb.matrices[sent] + w;
    if (dec.decode(y, h, a) != sent) ++errors;
  }
  return errors;
}

}  // namespace

SimCurve run_bler_curve(const SimConfig& cfg, const NumericCodebook& cb, std::uint64_t codebook_index) {
  if (cfg.snr_grid_db.empty()) throw Error(ErrorCode::InvalidArgument, "empty SNR grid");
  if (cfg.max_trials < cfg.min_block_errors) throw Error(ErrorCode::InvalidArgument, "max_trials < min_block_errors");
  if (cfg.rx_antennas < 1 || cfg.batch < 1) throw Error(ErrorCode::InvalidArgument, "bad simulation parameters");
  require_normalized(cb);
  MlDecoder dec(cb);
  SimCurve curve;
  curve.codebook = cb.label;
  curve.bpcu = cb.bits_per_channel_use();
  int threads = std::max(1, cfg.threads);
  for (size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
    double snr = std::pow(10.0, cfg.snr_grid_db[si] / 10.0);
    double a = std::sqrt(snr / cb.n);
    std::uint64_t stream = codebook_index * 4096 + si;
    SimPoint pt;
    pt.snr_db = cfg.snr_grid_db[si];
    while (pt.errors < cfg.min_block_errors && pt.trials < cfg.max_trials) {
      std::uint64_t first = pt.trials;
      std::uint64_t last = std::min(cfg.max_trials, first + cfg.batch);
      if (threads == 1) {
        pt.errors += run_trials(dec, cb, cfg.rx_antennas, a, cfg.seed, stream, first, last);
      } else {
        std::vector<std::uint64_t> part(static_cast<size_t>(threads), 0);
        std::vector<std::thread> pool;
        std::uint64_t span = (last - first + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
          std::uint64_t lo = std::min(last, first + k * span), hi = std::min(last, lo + span);
          pool.emplace_back([&, k, lo, hi] { part[k] = run_trials(dec, cb, cfg.rx_antennas, a, cfg.seed, stream, lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (auto v : part) pt.errors += v;
      }
      pt.trials = last;
    }
    pt.bler = static_cast<double>(pt.errors) / static_cast<double>(pt.trials);
    pt.ci = wilson_interval(pt.errors, pt.trials);
    curve.points.push_back(pt);
  }
  return curve;
}

SimResult run_bler(const SimConfig& cfg) {
  if (cfg.codebooks.empty()) throw Error(ErrorCode::InvalidArgument, "no codebooks to simulate");
  SimResult r;
  for (size_t i = 0; i < cfg.codebooks.size(); ++i) r.curves.push_back(run_bler_curve(cfg, cfg.codebooks[i], i));
  return r;
}

double snr_at_bler(const SimCurve& c, double target) {
  if (!(target > 0 && target < 1)) throw Error(ErrorCode::InvalidArgument, "target BLER must lie in (0, 1)");
  for (size_t i = 0; i + 1 < c.points.size(); ++i) {
    const SimPoint& p = c.points[i];
    const SimPoint& q = c.points[i + 1];
    if (p.bler >= target && q.bler <= target) {
      if (p.bler <= 0 || q.bler <= 0) break;
      if (p.bler == q.bler) return p.snr_db;
      double lp = std::log10(p.bler), lq = std::log10(q.bler), lt = std::log10(target);
      return p.snr_db + (lt - lp) / (lq - lp) * (q.snr_db - p.snr_db);
    }
  }
  throw Error(ErrorCode::NotBracketed, c.codebook + " does not bracket BLER " + std::to_string(target));
}

double compare_at_bler(const SimCurve& a, const SimCurve& b, double target) {
  return snr_at_bler(a, target) - snr_at_bler(b, target);
}

MonotonicityReport bler_monotonicity(const SimCurve& c) {
  MonotonicityReport r;
  for (size_t i = 0; i + 1 < c.points.size(); ++i) {
    const SimPoint& p = c.points[i];
    const SimPoint& q = c.points[i + 1];
    if (q.snr_db <= p.snr_db) continue;
    ++r.edges;
    if (q.bler > p.bler && q.ci.lo > p.ci.hi) ++r.violations;
  }
  return r;
}

void write_csv(std::ostream& out, const SimResult& r) {
  out << "codebook,bpcu,snr_db,trials,errors,bler,ci_lo,ci_hi\n";
  out << std::setprecision(10);
  for (const auto& c : r.curves)
    for (const auto& p : c.points)
      out << c.codebook << ',' << c.bpcu << ',' << p.snr_db << ',' << p.trials << ',' << p.errors << ',' << p.bler
          << ',' << p.ci.lo << ',' << p.ci.hi << '\n';
}

}  // namespace cda
