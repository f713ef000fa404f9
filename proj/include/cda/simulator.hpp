#pragma once

// Block error rates of n x n codebooks over quasi-static Rayleigh fading with
// exhaustive maximum-likelihood decoding.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cda/codebook.hpp"

namespace cda {

struct SimConfig {
  std::vector<NumericCodebook> codebooks;
  std::vector<double> snr_grid_db;
  std::uint64_t min_block_errors = 100;
  std::uint64_t max_trials = 1000000;
  int rx_antennas = 2;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Trials are scheduled in batches of this size; the stopping rule is
  /// checked between batches so the outcome never depends on `threads`.
  std::uint64_t batch = 256;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval with z = 1.959964.
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z = 1.959964);

struct SimPoint {
  double snr_db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double bler = 0.0;
  Interval ci;
};

struct SimCurve {
  std::string codebook;
  double bpcu = 0.0;
  std::vector<SimPoint> points;
};

struct SimResult {
  std::vector<SimCurve> curves;
};

/// Precomputed per-codeword data for the expanded ML metric.
class MlDecoder {
 public:
  explicit MlDecoder(const NumericCodebook& cb);
  /// argmin_k ||Y - a H X_k||^2, lowest index on ties.
  int decode(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, double a) const;
  int size() const { return count_; }

 private:
  int n_;
  int count_;
  std::vector<double> x_;      // re/im of X_k, column-major, 2n^2 per codeword
  std::vector<double> outer_;  // re/im of X_k X_k^H, same layout
};

/// Brute-force metric ||Y - a H X||_F^2.
double ml_metric(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& x, double a);

/// Checks E||X||^2 = n^2 to 1e-6 relative.
void require_normalized(const NumericCodebook& cb);

SimCurve run_bler_curve(const SimConfig& cfg, const NumericCodebook& cb, std::uint64_t codebook_index);
SimResult run_bler(const SimConfig& cfg);

/// SNR_a - SNR_b at target_bler by log-linear interpolation.
double compare_at_bler(const SimCurve& a, const SimCurve& b, double target_bler);
/// SNR at which the curve first crosses target_bler.
double snr_at_bler(const SimCurve& c, double target_bler);

struct MonotonicityReport {
  int edges = 0;
  int violations = 0;  // bler rises and the two intervals are disjoint
  bool holds() const { return edges == 0 || violations < 0.05 * edges; }
};
MonotonicityReport bler_monotonicity(const SimCurve& c);

void write_csv(std::ostream& out, const SimResult& r);

}  // namespace cda
