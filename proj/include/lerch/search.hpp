#pragma once

// Vertical shift search: find tau with
//
//   max_j sup_{s in K_j} |L(s + i tau; alpha, lambda_j) - f_j(s)| < epsilon
//
// on a grid tau = 0, step, 2 step, ..., and report the measure of such shifts.

#include <cstdint>
#include <span>
#include <vector>

#include "lerch/core.hpp"
#include "lerch/geometry.hpp"

namespace lerch {

struct TargetComponent {
  CompactSet set;
  TargetPolynomial target;
};

/// m pairs (K_j, f_j) with parameters sharing alpha and pairwise distinct
/// lambda (gap >= 1e-9).
struct JointTarget {
  static constexpr double kLambdaGap = 1e-9;

  std::vector<TargetComponent> components;
  std::vector<LerchParameters> params;

  std::size_t size() const { return components.size(); }
  /// Throws InvalidArgument naming the offending pair.
  void validate() const;
};

struct ScanConfig {
  double tau_max = 1e3;
  double tau_step = 0.05;
  double epsilon = 0.5;
  bool refine = false;
  int threads = 1;

  void validate() const;
  /// Number of grid points 0, step, ..., <= tau_max.
  std::int64_t grid_size() const;
};

struct HitInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct DensityReport {
  std::vector<HitInterval> hit_intervals;
  double hit_measure = 0.0;
  double density = 0.0;
  double best_tau = 0.0;
  double best_distance = 0.0;
  std::int64_t grid_points = 0;
  std::int64_t grid_hits = 0;
  /// Largest over the grid of an upper bound for |d/ds L| on the sample disks;
  /// NaN when some component is evaluated pointwise.
  double derivative_bound = 0.0;
};

/// Grid distances tau_j = j * step.
struct ScanTrace {
  double step = 0.0;
  double tau_max = 0.0;
  std::vector<double> distance;
  double derivative_bound = 0.0;

  double tau(std::int64_t j) const { return static_cast<double>(j) * step; }
};

/// Direct evaluation of every sample point of every K_j.
double joint_distance(double tau, const JointTarget& tgt);

/// Grid distances by blockwise Taylor expansion, falling back to direct
/// evaluation where the expansion is not applicable. The block layout is
/// independent of cfg.threads, so results are identical for any thread count.
ScanTrace scan_trace(const JointTarget& tgt, const ScanConfig& cfg);

/// Hit intervals for threshold epsilon: each grid hit covers the cell
/// [tau - step/2, tau + step/2] clipped to [0, tau_max] (the last cell extends
/// to tau_max), consecutive cells merge. best_* come from the grid.
DensityReport build_report(const ScanTrace& trace, double epsilon);

/// Golden-section refinement (at most 40 iterations) around the lowest grid
/// local minima; returns the report with best_tau/best_distance updated.
DensityReport refine_report(DensityReport report, const ScanTrace& trace, const JointTarget& tgt,
                            int threads = 1);

DensityReport scan(const JointTarget& tgt, const ScanConfig& cfg, ScanTrace* trace_out = nullptr);

struct ProbeResult {
  double t_best = 0.0;
  double distance = 0.0;
  std::int64_t grid_points = 0;
  std::int64_t hits = 0;  // grid points with distance < epsilon
};

/// Scans h(t) = (L^{(k)}(sigma + i t; alpha, lambda_j))_{j < m, k < N} against
/// target (ordered j-major) in the max norm.
ProbeResult dense_image_probe(std::span<const LerchParameters> params, double sigma, int n_derivs,
                              std::span<const cplx> target, double epsilon, double t_max,
                              double t_step, int threads = 1);

/// h(t) by direct derivative evaluation, in the probe's ordering.
std::vector<cplx> derivative_vector(std::span<const LerchParameters> params, double sigma,
                                    int n_derivs, double t);

}  // namespace lerch
