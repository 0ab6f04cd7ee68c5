#pragma once

// Euler-Maclaurin tail of the Lerch series,
//
//   T_M(s) = sum_{n >= M} e(theta n)(n + alpha)^{-s},
//
// for f(x) = e(theta x)(x + alpha)^{-s} with theta the reduced frequency of
// lambda. With a = M + alpha the tail is e(theta M) a^{-s} Q(s), where Q
// collects the integral, the f(M)/2 term and B Bernoulli corrections. For
// theta != 0 the integral is expanded by repeated integration by parts,
//
//   int_M^inf f = -e(theta M) a^{-s} / (i beta) sum_{k<K} (s)_k / (i beta a)^k,
//
// beta = 2 pi theta, with remainder |(s)_K| a^{1-sigma-K} / (|beta|^K (sigma+K-1)).

#include <complex>
#include <cstdint>
#include <vector>

#include "lerch/core.hpp"

namespace lerch {

struct TailPlan {
  std::int64_t cutoff = 0;  // M
  int bernoulli_order = 16; // B
  int integral_terms = 0;   // K, zero when theta = 0
};

/// Bound on |T_M(s) - computed tail| from the Bernoulli remainder and the
/// truncated integral expansion. Valid for Re s > 0.
double tail_truncation_bound(cplx s, LerchParameters p, const TailPlan& plan);

/// Smallest admissible plan meeting truncation <= target / 2 at s.
/// Throws ConvergenceError when opts limits are exhausted.
TailPlan plan_tail(cplx s, LerchParameters p, double target, const ContinuationOptions& opts);

class EulerMaclaurinTail {
 public:
  EulerMaclaurinTail(LerchParameters p, TailPlan plan);

  /// Tail value; when rounding is non-null it receives a rounding estimate.
  cplx evaluate(cplx s, double* rounding = nullptr) const;
  cplx operator()(cplx s) const { return evaluate(s); }

  double truncation_bound(cplx s) const { return tail_truncation_bound(s, params_, plan_); }
  const TailPlan& plan() const { return plan_; }
  double log_base() const { return log_a_; }

 private:
  LerchParameters params_;
  TailPlan plan_;
  double theta_ = 0.0;
  double beta_ = 0.0;
  double a_ = 0.0;
  double log_a_ = 0.0;
  double frac_theta_m_ = 0.0;
  std::vector<cplx> weights_;  // W_i, i < 2B: Bernoulli corrections per (s)_i / a^i
};

}  // namespace lerch
