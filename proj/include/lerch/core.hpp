#pragma once

// Evaluation of the Lerch zeta-function
//
//   L(s; alpha, lambda) = sum_{n >= 0} e(lambda n) (n + alpha)^{-s},
//
// by its Dirichlet series (Re s > 1) and by Euler-Maclaurin continuation
// (Re s > 0). Every result carries an absolute error bound covering the
// truncation remainder and a first-order rounding estimate.

#include <complex>
#include <cstdint>
#include <span>

#include "lerch/phase.hpp"

namespace lerch {

/// The pair (alpha, lambda) in (0, 1]^2 selecting one Lerch zeta-function.
///
/// A double cannot be transcendental; alpha = 1/pi (the default used across
/// experiments) is the binary rational nearest to 1/pi, and theorem-level
/// statements refer to the transcendental it approximates.
struct LerchParameters {
  double alpha = 1.0;
  double lambda = 1.0;

  /// Throws InvalidArgument unless 0 < alpha <= 1 and 0 < lambda <= 1.
  void validate() const;
  static LerchParameters make(double alpha, double lambda) {
    LerchParameters p{alpha, lambda};
    p.validate();
    return p;
  }
  /// True in the Hurwitz case lambda = 1 (pole at s = 1).
  bool hurwitz() const { return reduced_frequency(lambda) == 0.0; }
};

/// s = sigma + i t.
struct StripPoint {
  double sigma = 0.0;
  double t = 0.0;

  cplx value() const { return {sigma, t}; }
  static StripPoint from(cplx s) { return {s.real(), s.imag()}; }
};

struct EvaluationResult {
  cplx value;
  double abs_error_bound = 0.0;
  std::int64_t terms_used = 0;
};

struct ContinuationOptions {
  double pole_exclusion_radius = 1e-3;
  int bernoulli_order = 16;
  int max_bernoulli_order = 30;
  std::int64_t max_cutoff = std::int64_t{1} << 25;
};

/// Partial sum over n = 0 .. n_terms-1 for Re s > 1. The bound is the
/// integral-comparison tail (n_terms - 1 + alpha)^{1-sigma} / (sigma - 1)
/// plus rounding.
EvaluationResult eval_series(StripPoint s, LerchParameters p, std::int64_t n_terms);

/// Analytic continuation to Re s > 0 with abs_error_bound <= target_abs_err.
/// Throws PoleError near s = 1 when lambda = 1, ConvergenceError when the
/// bound cannot be met within opts.
EvaluationResult eval_continued(StripPoint s, LerchParameters p, double target_abs_err,
                                const ContinuationOptions& opts = {});

/// eval_continued with the target relaxed tenfold (up to 1e-4) while the
/// rounding floor, which grows with |t|, exceeds it.
EvaluationResult eval_continued_relaxed(StripPoint s, LerchParameters p, double target_abs_err,
                                        const ContinuationOptions& opts = {});

/// k-th derivative in s (0 <= k <= 12) via the Cauchy integral on a circle
/// of radius min(0.1, sigma)/2 with 64 trapezoid nodes. Nodes are evaluated
/// with eval_continued_relaxed, so the reported bound can exceed the target
/// where the rounding floor does.
EvaluationResult eval_derivative(StripPoint s, LerchParameters p, int k, double target_abs_err,
                                 const ContinuationOptions& opts = {});

/// Raw Dirichlet polynomial sum_{n < n_terms} w(n) e(lambda n)(n + alpha)^{-s}
/// with w = 1 when weights is empty. Shared by the series evaluator and the
/// random model so both produce bit-identical sums.
struct PartialSum {
  cplx value;
  double rounding_bound = 0.0;  // first-order rounding estimate
};
PartialSum dirichlet_partial_sum(cplx s, LerchParameters p, std::int64_t n_terms,
                                 std::span<const cplx> weights = {});

}  // namespace lerch
