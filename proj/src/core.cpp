#include "lerch/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lerch/error.hpp"
#include "lerch/euler_maclaurin.hpp"

namespace lerch {

void LerchParameters::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha out of (0,1]");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda out of (0,1]");
}

PartialSum dirichlet_partial_sum(cplx s, LerchParameters p, std::int64_t n_terms,
                                 std::span<const cplx> weights) {
  if (!weights.empty() && static_cast<std::int64_t>(weights.size()) < n_terms) {
    throw InvalidArgument("weight sequence shorter than truncation");
  }
  const double theta = reduced_frequency(p.lambda);
  const double sigma = s.real();
  const double t = s.imag();
  const double abs_s = std::abs(s);
  CompensatedSum acc;
  double weighted = 0.0;
  for (std::int64_t n = 0; n < n_terms; ++n) {
    const double log_u = std::log(static_cast<double>(n) + p.alpha);
    const double mag = std::exp(-sigma * log_u);
    const double ph = kTwoPi * frac_product(theta, n) - t * log_u;
    cplx term{mag * std::cos(ph), mag * std::sin(ph)};
    double wabs = 1.0;
    if (!weights.empty()) {
      term = weights[n] * term;
      wabs = std::abs(weights[n]);
    }
    acc.add(term);
    weighted += mag * wabs * (8.0 + 2.0 * abs_s * (std::abs(log_u) + 1.0));
  }
  return {acc.value(), kEps * weighted};
}

EvaluationResult eval_series(StripPoint s, LerchParameters p, std::int64_t n_terms) {
  p.validate();
  if (!(s.sigma > 1.0)) throw InvalidArgument("series diverges for sigma <= 1");
  if (n_terms < 1) throw InvalidArgument("n_terms must be >= 1");
  const auto sum = dirichlet_partial_sum(s.value(), p, n_terms);
  const double base = static_cast<double>(n_terms - 1) + p.alpha;
  const double tail = std::pow(base, 1.0 - s.sigma) / (s.sigma - 1.0);
  return {sum.value, tail + sum.rounding_bound, n_terms};
}

EvaluationResult eval_continued(StripPoint s, LerchParameters p, double target_abs_err,
                                const ContinuationOptions& opts) {
  p.validate();
  if (!(s.sigma > 0.0)) throw InvalidArgument("continuation requires sigma > 0");
  if (!(target_abs_err > 0.0)) throw InvalidArgument("target_abs_err must be positive");
  const cplx z = s.value();
  if (p.hurwitz() && std::abs(z - 1.0) < opts.pole_exclusion_radius) {
    throw PoleError("s lies within " + brief(opts.pole_exclusion_radius) +
                    " of the pole s = 1 of the Hurwitz case");
  }
  const TailPlan plan = plan_tail(z, p, target_abs_err, opts);
  const auto head = dirichlet_partial_sum(z, p, plan.cutoff);
  const EulerMaclaurinTail tail(p, plan);
  double tail_rounding = 0.0;
  const cplx tail_value = tail.evaluate(z, &tail_rounding);

  const double bound = tail.truncation_bound(z) + head.rounding_bound + tail_rounding;
  if (bound > target_abs_err) {
    throw ConvergenceError("rounding floor " + brief(bound) + " exceeds target " +
                           brief(target_abs_err));
  }
  return {head.value + tail_value, bound, plan.cutoff};
}

EvaluationResult eval_continued_relaxed(StripPoint s, LerchParameters p, double target_abs_err,
                                        const ContinuationOptions& opts) {
  for (double target = target_abs_err;; target *= 10.0) {
    try {
      return eval_continued(s, p, target, opts);
    } catch (const ConvergenceError&) {
      if (target >= 1e-4) throw;
    }
  }
}

EvaluationResult eval_derivative(StripPoint s, LerchParameters p, int k, double target_abs_err,
                                 const ContinuationOptions& opts) {
  p.validate();
  if (!(s.sigma > 0.0)) throw InvalidArgument("derivative requires sigma > 0");
  if (k < 0 || k > 12) throw InvalidArgument("derivative order must be in [0, 12]");
  if (!(target_abs_err > 0.0)) throw InvalidArgument("target_abs_err must be positive");
  if (k == 0) return eval_continued(s, p, target_abs_err, opts);

  const cplx z = s.value();
  if (p.hurwitz() && std::abs(z - 1.0) < opts.pole_exclusion_radius) {
    throw PoleError("s lies within the pole exclusion radius of s = 1");
  }
  // Sampling circle r and the larger circle R used for the aliasing bound.
  const double r0 = std::min(0.1, s.sigma) / 2.0;
  double big = std::min(4.0 * r0, 0.95 * s.sigma);
  if (p.hurwitz()) big = std::min(big, 0.95 * (std::abs(z - 1.0) - opts.pole_exclusion_radius));
  const double r = std::min(r0, big / 2.0);
  if (!(r >= 1e-4)) throw RadiusError("no admissible Cauchy circle around s");

  constexpr int kNodes = 64;
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  const double gain = factorial / std::pow(r, k);  // sum of |quadrature weights|
  const double node_target = target_abs_err / (2.0 * gain);

  CompensatedSum acc;
  double max_err = 0.0;
  double max_abs = 0.0;
  std::int64_t terms = 0;
  for (int j = 0; j < kNodes; ++j) {
    const double frac = static_cast<double>(j) / kNodes;
    const cplx w = unit_phase(frac);
    const auto f = eval_continued_relaxed(StripPoint::from(z + r * w), p, node_target, opts);
    acc.add(f.value * unit_phase(-frac * k));
    max_err = std::max(max_err, f.abs_error_bound);
    max_abs = std::max(max_abs, std::abs(f.value));
    terms = std::max(terms, f.terms_used);
  }
  const cplx value = acc.value() * (gain / kNodes);

  // Aliasing: the trapezoid rule returns sum_{m >= 0} c_{k + mN} r^{mN}; the
  // Cauchy estimate |c_j| <= M_R / R^j bounds the m >= 1 part. M_R is taken
  // as twice the largest sampled modulus on the R-circle.
  double sampled_max = 0.0;
  for (int j = 0; j < 16; ++j) {
    const cplx w = unit_phase(static_cast<double>(j) / 16.0);
    const auto f = eval_continued(StripPoint::from(z + big * w), p, 1e-6, opts);
    sampled_max = std::max(sampled_max, std::abs(f.value) + f.abs_error_bound);
  }
  const double q = std::pow(r / big, kNodes);
  const double alias = factorial * 2.0 * sampled_max / std::pow(big, k) * q / (1.0 - q);
  const double rounding = gain * kEps * max_abs * 4.0;
  return {value, gain * max_err + alias + rounding, terms};
}

}  // namespace lerch
