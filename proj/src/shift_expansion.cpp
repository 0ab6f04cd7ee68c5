#include "lerch/shift_expansion.hpp"

#include <algorithm>
#include <cmath>

#include "lerch/error.hpp"
#include "lerch/euler_maclaurin.hpp"
#include "lerch/nufft.hpp"

namespace lerch {
namespace {

constexpr double kDroppedTarget = 1e-13;
constexpr double kAliasTarget = 1e-14;
constexpr int kMaxTerms = 64;
constexpr int kMinNodes = 16;
constexpr double kMinNodeSigma = 0.1;

// Worst point for tail planning over shifts in [tau_lo, tau_hi]: smallest
// real part on the node circle, largest |imaginary part|.
cplx worst_point(cplx center, double rho, double tau_lo, double tau_hi) {
  const double t = std::max(std::abs(tau_lo + center.imag()), std::abs(tau_hi + center.imag()));
  return {center.real() - rho, t + rho};
}

std::vector<cplx> roots_of_unity(int n) {
  std::vector<cplx> w(n);
  for (int p = 0; p < n; ++p) w[p] = unit_phase(static_cast<double>(p) / n);
  return w;
}

// Coefficients of u^k, k < order, from samples f_p on |z| = rho.
void circle_coefficients(const std::vector<cplx>& f, const std::vector<cplx>& w, double ratio,
                         int order, cplx* out) {
  const int n = static_cast<int>(f.size());
  double scale = 1.0 / n;
  for (int k = 0; k < order; ++k) {
    cplx acc;
    for (int p = 0; p < n; ++p) acc += f[p] * std::conj(w[(static_cast<std::int64_t>(p) * k) % n]);
    out[k] += acc * scale;
    scale *= ratio;
  }
}

}  // namespace

cplx eval_expansion(const cplx* coeffs, int order, cplx u) {
  cplx acc;
  for (int k = order - 1; k >= 0; --k) acc = acc * u + coeffs[k];
  return acc;
}

ExpansionPlan plan_expansion(LerchParameters p, cplx center, double radius, double tau_max,
                             const ContinuationOptions& opts) {
  p.validate();
  if (!(radius >= 0.0)) throw InvalidArgument("expansion radius must be >= 0");
  ExpansionPlan plan;
  plan.center = center;
  plan.radius = radius;
  plan.scale = radius > 0.0 ? radius : 1.0;
  plan.node_radius = radius > 0.0 ? 2.0 * radius : 0.02;
  const double rho = plan.node_radius;
  if (center.real() - rho < kMinNodeSigma) return plan;

  TailPlan tail;
  try {
    tail = plan_tail(worst_point(center, rho, 0.0, tau_max), p, ShiftExpansion::kTailTarget, opts);
  } catch (const ConvergenceError&) {
    return plan;
  }
  const double a = static_cast<double>(tail.cutoff) + p.alpha;
  const double ell = std::max(std::abs(std::log(p.alpha)), std::log(a));
  const double sig = center.real() - radius;
  const double s_abs = std::pow(p.alpha, -sig) +
                       (std::pow(a, 1.0 - sig) - std::pow(p.alpha, 1.0 - sig)) / (1.0 - sig);

  int k = 1;
  if (radius > 0.0) {
    const double x = ell * radius;
    double term = s_abs * std::exp(x);  // s_abs e^x x^k / k!
    for (k = 1; k <= kMaxTerms + 1; ++k) {
      term *= x / k;
      if (term <= kDroppedTarget) break;
    }
  }
  int nodes = std::max(k, kMinNodes);
  for (; nodes <= kMaxTerms + 1; ++nodes) {
    if (s_abs * std::pow(ell * rho * std::numbers::e / nodes, nodes) <= kAliasTarget) break;
  }
  plan.order = k;
  plan.nodes = nodes;
  plan.feasible = k <= kMaxTerms && nodes <= kMaxTerms;
  return plan;
}

ShiftExpansion::ShiftExpansion(LerchParameters p, ExpansionPlan plan, double step)
    : params_(p), plan_(plan), step_(step) {
  p.validate();
  if (!plan_.feasible) throw InvalidArgument("expansion plan is not feasible");
  if (!(step > 0.0)) throw InvalidArgument("shift step must be positive");
}

bool ShiftExpansion::near_pole(double tau) const {
  return params_.hurwitz() &&
         std::abs(plan_.center + cplx(0.0, tau) - 1.0) < 8.0 * plan_.node_radius;
}

void ShiftExpansion::block(std::int64_t first, int count, int modes, std::vector<cplx>& out,
                           std::vector<std::uint8_t>& needs_direct) const {
  if (count < 1 || count > modes) throw InvalidArgument("block count must be in [1, modes]");
  const int order = plan_.order;
  const double rho = plan_.node_radius;
  const cplx c = plan_.center;
  const double tau_lo = static_cast<double>(first) * step_;
  const double tau_hi = static_cast<double>(first + count - 1) * step_;
  const TailPlan tail_plan = plan_tail(worst_point(c, rho, tau_lo, tau_hi), params_,
                                       kTailTarget, ContinuationOptions{});

  // Head: batched NUFFT over n < M.
  GaussianGridNufft nufft(modes, order);
  nufft.reset();
  const double theta = reduced_frequency(params_.lambda);
  const double t0 = tau_lo + c.imag();
  std::vector<cplx> strengths(order);
  for (std::int64_t n = 0; n < tail_plan.cutoff; ++n) {
    const double ell = std::log(static_cast<double>(n) + params_.alpha);
    const double mag = std::exp(-c.real() * ell);
    const double ph = kTwoPi * frac_product(theta, n) - t0 * ell;
    cplx v(mag * std::cos(ph), mag * std::sin(ph));
    const double mult = -ell * plan_.scale;
    for (int k = 0; k < order; ++k) {
      strengths[k] = v;
      v *= mult / (k + 1);
    }
    nufft.add(step_ * ell, strengths.data());
  }
  std::vector<cplx> full(static_cast<std::size_t>(modes) * order);
  nufft.transform(full.data());
  out.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(count) * order);
  needs_direct.assign(count, 0);

  // Tail: circle samples per shift.
  const EulerMaclaurinTail tail(params_, tail_plan);
  const auto w = roots_of_unity(plan_.nodes);
  std::vector<cplx> f(plan_.nodes);
  const double ratio = plan_.scale / rho;
  for (int j = 0; j < count; ++j) {
    const double tau = static_cast<double>(first + j) * step_;
    cplx* row = out.data() + static_cast<std::ptrdiff_t>(j) * order;
    if (near_pole(tau)) {
      needs_direct[j] = 1;
      std::fill(row, row + order, cplx{});
      continue;
    }
    const cplx base = c + cplx(0.0, tau);
    for (int p = 0; p < plan_.nodes; ++p) f[p] = tail(base + rho * w[p]);
    circle_coefficients(f, w, ratio, order, row);
  }
}

std::vector<cplx> ShiftExpansion::at(double tau) const {
  if (near_pole(tau)) throw PoleError("shift too close to the pole for a circle expansion");
  const cplx c = plan_.center;
  const double rho = plan_.node_radius;
  const int order = plan_.order;
  const TailPlan tail_plan =
      plan_tail(worst_point(c, rho, tau, tau), params_, kTailTarget, ContinuationOptions{});

  // Head: Taylor coefficients term by term, one pass over n < M.
  std::vector<cplx> out(order);
  const double theta = reduced_frequency(params_.lambda);
  const double t = tau + c.imag();
  for (std::int64_t n = 0; n < tail_plan.cutoff; ++n) {
    const double ell = std::log(static_cast<double>(n) + params_.alpha);
    const double mag = std::exp(-c.real() * ell);
    const double ph = kTwoPi * frac_product(theta, n) - t * ell;
    cplx v(mag * std::cos(ph), mag * std::sin(ph));
    const double mult = -ell * plan_.scale;
    for (int k = 0; k < order; ++k) {
      out[k] += v;
      v *= mult / (k + 1);
    }
  }

  const EulerMaclaurinTail tail(params_, tail_plan);
  const auto w = roots_of_unity(plan_.nodes);
  std::vector<cplx> f(plan_.nodes);
  const cplx base = c + cplx(0.0, tau);
  for (int p = 0; p < plan_.nodes; ++p) f[p] = tail(base + rho * w[p]);
  circle_coefficients(f, w, plan_.scale / rho, order, out.data());
  return out;
}

}  // namespace lerch
