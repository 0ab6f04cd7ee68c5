#include "lerch/euler_maclaurin.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "lerch/error.hpp"

namespace lerch {
namespace {

constexpr int kMaxOrder = 40;

// B_{2k} / (2k)! for k = 1 .. kMaxOrder, and zeta(j) for the remainder bound.
struct BernoulliTable {
  std::array<double, kMaxOrder + 1> scaled{};
  std::array<double, 2 * kMaxOrder + 2> zeta{};

  BernoulliTable() {
    for (int k = 1; k <= kMaxOrder; ++k) {
      scaled[k] = boost::math::bernoulli_b2n<double>(k) /
                  boost::math::factorial<double>(static_cast<unsigned>(2 * k));
    }
    for (int j = 2; j < static_cast<int>(zeta.size()); ++j) {
      zeta[j] = boost::math::zeta(static_cast<double>(j));
    }
  }
};

const BernoulliTable& table() {
  static const BernoulliTable t;
  return t;
}

double binom(int n, int k) {
  return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                  static_cast<unsigned>(k));
}

double em_remainder(cplx s, double theta, double a, int order) {
  const double sigma = s.real();
  const double at = std::abs(theta);
  const int p = 2 * order;
  double ratio = 1.0;  // |(s)_i| / (2 pi a)^i
  double acc = 0.0;
  for (int i = 1; i <= p; ++i) {
    ratio *= std::abs(s + static_cast<double>(i - 1)) / (kTwoPi * a);
    acc += binom(p, i) * std::pow(at, p - i) * ratio / (sigma + i - 1.0);
  }
  double bound = 2.0 * table().zeta[p] * std::pow(a, 1.0 - sigma) * acc;
  if (theta != 0.0) {
    // i = 0 part, after one more integration by parts against the bounded
    // antiderivative of the twisted periodic Bernoulli function.
    bound += 2.0 * table().zeta[p + 1] / std::numbers::pi * std::pow(at, p) *
             std::pow(a, -sigma) * (1.0 + std::abs(s) / sigma);
  }
  return bound;
}

double integral_remainder(cplx s, double beta, double a, int terms) {
  const double sigma = s.real();
  double q = 1.0;
  for (int k = 0; k < terms; ++k) q *= std::abs(s + static_cast<double>(k)) / (std::abs(beta) * a);
  return std::pow(a, 1.0 - sigma) * q / (sigma + terms - 1.0);
}

}  // namespace

double tail_truncation_bound(cplx s, LerchParameters p, const TailPlan& plan) {
  if (!(s.real() > 0.0)) return std::numeric_limits<double>::infinity();
  const double theta = reduced_frequency(p.lambda);
  const double a = static_cast<double>(plan.cutoff) + p.alpha;
  double bound = em_remainder(s, theta, a, plan.bernoulli_order);
  if (theta != 0.0) bound += integral_remainder(s, kTwoPi * theta, a, plan.integral_terms);
  return bound;
}

TailPlan plan_tail(cplx s, LerchParameters p, double target, const ContinuationOptions& opts) {
  const double theta = reduced_frequency(p.lambda);
  const double beta = kTwoPi * theta;
  const double sigma = s.real();
  const int b_lo = std::max(1, opts.bernoulli_order);
  const int b_hi = std::min(kMaxOrder, std::max(b_lo, opts.max_bernoulli_order));

  double m0 = std::ceil(2.0 * (std::abs(s.imag()) + 10.0));
  if (theta != 0.0) m0 = std::max(m0, std::ceil(2.0 * (std::abs(s) + 20.0) / std::abs(beta) - p.alpha));
  auto cutoff = static_cast<std::int64_t>(std::max(m0, 1.0));

  for (; cutoff <= opts.max_cutoff; cutoff *= 2) {
    const double a = static_cast<double>(cutoff) + p.alpha;
    TailPlan plan{cutoff, b_lo, 0};
    double ir = 0.0;
    if (theta != 0.0) {
      double best = std::numeric_limits<double>::infinity();
      double q = 1.0;
      for (int k = 1; k <= 200; ++k) {
        q *= std::abs(s + static_cast<double>(k - 1)) / (std::abs(beta) * a);
        const double v = std::pow(a, 1.0 - sigma) * q / (sigma + k - 1.0);
        if (v < best) {
          best = v;
          plan.integral_terms = k;
        }
        if (v <= target / 4.0 || q > 1.0) break;
      }
      ir = best;
    }
    for (int b = b_lo; b <= b_hi; ++b) {
      plan.bernoulli_order = b;
      if (em_remainder(s, theta, a, b) + ir <= target / 2.0) return plan;
    }
  }
  throw ConvergenceError("remainder bound cannot reach target " + brief(target) +
                         " within cutoff limit " + std::to_string(opts.max_cutoff));
}

EulerMaclaurinTail::EulerMaclaurinTail(LerchParameters p, TailPlan plan)
    : params_(p), plan_(plan) {
  if (plan_.bernoulli_order < 1 || plan_.bernoulli_order > kMaxOrder) {
    throw InvalidArgument("Bernoulli order out of range");
  }
  theta_ = reduced_frequency(p.lambda);
  beta_ = kTwoPi * theta_;
  a_ = static_cast<double>(plan_.cutoff) + p.alpha;
  log_a_ = std::log(a_);
  frac_theta_m_ = frac_product(theta_, plan_.cutoff);

  // W_i = sum_{k : 2k-1 >= i} B_{2k}/(2k)! C(2k-1, i) (i beta)^{2k-1-i}
  const int p2 = 2 * plan_.bernoulli_order;
  weights_.assign(p2, cplx{});
  const cplx ib{0.0, beta_};
  for (int k = 1; k <= plan_.bernoulli_order; ++k) {
    const int deg = 2 * k - 1;
    cplx ipow{1.0, 0.0};  // (i beta)^{deg - i}, built from i = deg downwards
    for (int i = deg; i >= 0; --i) {
      weights_[i] += table().scaled[k] * binom(deg, i) * ipow;
      ipow *= ib;
    }
  }
}

cplx EulerMaclaurinTail::evaluate(cplx s, double* rounding) const {
  const double mag = std::exp(-s.real() * log_a_);
  const double ph = kTwoPi * frac_theta_m_ - s.imag() * log_a_;
  const cplx pref{mag * std::cos(ph), mag * std::sin(ph)};

  const bool track = rounding != nullptr;
  double abs_terms = 0.5;
  cplx q;
  if (theta_ == 0.0) {
    q = a_ / (s - 1.0);
    if (track) abs_terms += std::abs(q);
  } else {
    // 1 / (i beta) = -i / beta
    const cplx inv_ib{0.0, -1.0 / beta_};
    const cplx inv_iba = inv_ib / a_;
    cplx term = -inv_ib;
    for (int k = 0; k < plan_.integral_terms; ++k) {
      q += term;
      if (track) abs_terms += std::abs(term);
      term *= (s + static_cast<double>(k)) * inv_iba;
    }
  }
  q += 0.5;
  const double neg_inv_a = -1.0 / a_;
  cplx g{1.0, 0.0};  // (-1)^i (s)_i / a^i
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const cplx c = g * weights_[i];
    q -= c;
    if (track) abs_terms += std::abs(c);
    g *= (s + static_cast<double>(i)) * neg_inv_a;
  }
  if (track) {
    const double ops = 8.0 + 2.0 * std::abs(s) * log_a_ + plan_.integral_terms +
                       2.0 * plan_.bernoulli_order;
    *rounding = kEps * mag * abs_terms * ops;
  }
  return pref * q;
}

}  // namespace lerch
