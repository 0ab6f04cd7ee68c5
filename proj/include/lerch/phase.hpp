#pragma once

// Low-level helpers shared by every evaluator: accurate unit phases e(x),
// the summands e(theta n)(n + alpha)^{-s}, and compensated summation.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace lerch {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEps = 0x1p-52;

/// e(x) = exp(2 pi i x), with x reduced mod 1 before scaling.
cplx unit_phase(double x);

/// Fractional part of theta * n in [-1/2, 1/2], computed from the exact
/// product theta * n (fma split), valid for |n| < 2^53.
double frac_product(double theta, std::int64_t n);

/// e(theta n) accurate to a few ulp for any integer n < 2^53.
inline cplx unit_phase_product(double theta, std::int64_t n) {
  const double f = frac_product(theta, n);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

/// Representative of lambda mod 1 in (-1/2, 1/2]; lambda = 1 maps to 0.
double reduced_frequency(double lambda);

/// e(theta n) u^{-s} with log u supplied, evaluated as one exp and one sincos.
inline cplx lerch_term(double theta, std::int64_t n, double log_u, cplx s) {
  const double mag = std::exp(-s.real() * log_u);
  const double ph = kTwoPi * frac_product(theta, n) - s.imag() * log_u;
  return {mag * std::cos(ph), mag * std::sin(ph)};
}

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx x) {
    add_part(re_, cre_, x.real());
    add_part(im_, cim_, x.imag());
  }
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, im_ = 0.0, cre_ = 0.0, cim_ = 0.0;
};

}  // namespace lerch
