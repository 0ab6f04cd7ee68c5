#include "lerch/phase.hpp"

namespace lerch {

double frac_product(double theta, std::int64_t n) {
  const double nd = static_cast<double>(n);
  const double p = theta * nd;
  const double err = std::fma(theta, nd, -p);
  const double r = p - std::nearbyint(p);
  return r + err;
}

cplx unit_phase(double x) {
  const double f = x - std::nearbyint(x);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

double reduced_frequency(double lambda) {
  double r = lambda - std::nearbyint(lambda);
  if (r <= -0.5) r += 1.0;
  return r;
}

}  // namespace lerch
