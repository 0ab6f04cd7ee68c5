#pragma once

#include <vector>

namespace lerch {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// q-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_q).
GaussRule gauss_legendre(int q);

}  // namespace lerch
