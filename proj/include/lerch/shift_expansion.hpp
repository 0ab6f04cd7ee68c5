#pragma once

// Taylor expansions of tau -> L(c + z + i tau) around a fixed center c, for
// many equally spaced shifts tau at once. The Dirichlet head contributes
//
//   sum_n e(theta n)(n + alpha)^{-c - i tau} (-log(n + alpha) z)^k / k!,
//
// which on a block of J shifts is a batched type-1 NUFFT in the points
// step * log(n + alpha). The Euler-Maclaurin tail is expanded per shift from
// samples on a circle of radius node_radius. Coefficients refer to the
// scaled variable u = z / scale, so |u| <= 1 on the sampled set.

#include <cstdint>
#include <vector>

#include "lerch/core.hpp"

namespace lerch {

struct ExpansionPlan {
  cplx center;
  double radius = 0.0;       // sample radius r around the center
  double scale = 1.0;        // r, or 1 when r = 0
  double node_radius = 0.0;  // circle used for tail and direct coefficients
  int order = 1;             // Taylor terms K
  int nodes = 16;            // circle nodes P >= K
  bool feasible = false;     // false: use pointwise evaluation instead
};

/// Chooses K and P so that the dropped Taylor terms stay below ~1e-13 for
/// every shift up to tau_max.
ExpansionPlan plan_expansion(LerchParameters p, cplx center, double radius, double tau_max,
                             const ContinuationOptions& opts = {});

class ShiftExpansion {
 public:
  static constexpr double kTailTarget = 1e-12;

  ShiftExpansion(LerchParameters p, ExpansionPlan plan, double step);

  const ExpansionPlan& plan() const { return plan_; }

  /// Coefficients for tau_j = (first + j) * step, j < count <= modes, written to
  /// out[j * order + k]. needs_direct[j] is set where the shift comes too close
  /// to the Hurwitz pole; those rows are left zero.
  void block(std::int64_t first, int count, int modes, std::vector<cplx>& out,
             std::vector<std::uint8_t>& needs_direct) const;

  /// Coefficients at a single shift: the head summed term by term (no NUFFT),
  /// the tail from the node circle.
  std::vector<cplx> at(double tau) const;

  bool near_pole(double tau) const;

 private:
  LerchParameters params_;
  ExpansionPlan plan_;
  double step_;
};

/// sum_k coeffs[k] u^k.
cplx eval_expansion(const cplx* coeffs, int order, cplx u);

}  // namespace lerch
