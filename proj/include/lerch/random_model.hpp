#pragma once

// The randomized Lerch series sum_n e(lambda n) omega(n) (n + alpha)^{-s}
// with omega a Haar-random point of the infinite torus, truncated at N.

#include <cstdint>
#include <vector>

#include "lerch/core.hpp"

namespace lerch {

/// omega(0 .. N-1) on the unit circle. phases[n] depends only on (seed, n),
/// so any index can be regenerated without generating its predecessors.
struct PhaseSequence {
  std::vector<cplx> phases;
  std::uint64_t seed = 0;
  std::int64_t size() const { return static_cast<std::int64_t>(phases.size()); }
};

struct RandomSeriesConfig {
  std::int64_t truncation = 1;  // N
  LerchParameters params;
};

/// Uniform angle in [0, 1) turns for index n of the stream `seed`.
double phase_turns(std::uint64_t seed, std::uint64_t n);

PhaseSequence sample_phases(std::uint64_t seed, std::int64_t n);

/// sum_{n < N} e(lambda n) omega(n) (n + alpha)^{-s}; requires Re s > 1/2 and
/// omega.size() >= N.
cplx eval_random_series(StripPoint s, const RandomSeriesConfig& cfg, const PhaseSequence& omega);

/// (sum_{n >= N} (n + alpha)^{-2 sigma})^{1/2} bounded by the integral from N - 1.
double tail_estimate(const RandomSeriesConfig& cfg, StripPoint s);

/// sum_{n < N} (n + alpha)^{-2 sigma}: the exact second moment E|L_N(s)|^2.
double second_moment(const RandomSeriesConfig& cfg, StripPoint s);

}  // namespace lerch
