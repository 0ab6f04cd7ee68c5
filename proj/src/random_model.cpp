#include "lerch/random_model.hpp"

#include <cmath>

#include "lerch/error.hpp"

namespace lerch {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_params(const RandomSeriesConfig& cfg) {
  cfg.params.validate();
  if (cfg.truncation < 1) throw InvalidArgument("truncation N must be >= 1");
}

}  // namespace

double phase_turns(std::uint64_t seed, std::uint64_t n) {
  const std::uint64_t key = mix64(seed + kGolden);
  const std::uint64_t bits = mix64(key ^ mix64((n + 1) * kGolden));
  return static_cast<double>(bits >> 11) * 0x1p-53;
}

PhaseSequence sample_phases(std::uint64_t seed, std::int64_t n) {
  if (n < 1) throw InvalidArgument("phase sequence length must be >= 1");
  PhaseSequence out;
  out.seed = seed;
  out.phases.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double ang = kTwoPi * phase_turns(seed, static_cast<std::uint64_t>(i));
    out.phases[i] = {std::cos(ang), std::sin(ang)};
  }
  return out;
}

cplx eval_random_series(StripPoint s, const RandomSeriesConfig& cfg, const PhaseSequence& omega) {
  check_params(cfg);
  if (!(s.sigma > 0.5)) throw InvalidArgument("random series requires sigma > 1/2");
  if (omega.size() < cfg.truncation) {
    throw InvalidArgument("truncation mismatch: phase sequence shorter than N");
  }
  return dirichlet_partial_sum(s.value(), cfg.params, cfg.truncation, omega.phases).value;
}

double tail_estimate(const RandomSeriesConfig& cfg, StripPoint s) {
  check_params(cfg);
  if (!(s.sigma > 0.5)) throw InvalidArgument("tail estimate requires sigma > 1/2");
  const double base = static_cast<double>(cfg.truncation - 1) + cfg.params.alpha;
  const double e = 2.0 * s.sigma - 1.0;
  return std::sqrt(std::pow(base, -e) / e);
}

double second_moment(const RandomSeriesConfig& cfg, StripPoint s) {
  check_params(cfg);
  double acc = 0.0;
  for (std::int64_t n = cfg.truncation - 1; n >= 0; --n) {
    acc += std::pow(static_cast<double>(n) + cfg.params.alpha, -2.0 * s.sigma);
  }
  return acc;
}

}  // namespace lerch
