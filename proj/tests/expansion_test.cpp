#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lerch/core.hpp"
#include "lerch/nufft.hpp"
#include "lerch/shift_expansion.hpp"

using namespace lerch;

TEST_SUITE("expansion") {
  TEST_CASE("nufft matches the direct sum") {
    constexpr int kModes = 64, kBatch = 3, kPoints = 40;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> xs;
    std::vector<cplx> c;
    for (int n = 0; n < kPoints; ++n) {
      xs.push_back(20.0 * u(rng));
      for (int k = 0; k < kBatch; ++k) c.emplace_back(u(rng), u(rng));
    }
    GaussianGridNufft nufft(kModes, kBatch);
    nufft.reset();
    for (int n = 0; n < kPoints; ++n) nufft.add(xs[n], &c[n * kBatch]);
    std::vector<cplx> out(kModes * kBatch);
    nufft.transform(out.data());

    double worst = 0.0, mass = 0.0;
    for (const cplx x : c) mass += std::abs(x);
    for (int j = 0; j < kModes; ++j) {
      for (int k = 0; k < kBatch; ++k) {
        cplx want;
        for (int n = 0; n < kPoints; ++n) want += c[n * kBatch + k] * std::polar(1.0, -j * xs[n]);
        worst = std::max(worst, std::abs(out[j * kBatch + k] - want));
      }
    }
    CHECK(worst < 1e-11 * mass);
  }

  TEST_CASE("block coefficients reproduce direct evaluation") {
    const LerchParameters p{1.0 / std::numbers::pi, 1.0 / 3.0};
    const cplx center(0.75, 0.1);
    const double step = 0.05;
    const auto plan = plan_expansion(p, center, 0.02, 2000.0);
    REQUIRE(plan.feasible);
    const ShiftExpansion ex(p, plan, step);

    constexpr int kModes = 128;
    const std::int64_t first = 20'000;
    std::vector<cplx> coeffs;
    std::vector<std::uint8_t> direct;
    ex.block(first, kModes, kModes, coeffs, direct);
    REQUIRE(coeffs.size() >= static_cast<std::size_t>(kModes * plan.order));

    double worst = 0.0;
    for (const int j : {0, 17, 64, 127}) {
      CHECK(direct[j] == 0);
      const double tau = static_cast<double>(first + j) * step;
      for (const double ang : {0.0, 0.3, 0.71}) {
        const cplx u = std::polar(1.0, 2.0 * std::numbers::pi * ang);
        const cplx got = eval_expansion(&coeffs[j * plan.order], plan.order, u);
        const cplx s = center + plan.scale * u + cplx(0.0, tau);
        const cplx want = eval_continued_relaxed(StripPoint::from(s), p, 1e-12).value;
        worst = std::max(worst, std::abs(got - want));
      }
      const auto single = ex.at(tau);
      const cplx got = eval_expansion(single.data(), plan.order, {0.0, 1.0});
      const cplx want = eval_continued_relaxed(StripPoint::from(center + cplx(0.0, plan.scale + tau)), p, 1e-12).value;
      worst = std::max(worst, std::abs(got - want));
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("shifts near the Hurwitz pole are flagged") {
    const LerchParameters p{1.0, 1.0};
    const auto plan = plan_expansion(p, {0.9, 0.0}, 0.02, 100.0);
    const ShiftExpansion ex(p, plan, 0.05);
    CHECK(ex.near_pole(0.0));
    CHECK_FALSE(ex.near_pole(50.0));
  }

  TEST_CASE("expansion is infeasible when the node circle nears sigma = 0") {
    const auto plan = plan_expansion({0.5, 0.5}, {0.05, 0.0}, 0.04, 100.0);
    CHECK_FALSE(plan.feasible);
  }

  TEST_CASE("horner evaluation") {
    const std::vector<cplx> c{1.0, {0.0, 2.0}, -3.0};
    const cplx u(0.5, -0.25);
    CHECK(std::abs(eval_expansion(c.data(), 3, u) - (c[0] + c[1] * u + c[2] * u * u)) < 1e-15);
  }
}
