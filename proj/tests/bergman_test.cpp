#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lerch/bergman.hpp"
#include "lerch/error.hpp"

using namespace lerch;

namespace {

constexpr double kPi = std::numbers::pi;

const Rectangle kUnitRect{{0.6, 0.0}, {0.9, 1.0}};

// Delta for g = 1 on [a,b] x [c,d], integrated in closed form.
cplx rect_delta_closed_form(const Rectangle& r, cplx z) {
  const double a = r.corner_lo.real(), b = r.corner_hi.real();
  const double c = r.corner_lo.imag(), d = r.corner_hi.imag();
  const cplx i(0.0, 1.0);
  return ((std::exp(-a * z) - std::exp(-b * z)) / z) * ((std::exp(-i * c * z) - std::exp(-i * d * z)) / (i * z));
}

Polynomial monomial(int k, cplx center) {
  std::vector<cplx> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  return Polynomial(c, center);
}

}  // namespace

TEST_SUITE("bergman") {
  TEST_CASE("disk closed forms") {
    const cplx c(0.75, 0.3);
    const double r = 0.2;
    const BergmanDomain u(Disk{c, r});
    const auto one = Polynomial::constant(1.0, c);
    const auto lin = monomial(1, c);
    CHECK(std::abs(inner_product(one, one, u) - kPi * r * r) < 1e-10);
    CHECK(std::abs(inner_product(one, lin, u)) < 1e-10);
    CHECK(std::abs(inner_product(lin, lin, u) - kPi * std::pow(r, 4) / 2.0) < 1e-9);
  }

  TEST_CASE("hermitian symmetry and positivity") {
    const BergmanDomain u(kUnitRect);
    const Polynomial f({{0.3, -1.0}, {2.0, 0.5}, {0.0, 1.5}}, {0.7, 0.4});
    const Polynomial g({{-1.0, 0.2}, {0.1, 0.0}, {0.4, 0.4}, {1.0, -2.0}}, {0.8, 0.1});
    CHECK(std::abs(inner_product(f, g, u) - std::conj(inner_product(g, f, u))) < 1e-12);
    for (int k = 0; k <= 8; ++k) {
      const auto p = monomial(k, u.center());
      const cplx v = inner_product(p, p, u);
      CHECK(v.real() > 0.0);
      CHECK(std::abs(v.imag()) < 1e-12);
    }
    CHECK(inner_product(Polynomial::constant(0.0), Polynomial::constant(0.0), u) == cplx(0.0));
  }

  TEST_CASE("doubling the order leaves low-degree products unchanged") {
    for (const Shape& s : {Shape(kUnitRect), Shape(Disk{{0.75, 0.0}, 0.2})}) {
      const BergmanDomain a(s, 16), b(s, 32);
      for (int k = 0; k <= 8; ++k) {
        for (int l = 0; l <= 8; l += 2) {
          const auto f = monomial(k, {0.7, 0.2});
          const auto g = monomial(l, {0.8, 0.5});
          CHECK(std::abs(inner_product(f, g, a) - inner_product(f, g, b)) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("domain validation") {
    CHECK_THROWS_AS(BergmanDomain(kUnitRect, 7), InvalidArgument);
    CHECK_THROWS_AS(BergmanDomain(Rectangle{{0.4, 0.0}, {0.9, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(BergmanDomain(Rectangle{{0.6, 0.0}, {0.6, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(BergmanDomain(Disk{{0.75, 0.0}, 0.25}), InvalidArgument);
  }

  TEST_CASE("delta transform of the constant on a rectangle") {
    const Rectangle r{{0.55, -0.5}, {0.95, 2.0}};
    const BergmanDomain u(r);
    const DeltaTransform d(Polynomial::constant(1.0), u);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> rad(0.1, 30.0), ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 50; ++i) {
      const cplx z = std::polar(rad(rng), ang(rng));
      const cplx want = rect_delta_closed_form(r, z);
      CHECK(std::abs(delta_transform(d, z) - want) <= 1e-9 * std::abs(want));
    }
  }

  TEST_CASE("delta transform at zero is the conjugate integral") {
    const BergmanDomain u(Disk{{0.7, 1.0}, 0.15});
    const Polynomial g({{0.5, 1.0}, {-2.0, 0.25}}, {0.7, 1.0});
    const DeltaTransform d(g, u);
    CHECK(std::abs(d(0.0) - inner_product(Polynomial::constant(1.0), g, u)) < 1e-14);
  }

  TEST_CASE("delta decay bound") {
    const BergmanDomain u(kUnitRect);
    const auto one = Polynomial::constant(1.0);
    const DeltaTransform d(one, u);
    CHECK(std::abs(d(20.0)) <= u.area() * std::exp(-0.6 * 20.0));
    const double c = delta_decay_constant(one, u);
    CHECK(c == doctest::Approx(0.3 * std::exp(0.6)));
    for (double x = 5.0; x <= 30.0; x += 0.5) {
      for (double t = x; t <= x + 1.0; t += 0.25) CHECK(std::abs(d(t)) <= c * std::exp(-0.6 * x));
    }
  }

  TEST_CASE("v_n norms") {
    const BergmanDomain u(kUnitRect);
    CHECK(vn_norm_sq(0, {1.0, 0.3}, u) == doctest::Approx(u.area()).epsilon(1e-15));
    for (const std::int64_t n : {1, 10, 1000}) {
      CHECK(vn_norm_sq(n, {0.4, 0.3}, u) <= u.area() * std::pow(n + 0.4, -1.2));
    }
    CHECK(vn_norm_sq(7, {0.4, 0.3}, u) == vn_norm_sq(7, {0.4, 0.9}, u));
    CHECK_THROWS_AS(vn_norm_sq(-1, {0.4, 0.3}, u), InvalidArgument);
  }

  TEST_CASE("v_n partial sums converge at the integral-tail rate") {
    const BergmanDomain u(kUnitRect, 8);
    const LerchParameters p{1.0, 0.5};
    double head = 0.0, tail = 0.0;
    for (std::int64_t n = 0; n <= 100'000; ++n) head += vn_norm_sq(n, p, u);
    for (std::int64_t n = 100'001; n <= 200'000; ++n) tail += vn_norm_sq(n, p, u);
    CHECK(head > 0.0);
    CHECK(tail < std::pow(1e5, 1.0 - 1.2) / 0.2 * u.area());
  }

  TEST_CASE("phi pair sums") {
    CHECK(std::abs(phi_pair_sum(0.5, 2.0) - 1.0) < 1e-15);
    CHECK(std::abs(phi_pair_sum(0.25, 3.0)) < 1e-15);
    double worst = 0.0;
    for (int t = 0; t <= 10'000; ++t) worst = std::max(worst, std::abs(phi_pair_sum(0.3, t)));
    CHECK(worst <= 1.0 / std::sin(kPi * 0.3) + 1e-9);
    CHECK_THROWS_AS(phi_pair_sum(1.0, 3.0), InvalidArgument);
    CHECK_THROWS_AS(phi_pair_sum(0.3, -1.0), InvalidArgument);
  }

  TEST_CASE("windowed sums: one component has no cross terms") {
    const BergmanDomain u(kUnitRect);
    const TupleElement g{{Polynomial::constant(1.0)}};
    const std::vector<LerchParameters> p{{1.0 / kPi, 1.0 / 3.0}};
    const auto w = windowed_sums(g, p, u, 5.0, {1, 1.0});
    CHECK(w.s2 == cplx(0.0));
    CHECK(w.s_sq == doctest::Approx(w.s1).epsilon(1e-14));
    CHECK(w.count() > 0);
  }

  TEST_CASE("windowed sums: zero element") {
    const BergmanDomain u(kUnitRect);
    const TupleElement g{{Polynomial::constant(0.0), Polynomial::constant(0.0)}};
    const std::vector<LerchParameters> p{{0.3, 0.2}, {0.3, 0.7}};
    const auto w = windowed_sums(g, p, u, 4.0, {0, 1.0});
    CHECK(w.s1 == 0.0);
    CHECK(w.s2 == cplx(0.0));
    CHECK(w.s == 0.0);
  }

  TEST_CASE("windowed sums: two components against a direct window loop") {
    const BergmanDomain u(kUnitRect);
    const TupleElement g{{Polynomial::constant(1.0), Polynomial::constant(1.0)}};
    const double alpha = 1.0 / kPi;
    const std::vector<LerchParameters> p{{alpha, 1.0 / 3.0}, {alpha, 2.0 / 3.0}};
    const auto w = windowed_sums(g, p, u, 5.0, {0, 1.0}, 3);

    double s1 = 0.0, s = 0.0, s_sq = 0.0;
    cplx s2;
    std::int64_t count = 0;
    const double lo = std::exp(5.0), hi = std::exp(6.0);
    for (std::int64_t n = 0; n + alpha <= hi; ++n) {
      if (n + alpha < lo) continue;
      ++count;
      const double ell = std::log(n + alpha);
      const cplx d = rect_delta_closed_form(kUnitRect, ell);
      const cplx e1 = std::polar(1.0, 2.0 * kPi * n / 3.0), e2 = std::polar(1.0, 4.0 * kPi * n / 3.0);
      s1 += 2.0 * std::norm(d);
      s2 += (e1 * std::conj(e2) + e2 * std::conj(e1)) * std::norm(d);
      s += std::abs((e1 + e2) * d);
      s_sq += std::norm((e1 + e2) * d);
    }
    CHECK(w.count() == count);
    CHECK(std::abs(w.s1 - s1) <= 1e-10 * s1);
    CHECK(std::abs(w.s2 - s2) <= 1e-10 * s1);
    CHECK(std::abs(w.s - s) <= 1e-10 * s);
    CHECK(std::abs(w.s_sq - (w.s1 + w.s2.real())) <= 1e-9 * w.s_sq);
  }

  TEST_CASE("windowed sums: thread count does not change the result") {
    const BergmanDomain u(kUnitRect);
    const TupleElement g{{Polynomial({1.0, {0.0, 1.0}}, {0.75, 0.5}), Polynomial::constant(2.0)}};
    const std::vector<LerchParameters> p{{0.3, 0.2}, {0.3, 0.45}};
    const auto a = windowed_sums(g, p, u, 10.0, {0, 0.5}, 1);
    const auto b = windowed_sums(g, p, u, 10.0, {0, 0.5}, 4);
    CHECK(a.s1 == b.s1);
    CHECK(a.s2 == b.s2);
    CHECK(a.s == b.s);
  }

  TEST_CASE("windowed sums: errors") {
    const BergmanDomain u(kUnitRect);
    const TupleElement g{{Polynomial::constant(1.0), Polynomial::constant(1.0)}};
    const std::vector<LerchParameters> p{{0.3, 0.2}, {0.3, 0.7}};
    CHECK_THROWS_AS(windowed_sums(g, p, u, 5.0, {2, 1.0}), EmptyWindowError);
    const std::vector<LerchParameters> dup{{0.3, 0.2}, {0.3, 0.2}};
    CHECK_THROWS_AS(windowed_sums(g, dup, u, 5.0, {0, 1.0}), InvalidArgument);
    const std::vector<LerchParameters> mixed{{0.3, 0.2}, {0.4, 0.7}};
    CHECK_THROWS_AS(windowed_sums(g, mixed, u, 5.0, {0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(windowed_sums(g, p, u, 19.0, {0, 1.0}), InvalidArgument);
  }

  TEST_CASE("divergence diagnostic") {
    const BergmanDomain u(kUnitRect);
    const std::vector<double> xs{6.0, 4.0, 5.0};
    const std::vector<LerchParameters> p{{1.0 / kPi, 1.0 / 3.0}};

    const auto zero = divergence_diagnostic({{Polynomial::constant(0.0)}}, p, u, xs, {0, 1.0});
    for (const auto& row : zero) {
      CHECK(row.s == 0.0);
      CHECK(row.cum_sum == 0.0);
      CHECK(row.envelope > 0.0);
    }

    const auto rows = divergence_diagnostic({{Polynomial::constant(1.0)}}, p, u, xs, {0, 1.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].x == 6.0);
    CHECK(rows[1].cum_sum < rows[2].cum_sum);
    CHECK(rows[2].cum_sum < rows[0].cum_sum);
    CHECK(rows[1].envelope == doctest::Approx(std::exp(4.0 * 0.1) / 16.0));

    // Cumulative sum up to the last window equals a direct sum of |Delta(log(n + alpha))|.
    const DeltaTransform d(Polynomial::constant(1.0), u);
    double direct = 0.0;
    for (std::int64_t n = 0; n <= rows[0].n_end; ++n) direct += std::abs(d(std::log(n + 1.0 / kPi)));
    CHECK(rows[0].cum_sum == doctest::Approx(direct).epsilon(1e-12));
  }

  TEST_CASE("delta decays like u^-0.6 on [1e2, 1e4]") {
    // Least-squares slope of log|Delta(log u)| against log u, closed form.
    constexpr int kN = 200;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < kN; ++i) {
      const double lu = std::log(1e2) + (std::log(1e4) - std::log(1e2)) * i / (kN - 1);
      const double ly = std::log(std::abs(rect_delta_closed_form(kUnitRect, lu)));
      sx += lu;
      sy += ly;
      sxx += lu * lu;
      sxy += lu * ly;
    }
    const double slope = (kN * sxy - sx * sy) / (kN * sxx - sx * sx);
    CHECK(slope >= -0.65);
    CHECK(slope <= -0.55);

    // The quadrature transform follows the same profile.
    const BergmanDomain u(kUnitRect);
    const DeltaTransform d(Polynomial::constant(1.0), u);
    for (const double x : {std::log(1e2), std::log(1e3), std::log(1e4)}) {
      const cplx want = rect_delta_closed_form(kUnitRect, x);
      CHECK(std::abs(d(x) - want) <= 1e-9 * std::abs(want));
    }
  }
}
