#include <doctest.h>

#include <cmath>

#include "lerch/phase.hpp"

using namespace lerch;

TEST_SUITE("phase") {
  TEST_CASE("unit_phase hits the quarter turns") {
    CHECK(std::abs(unit_phase(0.25) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(unit_phase(0.5) - cplx(-1, 0)) < 1e-15);
    CHECK(std::abs(unit_phase(-0.25) - cplx(0, -1)) < 1e-15);
    CHECK(std::abs(std::abs(unit_phase(123.456)) - 1.0) < 1e-15);
  }

  TEST_CASE("frac_product stays exact for large n") {
    // 1/3 * n mod 1 must not drift as n grows.
    const double third = 1.0 / 3.0;
    const double f = frac_product(third, 3'000'000'001);
    CHECK(std::abs(f - 1.0 / 3.0) < 1e-6);
    CHECK(std::abs(frac_product(0.5, 7)) == doctest::Approx(0.5));
    CHECK(frac_product(0.25, 4) == doctest::Approx(0.0));
  }

  TEST_CASE("reduced_frequency maps lambda into (-1/2, 1/2]") {
    CHECK(reduced_frequency(1.0) == 0.0);
    CHECK(reduced_frequency(0.5) == 0.5);
    CHECK(reduced_frequency(0.75) == doctest::Approx(-0.25));
    CHECK(reduced_frequency(0.2) == doctest::Approx(0.2));
  }

  TEST_CASE("compensated sum recovers cancelled low bits") {
    CompensatedSum acc;
    acc.add(1e16);
    acc.add(1.0);
    acc.add(-1e16);
    CHECK(acc.value().real() == 1.0);
  }
}
