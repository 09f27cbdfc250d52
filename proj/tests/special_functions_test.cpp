#include <doctest.h>

#include <cmath>

#include "helmfield/special_functions.hpp"

using namespace helmfield;

TEST_CASE("spherical j0 matches sin(x)/x and handles the origin") {
  CHECK(j0_spherical(0.0) == 1.0);
  CHECK(j0_spherical(kPi) == doctest::Approx(0.0).epsilon(1e-15));
  // Series branch agrees with the direct formula just above the switch.
  const double x = 2e-4;
  CHECK(j0_spherical(x / 2) ==
        doctest::Approx(std::sin(x / 2) / (x / 2)).epsilon(1e-14));
  CHECK(j0_spherical(3.7) == doctest::Approx(std::sin(3.7) / 3.7).epsilon(1e-15));
  CHECK(std::abs(j0_spherical(12.3)) <= 1.0);
}

TEST_CASE("cylindrical J0 and Y0 match reference values") {
  // Classic table anchors.
  CHECK(bessel_j0(1.0) == doctest::Approx(0.76519768655796656).epsilon(1e-12));
  CHECK(bessel_y0(1.0) == doctest::Approx(0.08825696421567696).epsilon(1e-12));
  CHECK(bessel_j0(10.0) == doctest::Approx(-0.24593576445134835).epsilon(1e-11));
  CHECK(bessel_j0(0.0) == 1.0);

  const Complex h = hankel2_0(1.0);
  CHECK(h.real() == doctest::Approx(0.76519768655796656).epsilon(1e-12));
  CHECK(h.imag() == doctest::Approx(-0.08825696421567696).epsilon(1e-12));
  CHECK(std::abs(h) == doctest::Approx(0.7702706).epsilon(1e-6));

  CHECK_THROWS_AS(bessel_y0(0.0), std::invalid_argument);
  CHECK_THROWS_AS(hankel2_0(-1.0), std::invalid_argument);
}

TEST_CASE("J0/Y0 track the standard library across [1e-3, 1e3]") {
  // libstdc++ ships an independent implementation; agreement across the
  // series/asymptotic crossover pins both branches to the 1e-10 target.
  for (int i = 0; i <= 600; ++i) {
    const double x = 1e-3 * std::pow(10.0, 6.0 * i / 600.0);
    const double j_ref = std::cyl_bessel_j(0.0, x);
    const double y_ref = std::cyl_neumann(0.0, x);
    const double j_tol = 1e-10 * std::max(1.0, std::abs(j_ref));
    const double y_tol = 1e-10 * std::max(1.0, std::abs(y_ref));
    CHECK(std::abs(bessel_j0(x) - j_ref) <= j_tol);
    CHECK(std::abs(bessel_y0(x) - y_ref) <= y_tol);
  }
}
