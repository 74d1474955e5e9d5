#include <cmath>
#include <numbers>

#include "doctest.h"
#include "onestep/error.hpp"
#include "onestep/quadrature.hpp"

using onestep::quad::adaptive_simpson;

TEST_CASE("adaptive Simpson is exact on cubics") {
  auto f = [](double x) { return 1.0 + 2.0 * x - 3.0 * x * x + 4.0 * x * x * x; };
  // Antiderivative x + x^2 - x^3 + x^4 on [0, 2] = 2 + 4 - 8 + 16.
  CHECK(adaptive_simpson(f, 0.0, 2.0, 1e-12) == doctest::Approx(14.0).epsilon(1e-15));
}

TEST_CASE("adaptive Simpson reaches the requested tolerance on exp") {
  auto f = [](double x) { return std::exp(-x * x); };
  const double exact = 0.5 * std::sqrt(std::numbers::pi) * std::erf(3.0);
  CHECK(std::abs(adaptive_simpson(f, 0.0, 3.0, 1e-12) - exact) < 1e-12);
}

TEST_CASE("orientation and empty range") {
  auto f = [](double x) { return std::cos(x); };
  const double fwd = adaptive_simpson(f, 0.0, 1.0, 1e-12);
  const double back = adaptive_simpson(f, 1.0, 0.0, 1e-12);
  CHECK(fwd == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
  CHECK(back == doctest::Approx(-fwd).epsilon(1e-14));
  CHECK(adaptive_simpson(f, 0.3, 0.3, 1e-12) == 0.0);
}

TEST_CASE("non-convergence raises a numerical error") {
  auto step = [](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; };
  try {
    adaptive_simpson(step, 0.0, 1.0, 1e-15, 12);
    FAIL("expected a numerical error");
  } catch (const onestep::Error& e) {
    CHECK(e.kind() == onestep::ErrorKind::Numerical);
  }
}

TEST_CASE("trapezoid on a non-uniform grid") {
  const double x[] = {0.0, 0.1, 0.5, 1.0};
  const double y[] = {0.0, 0.1, 0.5, 1.0};
  CHECK(onestep::quad::trapezoid(x, y) == doctest::Approx(0.5));
  const double short_y[] = {1.0};
  CHECK_THROWS_AS(onestep::quad::trapezoid(x, short_y), onestep::Error);
}
