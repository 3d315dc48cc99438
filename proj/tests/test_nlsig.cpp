#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cplmfc/nlsig.hpp"

using cplmfc::NlsigParams;
using cplmfc::nlsig_eval;

namespace {
const NlsigParams unit{1.0, -1.0, 1.0, 0.0, 1, 6.0, 0};
}

TEST_CASE("midpoint symmetry") {
  CHECK(nlsig_eval(0.0, unit) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("value at the upper knot") {
  // alpha = 2*6/2 = 6, delta = 0 -> 1/(1+e^-6)
  CHECK(nlsig_eval(1.0, unit) == doctest::Approx(0.9975273768433653).epsilon(1e-14));
}

TEST_CASE("limit conditions at +-10 spans") {
  const double span = 2.0;
  CHECK(std::abs(nlsig_eval(-1.0 + 10.0 * span, unit) - 1.0) < 1e-6);
  CHECK(std::abs(nlsig_eval(-1.0 - 10.0 * span, unit) - 0.0) < 1e-6);
}

TEST_CASE("mirror identity between the two forms") {
  NlsigParams dec = unit;
  dec.xi = 1;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -3.0 + 6.0 * i / 1000.0;
    CHECK(nlsig_eval(x, dec) ==
          doctest::Approx(unit.y_max + unit.y_min - nlsig_eval(x, unit)).epsilon(1e-12));
  }
}

TEST_CASE("strict monotonicity on a dense grid") {
  NlsigParams inc{2.0, -2.0, 3.0, -1.0, 3, 6.0, 0};
  NlsigParams dec = inc;
  dec.xi = 1;
  double prev_i = nlsig_eval(-4.0, inc), prev_d = nlsig_eval(-4.0, dec);
  for (int i = 1; i < 10000; ++i) {
    const double x = -4.0 + 8.0 * i / 9999.0;
    const double vi = nlsig_eval(x, inc), vd = nlsig_eval(x, dec);
    CHECK(vi > prev_i);
    CHECK(vd < prev_d);
    prev_i = vi;
    prev_d = vd;
  }
}

TEST_CASE("output stays within the open range") {
  for (double x : {-5.0, -2.0, 0.0, 2.0, 5.0}) {
    const double v = nlsig_eval(x, unit);
    CHECK(v > unit.y_min);
    CHECK(v < unit.y_max);
  }
  // far outside the knots the logistic saturates to the bound at machine precision
  for (double x : {-1e9, 1e9}) {
    const double v = nlsig_eval(x, unit);
    CHECK(v >= unit.y_min);
    CHECK(v <= unit.y_max);
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(nlsig_eval(0.0, NlsigParams{-1.0, 1.0, 1.0, 0.0, 1, 6.0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(nlsig_eval(0.0, NlsigParams{1.0, -1.0, 1.0, 0.0, 0, 6.0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(nlsig_eval(0.0, NlsigParams{1.0, -1.0, 1.0, 0.0, 1, -6.0, 0}),
                  std::invalid_argument);
}
