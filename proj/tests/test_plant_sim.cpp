#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cplmfc/plant_sim.hpp"

using namespace cplmfc;

TEST_CASE("first-order step matches the analytic solution") {
  LtiPlant p({1.0}, {1.0, 1.0}, 0.0, 0.01);
  double y = 0.0;
  for (int k = 0; k < 100; ++k) y = p.step(1.0, 0.01);
  CHECK(y == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("third-order step value at t = 1") {
  // 1/(s+1)^3 unit step: y(1) = 1 - 2.5/e
  LtiPlant p({1.0}, {1.0, 3.0, 3.0, 1.0}, 0.0, 0.01);
  double y = 0.0;
  for (int k = 0; k < 10; ++k) y = p.step(1.0, 0.1);
  CHECK(y == doctest::Approx(1.0 - 2.5 / std::exp(1.0)).epsilon(1e-6));
}

TEST_CASE("leading-coefficient normalization") {
  LtiPlant a({1.0}, {1.0, 3.0, 3.0, 1.0}, 0.0, 0.01);
  LtiPlant b({2.0}, {2.0, 6.0, 6.0, 2.0}, 0.0, 0.01);
  for (int k = 0; k < 50; ++k)
    CHECK(a.step(1.0, 0.1) == doctest::Approx(b.step(1.0, 0.1)).epsilon(1e-14));
}

TEST_CASE("input dead time holds the output at rest") {
  LtiPlant p({1.0}, {1.0, 1.0}, 0.5, 0.01);
  double y = 0.0;
  for (int k = 0; k < 49; ++k) y = p.step(1.0, 0.01);
  CHECK(std::abs(y) < 1e-12);
  for (int k = 0; k < 100; ++k) y = p.step(1.0, 0.01);
  CHECK(y > 0.1);
}

TEST_CASE("input clamp applies after the disturbance is added") {
  LtiPlant a({1.0}, {1.0, 1.0}, 0.0, 0.01, 1.0);
  LtiPlant b({1.0}, {1.0, 1.0}, 0.0, 0.01, 1.0);
  a.set_disturbance(4.0);
  for (int k = 0; k < 100; ++k) {
    const double ya = a.step(5.0, 0.01);  // 9 clamped to 1
    const double yb = b.step(1.0, 0.01);
    CHECK(ya == doctest::Approx(yb).epsilon(1e-14));
  }
}

TEST_CASE("reset restores the initial state") {
  LtiPlant p({1.0}, {1.0, 1.0}, 0.1, 0.01);
  for (int k = 0; k < 50; ++k) p.step(1.0, 0.01);
  p.set_disturbance(1.0);
  p.reset();
  CHECK(p.output() == 0.0);
  CHECK(p.disturbance() == 0.0);
  double y = 0.0;
  for (int k = 0; k < 9; ++k) y = p.step(1.0, 0.01);
  CHECK(std::abs(y) < 1e-12);  // the delay buffer was cleared too
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(LtiPlant({1.0, 1.0}, {1.0, 1.0}, 0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(LtiPlant({1.0}, {0.0, 1.0}, 0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(LtiPlant({1.0}, {1.0, 1.0}, -0.1, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(LtiPlant({1.0}, {1.0, 1.0}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("linear motor statics and friction") {
  PmlmParams params;
  PmlmPlant p(params, 0.0001);
  // static friction dominates a weak input: 8.1*0.3 < 3
  for (int k = 0; k < 100; ++k) p.step(0.3, 0.001);
  CHECK(std::abs(p.output()) < 1e-3);
  p.reset();
  // a strong input moves the carriage
  for (int k = 0; k < 1000; ++k) p.step(20.0, 0.001);
  CHECK(p.output() > 0.01);
  CHECK(p.velocity() > 0.0);
  p.reset();
  CHECK(p.output() == 0.0);
  CHECK(p.velocity() == 0.0);
}

TEST_CASE("linear motor dead time") {
  PmlmParams params;
  params.tau_l = 0.01;
  PmlmPlant p(params, 0.0001);
  double y = 0.0;
  for (int k = 0; k < 9; ++k) y = p.step(100.0, 0.001);
  CHECK(std::abs(y) < 1e-12);
}
