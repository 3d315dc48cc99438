#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cplmfc/critic_pid.hpp"

using namespace cplmfc;

TEST_CASE("proportional-only response") {
  PidState st;
  const PidGains g{2.0, 0.0, 0.0, 1.0, 0.0};
  const CriticWeights w{1.0, 0.0, 0.0};
  CHECK(pid_step(st, 1.0, 0.0, g, w, 0.1, 100.0) == doctest::Approx(2.0));
}

TEST_CASE("output saturation") {
  PidState st;
  const PidGains g{50.0, 0.0, 0.0, 1.0, 0.0};
  const CriticWeights w{1.0, 1.0, 1.0};
  CHECK(pid_step(st, 1.0, 0.0, g, w, 0.1, 3.0) == doctest::Approx(3.0));
  CHECK(pid_step(st, -1.0, 0.0, g, w, 0.1, 3.0) == doctest::Approx(-3.0));
}

TEST_CASE("anti-windup keeps the integral contribution bounded") {
  PidState st;
  const PidGains g{1.0, 4.0, 0.0, 1.0, 0.0};
  const CriticWeights w{1.0, 1.0, 0.0};
  const double u_max = 2.0;
  for (int k = 0; k < 500; ++k) pid_step(st, 1.0, 0.0, g, w, 0.1, u_max);
  CHECK(std::abs(w.lambda_i * g.Ki * st.e2) <= u_max + 1e-12);
}

TEST_CASE("conditional integration releases on sign reversal") {
  PidState st;
  const PidGains g{1.0, 1.0, 0.0, 1.0, 0.0};
  const CriticWeights w{1.0, 1.0, 0.0};
  for (int k = 0; k < 100; ++k) pid_step(st, 1.0, 0.0, g, w, 0.1, 1.5);
  const double e2_sat = st.e2;
  pid_step(st, 0.0, 1.0, g, w, 0.1, 1.5);  // error flips sign
  CHECK(st.e2 < e2_sat);
}

TEST_CASE("setpoint weights shape the kernel inputs") {
  PidState st;
  const PidGains g{3.0, 0.0, 0.0, 0.0, 0.0};  // b = 0: e1 = -y
  const CriticWeights w{1.0, 0.0, 0.0};
  CHECK(pid_step(st, 5.0, 1.0, g, w, 0.1, 100.0) == doctest::Approx(-3.0));
}

TEST_CASE("non-finite inputs rejected") {
  PidState st;
  const PidGains g{1.0, 1.0, 1.0, 1.0, 0.0};
  const CriticWeights w{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(pid_step(st, std::nan(""), 0.0, g, w, 0.1, 1.0), std::runtime_error);
  CHECK_THROWS_AS(pid_step(st, 0.0, 0.0, g, w, -0.1, 1.0), std::runtime_error);
}

TEST_CASE("compact two-degree-of-freedom form matches the kernel sum") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist(0.0, 1.0);
  const double dt = 0.05;
  for (int trial = 0; trial < 100; ++trial) {
    PidGains g;
    g.Kp = std::abs(dist(rng)) + 0.1;
    g.Ki = std::abs(dist(rng)) + 0.1;
    g.Kd = std::abs(dist(rng)) + 0.1;
    g.b = 0.5 + 0.5 * std::abs(std::sin(trial * 0.37));
    g.c = 0.5 * std::abs(std::cos(trial * 0.53));
    std::vector<double> r(200), y(200);
    for (std::size_t k = 0; k < r.size(); ++k) {
      r[k] = dist(rng);
      y[k] = dist(rng);
    }
    const std::vector<double> uc = compact_reconstruct(r, y, g, dt);
    PidState st;  // Tf = 0: unfiltered, matching the compact realization
    const CriticWeights w{1.0, 1.0, 1.0};
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double uk = pid_step(st, r[k], y[k], g, w, dt, 1e15);
      CHECK(std::abs(uk - uc[k]) < 1e-9 * std::max(1.0, std::abs(uk)));
    }
  }
}
