#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cplmfc/fuzzy_map.hpp"
#include "cplmfc/loop_harness.hpp"

using namespace cplmfc;

namespace {

Scenario benchmark() {
  Scenario s;
  s.num = {1.0};
  s.den = {1.0, 3.0, 3.0, 1.0};
  s.tau = 0.1;
  s.u_max = 10.0;
  s.duration = 40.0;
  s.alpha = 16.0;
  s.lambda_i = 0.6;
  s.lambda_d = 0.25;
  s.b = 1.0;
  s.c = 0.0;
  s.t_s = 10.0;
  s.paper_literal = true;
  s.sp_kind = SetpointKind::Step;
  s.sp_amplitude = 1.0;
  return s;
}

}  // namespace

TEST_CASE("critic weight tiers") {
  const CriticWeights hi = critic_defaults(0.0, 0.1, 0.25, 0.6, 0.1, 0.25);
  CHECK(hi.lambda_p == 1.0);
  CHECK(hi.lambda_i == doctest::Approx(0.6));
  CHECK(hi.lambda_d == doctest::Approx(0.25));
  const CriticWeights lo = critic_defaults(0.2, 0.1, 0.25, 0.6, 0.1, 0.25);
  CHECK(lo.lambda_i == doctest::Approx(0.25));
  CHECK(lo.lambda_d == doctest::Approx(0.1));
  const CriticWeights same = critic_defaults(0.2, 0.1, 0.5, 0.5, 0.1, 0.1);
  CHECK(same.lambda_i == doctest::Approx(0.5));
  CHECK_THROWS_AS(critic_defaults(0.0, 0.1, 0.8, 0.6, 0.1, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(critic_defaults(0.0, 0.1, 0.25, 0.6, 0.3, 0.25), std::invalid_argument);
}

TEST_CASE("metrics on a constant-error trace") {
  RunTrace tr;
  for (int k = 0; k < 100; ++k) {
    tr.t.push_back(k * 0.1);
    tr.r.push_back(1.0);
    tr.y.push_back(0.0);
    tr.y_m.push_back(1.0);
    tr.u.push_back(0.0);
    tr.e.push_back(1.0);
    tr.kp.push_back(1.0);
    tr.ki.push_back(1.0);
    tr.kd.push_back(1.0);
  }
  const Metrics m = compute_metrics(tr);
  CHECK(m.J_iae == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(m.J_ise == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_FALSE(m.t_settle_1pct.has_value());
  CHECK(m.J_ise <= m.J_iae * 1.0 + 1e-12);
}

TEST_CASE("metrics on a settled-from-start trace") {
  RunTrace tr;
  for (int k = 0; k < 50; ++k) {
    tr.t.push_back(k * 0.1);
    tr.r.push_back(1.0);
    tr.y.push_back(1.0);
    tr.y_m.push_back(1.0);
    tr.u.push_back(0.0);
    tr.e.push_back(0.0);
    tr.kp.push_back(1.0);
    tr.ki.push_back(1.0);
    tr.kd.push_back(1.0);
  }
  const Metrics m = compute_metrics(tr);
  REQUIRE(m.t_settle_1pct.has_value());
  CHECK(*m.t_settle_1pct == doctest::Approx(0.0));
  CHECK(m.overshoot == doctest::Approx(0.0));
}

TEST_CASE("model overshoot matches the second-order formula") {
  // b = c = 0, zeta = 1/sqrt(2): overshoot e^{-pi} over the unit final value
  const CplmSpec spec = make_cplm_spec(1.0 / std::sqrt(2.0), 1.0, 0.0, 0.0);
  RunTrace tr;
  for (int k = 0; k < 3000; ++k) {
    const double t = k * 0.01;
    tr.t.push_back(t);
    tr.r.push_back(1.0);
    tr.y.push_back(cplm_analytic_response(t, spec));
    tr.y_m.push_back(tr.y.back());
    tr.u.push_back(0.0);
    tr.e.push_back(1.0 - tr.y.back());
    tr.kp.push_back(1.0);
    tr.ki.push_back(1.0);
    tr.kd.push_back(1.0);
  }
  const Metrics m = compute_metrics(tr);
  CHECK(m.overshoot == doctest::Approx(std::exp(-M_PI)).epsilon(2e-2));
}

TEST_CASE("zero setpoint at rest is a fixed point") {
  Scenario s = benchmark();
  s.sp_kind = SetpointKind::None;
  const RunResult rr = run_cplmfc(s);
  for (double u : rr.trace.u) CHECK(u == 0.0);
  for (double y : rr.trace.y) CHECK(y == 0.0);
  for (double kp : rr.trace.kp) CHECK(kp == doctest::Approx(0.01));
  CHECK(rr.metrics.J_iae == doctest::Approx(0.0));
}

TEST_CASE("benchmark step run is stable with a sane error index") {
  const RunResult rr = run_cplmfc(benchmark());
  CHECK(rr.trace.stable);
  CHECK(rr.metrics.J_iae > 0.1);
  CHECK(rr.metrics.J_iae < 15.0);  // same order as the reference value 1.344
  CHECK(std::abs(rr.trace.y.back() - 1.0) < 0.05);
}

TEST_CASE("gain identities hold at every sample") {
  const Scenario s = benchmark();
  const RunResult rr = run_cplmfc(s);
  const NormalizedTimes nt = lookup_times_fsm(s.b, s.c);
  const double wn = design_omega_n(s.zeta, nt.x_s, s.t_s);
  const CplmSpec spec = make_cplm_spec(s.zeta, wn, s.b, s.c);
  for (std::size_t k = 0; k < rr.trace.t.size(); ++k) {
    CHECK(std::abs(rr.trace.ki[k] * spec.Ti - rr.trace.kp[k]) < 1e-12);
    CHECK(std::abs(rr.trace.kd[k] - rr.trace.kp[k] * spec.Td) < 1e-12);
  }
}

TEST_CASE("determinism: identical scenarios give identical traces") {
  const RunResult a = run_cplmfc(benchmark());
  const RunResult b = run_cplmfc(benchmark());
  CHECK(a.trace.y == b.trace.y);
  CHECK(a.trace.u == b.trace.u);
  CHECK(a.trace.kp == b.trace.kp);
}

TEST_CASE("instability detection halts promptly") {
  Scenario s = benchmark();
  s.den = {1.0, 1.0, -2.0, 0.0};  // open-loop pole at s = 1
  s.u_max = 0.05;                 // too little authority to stabilize
  const RunResult rr = run_cplmfc(s);
  CHECK_FALSE(rr.trace.stable);
  CHECK(rr.trace.diverged_at >= 0.0);
  CHECK(rr.trace.t.size() < static_cast<std::size_t>(s.duration / s.tau));
  CHECK_FALSE(rr.metrics.t_settle_1pct.has_value());
}

TEST_CASE("run validation") {
  Scenario s = benchmark();
  s.t_s = 0.0;
  CHECK_THROWS_AS(run_cplmfc(s), std::invalid_argument);
}

TEST_CASE("loop-gain dominance on the tuned benchmark") {
  const Scenario s = benchmark();
  const RunResult rr = run_cplmfc(s);
  const NormalizedTimes nt = lookup_times_fsm(s.b, s.c);
  const double wn = design_omega_n(s.zeta, nt.x_s, s.t_s);
  const CplmSpec spec = make_cplm_spec(s.zeta, wn, s.b, s.c);
  const DominanceReport rep = dominance_diagnostics(s.num, s.den, rr.trace.final_gains, spec);
  CHECK(rep.min_loop_gain > 1.0);
  CHECK(rep.stable);
  CHECK(rep.dominant_pole.real() < 0.0);

  const DominanceReport off =
      dominance_diagnostics(s.num, s.den, PidGains{0.0, 0.0, 0.0, 1.0, 0.0}, spec);
  CHECK(off.min_loop_gain < 1.0);
}

TEST_CASE("trace serialization") {
  RunTrace tr;
  tr.t = {0.0, 0.1};
  tr.r = {1.0, 1.0};
  tr.y = {0.0, 0.25};
  tr.y_m = {0.0, 0.2};
  tr.u = {2.0, 1.5};
  tr.e = {1.0, 0.75};
  tr.kp = {0.01, 0.02};
  tr.ki = {0.1, 0.2};
  tr.kd = {0.3, 0.4};
  const std::string csv = trace_to_csv(tr);
  CHECK(csv.rfind("t,r,y,y_m,u,e,kp,ki,kd\n", 0) == 0);
  CHECK(csv.find("0.25") != std::string::npos);
}
