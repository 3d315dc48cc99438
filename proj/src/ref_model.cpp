#include "cplmfc/ref_model.hpp"

#include <cmath>
#include <stdexcept>

namespace cplmfc {

CplmSpec make_cplm_spec(double zeta, double omega_n, double b, double c) {
  if (!(omega_n > 0.0)) throw std::domain_error("make_cplm_spec: omega_n must be > 0");
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("make_cplm_spec: zeta must be in (0,1)");
  CplmSpec s;
  s.zeta = zeta;
  s.omega_n = omega_n;
  s.b = b;
  s.c = c;
  s.Ti = 2.0 * zeta / omega_n;
  s.Td = 1.0 / (2.0 * zeta * omega_n);
  return s;
}

double design_omega_n(double zeta, double x_s, double t_s) {
  if (!(zeta > 0.0) || !(x_s > 0.0) || !(t_s > 0.0))
    throw std::domain_error("design_omega_n: inputs must be > 0");
  return x_s / (zeta * t_s);
}

IntegralDerivativeGains gains_from_model(double kp, const CplmSpec& spec) {
  return {kp / spec.Ti, kp * spec.Td};
}

CplmState make_cplm_state(const CplmSpec& spec) {
  const double wn = spec.omega_n;
  const double zw = spec.zeta * wn;
  CplmState st;
  st.A_m << 0.0, -wn * wn,
            1.0, -2.0 * zw;
  st.B_m << wn * wn * (1.0 - spec.c),
            2.0 * zw * (spec.b - spec.c);
  st.C_m << 0.0, 1.0;
  st.D_m = spec.c;
  return st;
}

double cplm_step(CplmState& state, double r, double dt) {
  const int substeps = 10;
  const double h = dt / substeps;
  const auto& A = state.A_m;
  const auto& B = state.B_m;
  for (int i = 0; i < substeps; ++i) {
    const Eigen::Vector2d k1 = A * state.x_m + B * r;
    const Eigen::Vector2d k2 = A * (state.x_m + 0.5 * h * k1) + B * r;
    const Eigen::Vector2d k3 = A * (state.x_m + 0.5 * h * k2) + B * r;
    const Eigen::Vector2d k4 = A * (state.x_m + h * k3) + B * r;
    state.x_m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return state.C_m * state.x_m + state.D_m * r;
}

double cplm_analytic_response(double t, const CplmSpec& spec) {
  if (spec.zeta >= 1.0) throw std::domain_error("cplm_analytic_response: requires zeta < 1");
  const double wn = spec.omega_n;
  const double wd = wn * std::sqrt(1.0 - spec.zeta * spec.zeta);
  const double env = std::exp(-spec.zeta * wn * t);
  return 1.0 + env * ((spec.c - 1.0) * std::cos(wd * t) +
                      (2.0 * spec.b - spec.c - 1.0) * spec.zeta * (wn / wd) * std::sin(wd * t));
}

}  // namespace cplmfc
