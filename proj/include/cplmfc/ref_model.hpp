#pragma once

#include <Eigen/Dense>

namespace cplmfc {

// Closed PID-loop model (CPLM): second-order reference model
//   T_m(s) = (c s^2 + 2 b zeta wn s + wn^2) / (s^2 + 2 zeta wn s + wn^2)
struct CplmSpec {
  double zeta;
  double omega_n;
  double b;
  double c;
  double Ti;  // = 2 zeta / wn
  double Td;  // = 1 / (2 zeta wn)
};

// Builds a CplmSpec with Ti/Td derived from (zeta, omega_n).
// Throws std::domain_error unless omega_n > 0 and 0 < zeta < 1.
CplmSpec make_cplm_spec(double zeta, double omega_n, double b, double c);

// wn = x_s / (zeta * t_s). Throws std::domain_error on non-positive inputs.
double design_omega_n(double zeta, double x_s, double t_s);

// (Ki, Kd) from Kp via the model time constants: Ki = Kp/Ti, Kd = Kp*Td.
struct IntegralDerivativeGains {
  double ki;
  double kd;
};
IntegralDerivativeGains gains_from_model(double kp, const CplmSpec& spec);

// Observable-canonical realization of T_m driven by the setpoint r.
struct CplmState {
  Eigen::Vector2d x_m = Eigen::Vector2d::Zero();
  Eigen::Matrix2d A_m;
  Eigen::Vector2d B_m;
  Eigen::RowVector2d C_m;
  double D_m;
};

CplmState make_cplm_state(const CplmSpec& spec);

// Advances the model by dt (RK4, 10 substeps) and returns y_m.
double cplm_step(CplmState& state, double r, double dt);

// Closed-form unit-step response
//   y_m(t) = 1 + e^{-zeta wn t} [ (c-1) cos(wd t) + (2b-c-1) zeta (wn/wd) sin(wd t) ]
// Throws std::domain_error for zeta >= 1 (underdamped form only).
double cplm_analytic_response(double t, const CplmSpec& spec);

}  // namespace cplmfc
