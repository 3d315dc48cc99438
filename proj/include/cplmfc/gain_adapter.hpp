#pragma once

namespace cplmfc {

struct AdapterConfig {
  double alpha = 1.0;      // response-speed hyper-parameter
  double gamma = 0.001;    // small positive weighting constant
  double tau_l = 0.0;      // total delay time, s
  double t_s = 1.0;        // identified settling time, s
  double u_max = 1.0;      // input bound (clamps the composite error)
  int n = 1;               // sigmoid segments for the penalization step
  bool paper_literal = false;  // per-sample update without the dt factor
};

struct AdapterState {
  double Kp = 0.01;
  double k_plim = 0.0;
  bool adaptation_enabled = false;
};

// Rational fit kappa_g(tau_l) correlating delay time with the stabilizing
// proportional-gain ceiling. Throws std::runtime_error if the fit denominator
// degenerates (cannot occur on [0, 30]).
double kappa_g(double tau_l);

// k_plim = alpha * kappa_g(tau_l) * (tau_l + t_s) / t_s
double k_plim(const AdapterConfig& cfg);

// Sigmoid-bounded initial gain from the current error and control input;
// result lies in (0, lim).
double kp_init(double e, double u, double lim, int n = 1);

// Adaptive update, gated until elapsed > tau_l:
//   Kp += alpha * gamma * e * clamp(e_t, +-u_max)   [* dt unless paper_literal]
// then clamped to (0, k_plim]. Throws std::runtime_error on non-finite e_t.
void kp_update(AdapterState& st, double e, double e_t, const AdapterConfig& cfg,
               double dt, double elapsed);

}  // namespace cplmfc
