#include "cplmfc/gain_adapter.hpp"

#include <cmath>
#include <stdexcept>

#include "cplmfc/nlsig.hpp"

namespace cplmfc {

double kappa_g(double tau_l) {
  if (!(tau_l >= 0.0)) throw std::domain_error("kappa_g: tau_l must be >= 0");
  constexpr double p1 = 0.05132, p2 = 0.2041, p3 = 0.1214;
  constexpr double q1 = 1.538, q2 = 0.5864;
  const double t = (tau_l - 5.936) / 8.771;
  const double den = t * t + q1 * t + q2;
  if (std::abs(den) < 1e-12) throw std::runtime_error("kappa_g: degenerate fit denominator");
  return (p1 * t * t + p2 * t + p3) / den;
}

double k_plim(const AdapterConfig& cfg) {
  return cfg.alpha * kappa_g(cfg.tau_l) * (cfg.tau_l + cfg.t_s) / cfg.t_s;
}

double kp_init(double e, double u, double lim, int n) {
  const double kp0 = nlsig_eval(e, {lim + e, -(lim + e), lim, -lim, 1, 0.1, 0}) +
                     nlsig_eval(u, {lim + u, -(lim + u), lim, -lim, 1, 0.1, 0});
  return nlsig_eval(kp0, {lim + kp0, 0.0, lim, 0.0, n, 0.1, 0});
}

void kp_update(AdapterState& st, double e, double e_t, const AdapterConfig& cfg,
               double dt, double elapsed) {
  if (!std::isfinite(e_t) || !std::isfinite(e))
    throw std::runtime_error("kp_update: non-finite composite error");
  if (!(elapsed > cfg.tau_l)) return;  // adaptation gated until past the delay time
  st.adaptation_enabled = true;

  // The update keeps the sign of e * e_t (the Lyapunov-decrease direction);
  // the bound only limits the composite-error magnitude.
  double et_clamped = e_t;
  if (et_clamped > cfg.u_max) et_clamped = cfg.u_max;
  if (et_clamped < -cfg.u_max) et_clamped = -cfg.u_max;
  double kdot = cfg.alpha * cfg.gamma * e * et_clamped;
  if (!cfg.paper_literal) kdot *= dt;

  st.k_plim = k_plim(cfg);
  st.Kp += kdot;
  if (st.Kp > st.k_plim) st.Kp = st.k_plim;
  if (st.Kp < 1e-6) st.Kp = 1e-6;
}

}  // namespace cplmfc
