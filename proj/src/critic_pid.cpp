#include "cplmfc/critic_pid.hpp"

#include <cmath>
#include <stdexcept>

namespace cplmfc {

double pid_step(PidState& st, double r, double y, const PidGains& g,
                const CriticWeights& w, double dt, double u_max) {
  if (!std::isfinite(r) || !std::isfinite(y))
    throw std::runtime_error("pid_step: non-finite input signal");
  if (!(dt > 0.0) || !(u_max > 0.0))
    throw std::runtime_error("pid_step: dt and u_max must be > 0");

  const double e = r - y;
  const double e1 = g.b * r - y;
  const double ef = g.c * r - y;

  double draw = 0.0;
  if (st.have_prev) draw = (ef - st.prev_ef) / dt;
  const double a = (st.Tf > 0.0) ? dt / (st.Tf + dt) : 1.0;
  st.d_filt += a * (draw - st.d_filt);
  st.prev_ef = ef;
  st.have_prev = true;

  double e2_new = st.e2 + e * dt;
  double u = w.lambda_p * g.Kp * e1 + w.lambda_i * g.Ki * e2_new + w.lambda_d * g.Kd * st.d_filt;
  // Conditional integration: hold the accumulator when saturated and the
  // current error pushes further into saturation.
  if (std::abs(u) > u_max && e * u > 0.0) {
    e2_new = st.e2;
    u = w.lambda_p * g.Kp * e1 + w.lambda_i * g.Ki * e2_new + w.lambda_d * g.Kd * st.d_filt;
  }
  const double ki_eff = w.lambda_i * g.Ki;
  if (std::abs(ki_eff) > 1e-12) {
    const double cap = u_max / std::abs(ki_eff);
    if (e2_new > cap) e2_new = cap;
    if (e2_new < -cap) e2_new = -cap;
  }
  st.e2 = e2_new;

  if (!std::isfinite(u)) throw std::runtime_error("pid_step: non-finite control output");
  if (u > u_max) u = u_max;
  if (u < -u_max) u = -u_max;
  return u;
}

std::vector<double> compact_reconstruct(const std::vector<double>& r,
                                        const std::vector<double>& y,
                                        const PidGains& g, double dt) {
  if (r.size() != y.size()) throw std::runtime_error("compact_reconstruct: length mismatch");
  if (!(dt > 0.0)) throw std::runtime_error("compact_reconstruct: dt must be > 0");

  std::vector<double> u(r.size());
  double e2 = 0.0;
  double fr = 0.0, fy = 0.0;  // filtered derivatives of c r and y
  double prev_r = 0.0, prev_y = 0.0;
  const double Tf = 0.0;  // matched to an unfiltered pid_step; kept for symmetry
  const double a = (Tf > 0.0) ? dt / (Tf + dt) : 1.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double e = r[k] - y[k];
    double dr = 0.0, dy = 0.0;
    if (k > 0) {
      dr = (g.c * r[k] - g.c * prev_r) / dt;
      dy = (y[k] - prev_y) / dt;
    }
    fr += a * (dr - fr);
    fy += a * (dy - fy);
    prev_r = r[k];
    prev_y = y[k];
    e2 += e * dt;
    const double Br = g.Kp * g.b * r[k] + g.Kd * fr;  // B = Kp b + Kd s c
    const double Ae = g.Ki * e2;                      // A = Ki / s
    const double Dy = g.Kp * y[k] + g.Kd * fy;        // D = Kp + Kd s
    u[k] = Br + Ae - Dy;
  }
  return u;
}

}  // namespace cplmfc
