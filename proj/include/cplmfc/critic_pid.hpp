#pragma once

#include <cstddef>
#include <vector>

namespace cplmfc {

// Multipliers scaling the P/I/D kernel contributions.
struct CriticWeights {
  double lambda_p = 1.0;
  double lambda_i = 1.0;
  double lambda_d = 1.0;
};

struct PidGains {
  double Kp = 0.0;
  double Ki = 0.0;
  double Kd = 0.0;
  double b = 1.0;  // proportional setpoint weight
  double c = 0.0;  // derivative setpoint weight
};

struct PidState {
  double e2 = 0.0;        // integral accumulator, anti-windup clamped
  double d_filt = 0.0;    // filtered derivative of (c r - y)
  double prev_ef = 0.0;   // previous c r - y sample
  bool have_prev = false;
  double Tf = 0.0;        // derivative filter time constant (Td/10; 0 = unfiltered)
};

// One discrete 2-DOF PID step:
//   e1 = b r - y, e2 += (r - y) dt, e3 = filtered backward difference of (c r - y)
//   u  = clamp(lp Kp e1 + li Ki e2 + ld Kd e3, +-u_max)
// Conditional integration freezes e2 when saturated and the error drives
// deeper; the accumulator is clamped so li Ki e2 stays within u_max.
// Throws std::runtime_error on non-finite inputs.
double pid_step(PidState& state, double r, double y, const PidGains& g,
                const CriticWeights& w, double dt, double u_max);

// Compact 2-DOF reconstruction u = B r + A e - D y with
// B = Kp b + Kd s c, A = Ki/s, D = Kp + Kd s, using the same discrete
// integral/derivative approximations as pid_step (unit critic weights,
// no saturation). Returns the control sequence for the given histories.
std::vector<double> compact_reconstruct(const std::vector<double>& r,
                                        const std::vector<double>& y,
                                        const PidGains& g, double dt);

}  // namespace cplmfc
