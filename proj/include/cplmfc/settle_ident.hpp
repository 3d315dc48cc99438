#pragma once

#include <vector>

#include "cplmfc/plant_sim.hpp"

namespace cplmfc {

struct IdentConfig {
  double tau = 0.01;       // sampling time, s
  double u_max = 1.0;
  double y_max = 1.0;
  double k = 1.0;          // excitation fraction, [0.5, 1]
  int k_s = 0;             // output-derivative damping flag
  int max_samples = 100000;
  double tau_c = 0.0;      // controller-computation delay, s
  double tau_y = 0.0;      // measurement-transport delay, s
  double t_window = 1.0;   // steady-state detector window, s
};

struct IdentResult {
  int N_ts = 0;            // settling sample count
  int N_tau_l = 0;         // delay sample count
  double t_s = 0.0;        // = tau * (N_ts - N_tau_l)
  double tau_l = 0.0;      // = tau * N_tau_l + tau_c + tau_y
  bool oscillatory = false;  // the k_s = 1 retry fired
  std::vector<double> trace;
};

// Probes the plant with u = (u_max/y_max) * (k*y_max - y) - k_s * ydot until the
// steady-state detector fires, then extracts the delay and settling horizons.
// Throws std::runtime_error if no settling occurs within max_samples or if the
// output exceeds 2*y_max (safety abort).
IdentResult run_identification(Plant& plant, const IdentConfig& cfg);

// t_s = tau (N_ts - N_tau_l); tau_l = tau N_tau_l + tau_c + tau_y.
// Throws std::domain_error unless N_ts > N_tau_l.
void compute_times(int N_ts, int N_tau_l, double tau, double tau_c, double tau_y,
                   double& t_s, double& tau_l);

}  // namespace cplmfc
