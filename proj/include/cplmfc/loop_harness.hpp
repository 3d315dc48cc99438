#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cplmfc/critic_pid.hpp"
#include "cplmfc/gain_adapter.hpp"
#include "cplmfc/plant_sim.hpp"
#include "cplmfc/ref_model.hpp"

namespace cplmfc {

enum class PlantKind { Lti, Pmlm };
enum class SetpointKind { None, Step, Sine };

struct Scenario {
  // [plant]
  PlantKind plant_kind = PlantKind::Lti;
  std::vector<double> num{1.0};
  std::vector<double> den{1.0, 1.0};
  PmlmParams pmlm;
  double plant_tau_l = 0.0;  // input dead time, s

  // [loop]
  double tau = 0.1;
  double u_max = 1.0;
  double duration = 10.0;
  double noise_std = 0.0;
  unsigned long seed = 0;

  // [cplmfc]
  double alpha = 1.0;
  double gamma = 0.001;
  double zeta = 0.70710678118654752;
  double b = 1.0;
  double c = 0.0;
  double lambda_i = 1.0;
  double lambda_d = 0.0;
  bool use_tiers = false;  // derive (lambda_i, lambda_d) from the tier rule
  double lambda_i1 = 0.25, lambda_i2 = 0.6;
  double lambda_d1 = 0.1, lambda_d2 = 0.25;
  bool use_fis = false;    // fuzzy interpolation instead of the corner lookup
  bool paper_literal = false;
  double t_s = 0.0;        // identified settling time; must be set before a run
  std::optional<double> tau_l_override;  // adapter dead time if not the plant's

  // [setpoint]
  SetpointKind sp_kind = SetpointKind::Step;
  double sp_amplitude = 1.0;
  double sp_time = 0.0;
  double sp_freq = 1.0;  // sine: cycles over the whole run

  // [disturbance]
  double dist_amplitude = 0.0;
  double dist_time = 0.0;

  double adapter_tau_l() const {
    return tau_l_override ? *tau_l_override : plant_tau_l;
  }
};

struct RunTrace {
  std::vector<double> t, r, y, y_m, u, e, kp, ki, kd;
  PidGains final_gains;
  bool stable = true;
  double diverged_at = -1.0;
};

struct Metrics {
  double J_iae = 0.0;
  double J_ise = 0.0;
  double overshoot = 0.0;
  std::optional<double> t_settle_1pct;
};

struct RunResult {
  RunTrace trace;
  Metrics metrics;
};

// Tier rule for the critic weights: the lower tier applies when tau_l > tau.
CriticWeights critic_defaults(double tau_l, double tau, double li1, double li2,
                              double ld1, double ld2);

std::unique_ptr<Plant> make_plant(const Scenario& scn);

// One closed-loop CPLMFC run. Divergence (|y| > 100 * max(1, |r|_max)) marks
// the trace unstable and returns the partial trace.
RunResult run_cplmfc(const Scenario& scn);

Metrics compute_metrics(const RunTrace& trace, double band = 0.01);

// Loop-gain dominance and closed-loop pole diagnostics for LTI plants.
struct DominanceReport {
  double min_loop_gain = 0.0;          // min |C(jw) P(jw)| for w <= wn/10
  std::complex<double> dominant_pole;  // rightmost closed-loop pole
  double rel_pole_distance = 0.0;      // to the model pole pair, relative
  bool stable = false;                 // all closed-loop poles in the open LHP
};

DominanceReport dominance_diagnostics(const std::vector<double>& num,
                                      const std::vector<double>& den,
                                      const PidGains& gains, const CplmSpec& spec);

std::string trace_to_csv(const RunTrace& trace);
std::string metrics_to_text(const Metrics& m, const RunTrace& trace);

}  // namespace cplmfc
