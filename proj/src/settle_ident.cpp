#include "cplmfc/settle_ident.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cplmfc {
namespace {

struct Attempt {
  std::vector<double> trace;
  int stop = 0;
};

Attempt probe(Plant& plant, const IdentConfig& cfg, int k_s) {
  plant.reset();
  const double kss_inv = cfg.u_max / cfg.y_max;
  const int W = std::max(20, static_cast<int>(cfg.t_window / cfg.tau));
  Attempt at;
  at.trace.reserve(1024);
  double prev_y = plant.output();
  for (int n = 0; n < cfg.max_samples; ++n) {
    const double y = plant.output();
    if (std::abs(y) > 2.0 * cfg.y_max)
      throw std::runtime_error("run_identification: safety abort, output exceeded 2*y_max");
    at.trace.push_back(y);

    // Trailing-window steady-state detector.
    if (n + 1 >= 2 * W) {
      const auto first = at.trace.end() - W;
      const auto [mn, mx] = std::minmax_element(first, at.trace.end());
      const double mean = std::accumulate(first, at.trace.end(), 0.0) / W;
      const double scale = std::max(std::abs(mean), 1e-9);
      const bool flat = (*mx - *mn) < 0.01 * scale;
      const bool level = std::abs(at.trace.back() - *first) < 0.001 * scale;
      if (flat && level) {
        at.stop = n;
        return at;
      }
    }

    const double ydot = (n > 0) ? (y - prev_y) / cfg.tau : 0.0;
    const double e = cfg.k * cfg.y_max - y;
    double u = kss_inv * e - k_s * ydot;
    if (u > cfg.u_max) u = cfg.u_max;
    if (u < -cfg.u_max) u = -cfg.u_max;
    prev_y = y;
    plant.step(u, cfg.tau);
  }
  throw std::runtime_error("run_identification: no settling within max_samples");
}

bool is_oscillatory(const std::vector<double>& y) {
  // More than 3 sign changes of the output rate after the first peak.
  int peak = -1;
  for (std::size_t i = 2; i < y.size(); ++i) {
    if (y[i - 1] > y[i - 2] && y[i] <= y[i - 1]) {
      peak = static_cast<int>(i);
      break;
    }
  }
  if (peak < 0) return false;
  int changes = 0;
  double prev = 0.0;
  for (std::size_t i = peak + 1; i < y.size(); ++i) {
    const double d = y[i] - y[i - 1];
    if (d == 0.0) continue;
    if (prev != 0.0 && ((d > 0.0) != (prev > 0.0))) ++changes;
    prev = d;
  }
  return changes > 3;
}

}  // namespace

void compute_times(int N_ts, int N_tau_l, double tau, double tau_c, double tau_y,
                   double& t_s, double& tau_l) {
  if (N_ts <= N_tau_l) throw std::domain_error("compute_times: N_ts must exceed N_tau_l");
  t_s = tau * (N_ts - N_tau_l);
  tau_l = tau * N_tau_l + tau_c + tau_y;
}

IdentResult run_identification(Plant& plant, const IdentConfig& cfg) {
  if (!(cfg.k >= 0.5 && cfg.k <= 1.0))
    throw std::invalid_argument("run_identification: k must lie in [0.5, 1]");
  if (!(cfg.u_max > 0.0 && cfg.y_max > 0.0))
    throw std::invalid_argument("run_identification: u_max and y_max must be > 0");

  Attempt at = probe(plant, cfg, cfg.k_s);
  bool retried = false;
  if (cfg.k_s == 0 && is_oscillatory(at.trace)) {
    at = probe(plant, cfg, 1);
    retried = true;
  }

  const auto& y = at.trace;
  const double y0 = y.front();
  const double resp_thresh = 0.005 * cfg.k * cfg.y_max;

  // First sample visibly responding; the sample before it closes the dead time.
  int first_resp = -1;
  for (std::size_t n = 0; n < y.size(); ++n) {
    if (std::abs(y[n] - y0) > resp_thresh) {
      first_resp = static_cast<int>(n);
      break;
    }
  }
  if (first_resp < 0) throw std::runtime_error("run_identification: output never responded");
  const int N_tau_l = std::max(0, first_resp - 1);

  const int W = std::max(20, static_cast<int>(cfg.t_window / cfg.tau));
  const double y_ss =
      std::accumulate(y.end() - std::min<std::size_t>(W, y.size()), y.end(), 0.0) /
      std::min<std::size_t>(W, y.size());
  const double band = 0.01 * std::max(std::abs(y_ss), 1e-9);
  int N_ts = static_cast<int>(y.size()) - 1;
  for (int n = static_cast<int>(y.size()) - 1; n >= 0; --n) {
    if (std::abs(y[n] - y_ss) > band) break;
    N_ts = n;
  }

  IdentResult res;
  res.N_ts = N_ts;
  res.N_tau_l = N_tau_l;
  res.oscillatory = retried;
  res.trace = y;
  compute_times(N_ts, N_tau_l, cfg.tau, cfg.tau_c, cfg.tau_y, res.t_s, res.tau_l);
  return res;
}

}  // namespace cplmfc
