#include "cplmfc/fuzzy_map.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cplmfc/nlsig.hpp"
#include "cplmfc/ref_model.hpp"

namespace cplmfc {
namespace {

struct Corner {
  double b, c, x_pk, x_s;
};

// Tabulated membership-function centers (Table of normalized peak/settling times).
constexpr Corner kCorners[4] = {
    {0.0, 0.0, 4.43, 9.98},
    {1.0, 0.0, 2.20, 7.74},
    {0.0, 1.0, 5.5, 11.07},
    {1.0, 1.0, 5.5, 11.07},
};

void check_domain(double b, double c) {
  if (!(b >= 0.0 && b <= 1.0 && c >= 0.0 && c <= 1.0))
    throw std::domain_error("fuzzy_map: b and c must lie in [0,1]");
}

// Refines a sign change of f on [lo, hi] by bisection.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

NormalizedTimes lookup_times_fsm(double b, double c) {
  check_domain(b, c);
  // Nearest corner; ties round toward (b=1, c=0).
  const double bn = (b > 0.5) ? 1.0 : (b < 0.5 ? 0.0 : 1.0);
  const double cn = (c > 0.5) ? 1.0 : (c < 0.5 ? 0.0 : 0.0);
  for (const auto& k : kCorners)
    if (k.b == bn && k.c == cn) return {k.x_s, k.x_pk};
  throw std::logic_error("lookup_times_fsm: corner table exhausted");
}

NormalizedTimes derive_normalized_times(double b, double c, double zeta) {
  check_domain(b, c);
  if (!(zeta > 0.0 && zeta < 1.0))
    throw std::domain_error("derive_normalized_times: zeta must be in (0,1)");
  // With b = c = 1 the model output equals the setpoint identically and has no
  // transient. The c = 1 normalized times are amplitude-independent (the
  // response envelope is a pure scaled sinusoid), so the b = 0 limit is used.
  if (c > 1.0 - 1e-9 && b > 1.0 - 1e-9) b = 0.0;

  const CplmSpec spec = make_cplm_spec(zeta, 1.0, b, c);
  const double wd = std::sqrt(1.0 - zeta * zeta);
  auto y = [&](double t) { return cplm_analytic_response(t, spec); };
  auto ydot = [&](double t) {
    // d/dt of 1 + e^{-zeta t}(P cos(wd t) + Q sin(wd t))
    const double P = c - 1.0;
    const double Q = (2.0 * b - c - 1.0) * zeta / wd;
    const double env = std::exp(-zeta * t);
    const double cs = std::cos(wd * t), sn = std::sin(wd * t);
    return env * ((-zeta * P + Q * wd) * cs + (-zeta * Q - P * wd) * sn);
  };

  const double dt = 1e-4;
  const double t_end = 60.0;

  // First local maximum: first sign change of ydot from + to -.
  double t_pk = -1.0;
  double prev = ydot(dt);
  for (double t = 2.0 * dt; t < t_end; t += dt) {
    const double cur = ydot(t);
    if (prev > 0.0 && cur <= 0.0) {
      t_pk = bisect(ydot, t - dt, t);
      break;
    }
    prev = cur;
  }
  if (t_pk < 0.0) throw std::runtime_error("derive_normalized_times: no peak found");

  // First undershoot interval after the peak: y crosses below 1, then back above.
  auto err = [&](double t) { return y(t) - 1.0; };
  double t_enter = -1.0, t_exit = -1.0;
  prev = err(t_pk);
  for (double t = t_pk + dt; t < t_end; t += dt) {
    const double cur = err(t);
    if (t_enter < 0.0) {
      if (prev >= 0.0 && cur < 0.0) t_enter = bisect(err, t - dt, t);
    } else if (prev <= 0.0 && cur > 0.0) {
      t_exit = bisect(err, t - dt, t);
      break;
    }
    prev = cur;
  }
  if (t_enter < 0.0 || t_exit < 0.0)
    throw std::runtime_error("derive_normalized_times: no undershoot interval found");

  return {0.5 * (t_enter + t_exit), t_pk};
}

FisConfig make_default_fis(double zeta) {
  FisConfig cfg;
  cfg.grid = 11;
  cfg.width = 0.5 / (cfg.grid - 1);
  cfg.centers.resize(cfg.grid);
  for (int i = 0; i < cfg.grid; ++i) cfg.centers[i] = double(i) / (cfg.grid - 1);
  cfg.xs_conseq.resize(cfg.grid * cfg.grid);
  cfg.xpk_conseq.resize(cfg.grid * cfg.grid);
  for (int i = 0; i < cfg.grid; ++i) {
    for (int j = 0; j < cfg.grid; ++j) {
      const double b = cfg.centers[i], c = cfg.centers[j];
      NormalizedTimes nt{};
      bool pinned = false;
      for (const auto& k : kCorners) {
        if (std::abs(b - k.b) < 1e-12 && std::abs(c - k.c) < 1e-12) {
          nt = {k.x_s, k.x_pk};
          pinned = true;
          break;
        }
      }
      if (!pinned) nt = derive_normalized_times(b, c, zeta);
      cfg.xs_conseq[i * cfg.grid + j] = nt.x_s;
      cfg.xpk_conseq[i * cfg.grid + j] = nt.x_pk;
    }
  }
  return cfg;
}

namespace {

// Closed n-logistic sigmoid membership: rising edge into the center from the
// left, falling edge away from it on the right.
double membership(double x, double center, double width) {
  if (x < center) {
    return nlsig_eval(x, {center, center - width, 1.0, 0.0, 1, 6.0, 0});
  }
  return nlsig_eval(x, {center + width, center, 1.0, 0.0, 1, 6.0, 1});
}

}  // namespace

NormalizedTimes lookup_times_fis(double b, double c, const FisConfig& cfg) {
  check_domain(b, c);
  double num_s = 0.0, num_pk = 0.0, den = 0.0;
  for (int i = 0; i < cfg.grid; ++i) {
    const double mb = membership(b, cfg.centers[i], cfg.width);
    for (int j = 0; j < cfg.grid; ++j) {
      const double w = mb * membership(c, cfg.centers[j], cfg.width);
      num_s += w * cfg.xs_conseq[i * cfg.grid + j];
      num_pk += w * cfg.xpk_conseq[i * cfg.grid + j];
      den += w;
    }
  }
  if (!(den > 0.0))
    throw std::runtime_error("lookup_times_fis: degenerate membership (all basis weights zero)");
  return {num_s / den, num_pk / den};
}

}  // namespace cplmfc
