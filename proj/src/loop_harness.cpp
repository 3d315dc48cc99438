#include "cplmfc/loop_harness.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cplmfc/fuzzy_map.hpp"

namespace cplmfc {
namespace {

double setpoint_at(const Scenario& scn, int k, int n_total) {
  const double t = k * scn.tau;
  switch (scn.sp_kind) {
    case SetpointKind::None:
      return 0.0;
    case SetpointKind::Step:
      return (t >= scn.sp_time) ? scn.sp_amplitude : 0.0;
    case SetpointKind::Sine:
      // f full cycles over the run: r = A sin(2 pi f k / N).
      return scn.sp_amplitude * std::sin(2.0 * M_PI * scn.sp_freq * k / n_total);
  }
  return 0.0;
}

// c[k] coefficients highest power first; polynomial product.
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> poly_add(std::vector<double> a, const std::vector<double>& b) {
  if (b.size() > a.size()) a.insert(a.begin(), b.size() - a.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[a.size() - b.size() + i] += b[i];
  return a;
}

std::complex<double> poly_eval(const std::vector<double>& c, std::complex<double> s) {
  std::complex<double> v = 0.0;
  for (double ck : c) v = v * s + ck;
  return v;
}

}  // namespace

CriticWeights critic_defaults(double tau_l, double tau, double li1, double li2,
                              double ld1, double ld2) {
  if (!(li1 > 0.0 && li1 <= li2 && li2 <= 1.0))
    throw std::invalid_argument("critic_defaults: integral tiers must satisfy 0 < li1 <= li2 <= 1");
  if (!(ld1 >= 0.0 && ld1 <= ld2 && ld2 <= 1.0))
    throw std::invalid_argument("critic_defaults: derivative tiers must satisfy 0 <= ld1 <= ld2 <= 1");
  CriticWeights w;
  w.lambda_p = 1.0;
  const bool delayed = tau_l > tau;
  w.lambda_i = delayed ? li1 : li2;
  w.lambda_d = delayed ? ld1 : ld2;
  return w;
}

std::unique_ptr<Plant> make_plant(const Scenario& scn) {
  const double internal_dt = scn.tau / 10.0;
  if (scn.plant_kind == PlantKind::Pmlm) {
    PmlmParams p = scn.pmlm;
    p.tau_l = scn.plant_tau_l;
    return std::make_unique<PmlmPlant>(p, internal_dt);
  }
  return std::make_unique<LtiPlant>(scn.num, scn.den, scn.plant_tau_l, internal_dt,
                                    scn.u_max);
}

RunResult run_cplmfc(const Scenario& scn) {
  if (!(scn.tau > 0.0)) throw std::invalid_argument("run_cplmfc: tau must be > 0");
  if (!(scn.t_s > 0.0))
    throw std::invalid_argument("run_cplmfc: t_s must be set (run identification first)");

  const NormalizedTimes times =
      scn.use_fis ? lookup_times_fis(scn.b, scn.c, make_default_fis(scn.zeta))
                  : lookup_times_fsm(scn.b, scn.c);
  const double wn = design_omega_n(scn.zeta, times.x_s, scn.t_s);
  const CplmSpec spec = make_cplm_spec(scn.zeta, wn, scn.b, scn.c);
  CplmState model = make_cplm_state(spec);

  const CriticWeights w =
      scn.use_tiers ? critic_defaults(scn.adapter_tau_l(), scn.tau, scn.lambda_i1,
                                      scn.lambda_i2, scn.lambda_d1, scn.lambda_d2)
                    : CriticWeights{1.0, scn.lambda_i, scn.lambda_d};

  AdapterConfig acfg;
  acfg.alpha = scn.alpha;
  acfg.gamma = scn.gamma;
  acfg.tau_l = scn.adapter_tau_l();
  acfg.t_s = scn.t_s;
  acfg.u_max = scn.u_max;
  acfg.paper_literal = scn.paper_literal;
  AdapterState ast;
  ast.Kp = 0.01;
  ast.k_plim = k_plim(acfg);

  auto plant = make_plant(scn);
  PidState pstate;
  pstate.Tf = spec.Td / 10.0;

  std::mt19937_64 rng(scn.seed);
  std::normal_distribution<double> noise(0.0, scn.noise_std > 0.0 ? scn.noise_std : 1.0);

  const int n = std::max(1, static_cast<int>(std::llround(scn.duration / scn.tau)));
  RunResult res;
  RunTrace& tr = res.trace;
  tr.t.reserve(n);

  double u = 0.0;
  double prev_e = 0.0;
  bool have_prev_e = false;
  double r_absmax = 0.0;

  for (int k = 0; k < n; ++k) {
    const double t = k * scn.tau;
    const double r = setpoint_at(scn, k, n);
    r_absmax = std::max(r_absmax, std::abs(r));
    double y = plant->output();
    if (scn.noise_std > 0.0) y += noise(rng);
    const double y_m = cplm_step(model, r, scn.tau);
    const double e = r - y;

    // Gain schedule: Kp = 0.01 at t = 0 (ensure-clause), sigmoid-seeded over
    // the dead-time window, adaptive afterwards.
    if (t > 0.0 && t <= acfg.tau_l) {
      ast.Kp = kp_init(e, u, ast.k_plim);
    } else if (t > acfg.tau_l) {
      const double edot = have_prev_e ? (e - prev_e) / scn.tau : 0.0;
      const double e_t =
          w.lambda_p * e + w.lambda_i * pstate.e2 / spec.Ti + w.lambda_d * spec.Td * edot;
      kp_update(ast, e, e_t, acfg, scn.tau, t);
    }
    const IntegralDerivativeGains ikd = gains_from_model(ast.Kp, spec);
    const PidGains g{ast.Kp, ikd.ki, ikd.kd, scn.b, scn.c};

    u = pid_step(pstate, r, y, g, w, scn.tau, scn.u_max);
    prev_e = e;
    have_prev_e = true;

    tr.t.push_back(t);
    tr.r.push_back(r);
    tr.y.push_back(y);
    tr.y_m.push_back(y_m);
    tr.u.push_back(u);
    tr.e.push_back(e);
    tr.kp.push_back(g.Kp);
    tr.ki.push_back(g.Ki);
    tr.kd.push_back(g.Kd);
    tr.final_gains = g;

    const double y_limit = 100.0 * std::max(1.0, r_absmax);
    if (std::abs(y) > y_limit) {
      tr.stable = false;
      tr.diverged_at = t;
      break;
    }
    plant->set_disturbance(t >= scn.dist_time ? scn.dist_amplitude : 0.0);
    try {
      plant->step(u, scn.tau);
    } catch (const std::runtime_error&) {
      tr.stable = false;
      tr.diverged_at = t;
      break;
    }
  }

  res.metrics = compute_metrics(tr);
  return res;
}

Metrics compute_metrics(const RunTrace& trace, double band) {
  if (trace.t.empty()) throw std::invalid_argument("compute_metrics: empty trace");
  const std::size_t n = trace.t.size();
  const double dt = n > 1 ? trace.t[1] - trace.t[0] : 0.0;

  Metrics m;
  double r_absmax = 0.0, y_absmax = 0.0, y_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    m.J_iae += std::abs(trace.e[i]) * dt;
    m.J_ise += trace.e[i] * trace.e[i] * dt;
    r_absmax = std::max(r_absmax, std::abs(trace.r[i]));
    y_absmax = std::max(y_absmax, std::abs(trace.y[i]));
    y_max = std::max(y_max, trace.y[i]);
  }

  const double r_final = trace.r.back();
  // Regulation traces (zero final setpoint) get an absolute band; the unit
  // floor keeps the band meaningful when the trace never leaves zero.
  const double band_abs =
      (r_final != 0.0) ? band * std::abs(r_final) : band * std::max(r_absmax, 1.0);
  m.overshoot = (r_final != 0.0) ? (y_max - r_final) / std::abs(r_final) : y_absmax;
  if (m.overshoot < 0.0) m.overshoot = 0.0;

  std::size_t settled_from = n;
  for (std::size_t i = n; i-- > 0;) {
    if (std::abs(trace.y[i] - r_final) > band_abs) break;
    settled_from = i;
  }
  if (settled_from < n && trace.stable) m.t_settle_1pct = trace.t[settled_from];
  return m;
}

DominanceReport dominance_diagnostics(const std::vector<double>& num,
                                      const std::vector<double>& den,
                                      const PidGains& gains, const CplmSpec& spec) {
  DominanceReport rep;
  const std::vector<double> c_num{gains.Kd, gains.Kp, gains.Ki};  // Kd s^2 + Kp s + Ki

  // min |C(jw) P(jw)| over w in (0, wn/10], log-spaced.
  rep.min_loop_gain = std::numeric_limits<double>::infinity();
  const double w_hi = spec.omega_n / 10.0;
  const double w_lo = w_hi * 1e-3;
  for (int i = 0; i < 200; ++i) {
    const double w = w_lo * std::pow(w_hi / w_lo, i / 199.0);
    const std::complex<double> s(0.0, w);
    const std::complex<double> C = poly_eval(c_num, s) / s;
    const std::complex<double> P = poly_eval(num, s) / poly_eval(den, s);
    rep.min_loop_gain = std::min(rep.min_loop_gain, std::abs(C * P));
  }

  // Closed-loop characteristic polynomial D_p s + N_p (Kd s^2 + Kp s + Ki).
  std::vector<double> chi = poly_add(poly_mul(den, {1.0, 0.0}), poly_mul(num, c_num));
  while (chi.size() > 1 && chi.front() == 0.0) chi.erase(chi.begin());
  const int deg = static_cast<int>(chi.size()) - 1;
  if (deg < 1 || chi.front() == 0.0) return rep;

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -chi[deg - i] / chi[0];
  const Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  if (es.info() != Eigen::Success) return rep;

  rep.stable = true;
  rep.dominant_pole = std::complex<double>(-std::numeric_limits<double>::infinity(), 0.0);
  for (int i = 0; i < deg; ++i) {
    const std::complex<double> p = es.eigenvalues()(i);
    if (p.real() >= 0.0) rep.stable = false;
    if (p.real() > rep.dominant_pole.real() ||
        (p.real() == rep.dominant_pole.real() && p.imag() > rep.dominant_pole.imag()))
      rep.dominant_pole = p;
  }
  const double wd = spec.omega_n * std::sqrt(1.0 - spec.zeta * spec.zeta);
  const std::complex<double> p_m(-spec.zeta * spec.omega_n, wd);
  const std::complex<double> p_dom(rep.dominant_pole.real(),
                                   std::abs(rep.dominant_pole.imag()));
  rep.rel_pole_distance = std::abs(p_dom - p_m) / std::abs(p_m);
  return rep;
}

std::string trace_to_csv(const RunTrace& trace) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t,r,y,y_m,u,e,kp,ki,kd\n";
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    os << trace.t[i] << ',' << trace.r[i] << ',' << trace.y[i] << ',' << trace.y_m[i]
       << ',' << trace.u[i] << ',' << trace.e[i] << ',' << trace.kp[i] << ','
       << trace.ki[i] << ',' << trace.kd[i] << '\n';
  }
  return os.str();
}

std::string metrics_to_text(const Metrics& m, const RunTrace& trace) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "J_iae=" << m.J_iae << '\n';
  os << "J_ise=" << m.J_ise << '\n';
  os << "overshoot=" << m.overshoot << '\n';
  os << "t_settle_1pct=";
  if (m.t_settle_1pct)
    os << *m.t_settle_1pct << '\n';
  else
    os << "none\n";
  os << "stable=" << (trace.stable ? 1 : 0) << '\n';
  os << "kp_final=" << trace.final_gains.Kp << '\n';
  os << "ki_final=" << trace.final_gains.Ki << '\n';
  os << "kd_final=" << trace.final_gains.Kd << '\n';
  return os.str();
}

}  // namespace cplmfc
