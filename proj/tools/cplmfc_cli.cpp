#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cplmfc/scenario_config.hpp"

namespace fs = std::filesystem;
using namespace cplmfc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIdentFailed = 2;
constexpr int kExitUnstable = 3;

fs::path resolve_out_dir(const std::string& cli_out, const std::string& file_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("CPLMFC_OUT"); env && *env) return env;
  if (!file_out.empty()) return file_out;
  return ".";
}

void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

void write_gnuplot(const fs::path& dir, const std::string& csv_name) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 't [s]'\n"
     << "plot '" << csv_name << "' using 1:2 with lines title 'r', \\\n"
     << "     '" << csv_name << "' using 1:3 with lines title 'y', \\\n"
     << "     '" << csv_name << "' using 1:4 with lines title 'y_m'\n"
     << "pause -1\n";
  write_file(dir / "plot.gp", os.str());
}

int cmd_ident(const std::string& path, const std::string& out_cli, bool gnuplot) {
  ScenarioFile sf = load_scenario_file(path);
  auto plant = make_plant(sf.scn);
  IdentConfig cfg = sf.ident;
  cfg.tau = sf.scn.tau;
  cfg.u_max = sf.scn.u_max;
  IdentResult res;
  try {
    res = run_identification(*plant, cfg);
  } catch (const std::exception& e) {
    std::cerr << "identification failed: " << e.what() << '\n';
    return kExitIdentFailed;
  }
  std::cout << "N_ts=" << res.N_ts << '\n'
            << "N_tau_l=" << res.N_tau_l << '\n'
            << "t_s=" << res.t_s << '\n'
            << "tau_l=" << res.tau_l << '\n'
            << "oscillatory_retry=" << (res.oscillatory ? 1 : 0) << '\n';
  const fs::path dir = resolve_out_dir(out_cli, sf.out_dir);
  std::ostringstream csv;
  csv << std::setprecision(17) << "t,y\n";
  for (std::size_t n = 0; n < res.trace.size(); ++n)
    csv << n * cfg.tau << ',' << res.trace[n] << '\n';
  write_file(dir / "ident_trace.csv", csv.str());
  if (gnuplot) write_gnuplot(dir, "ident_trace.csv");
  return kExitOk;
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides,
            const std::string& out_cli, bool literal, bool have_seed,
            unsigned long seed, bool gnuplot) {
  ScenarioFile sf = load_scenario_file(path);
  for (const auto& ov : overrides) apply_override(sf, ov);
  if (literal) sf.scn.paper_literal = true;
  if (have_seed) sf.scn.seed = seed;

  if (!(sf.scn.t_s > 0.0)) {
    if (!sf.ident_enabled) {
      std::cerr << "scenario has no t_s and [ident] is not enabled\n";
      return kExitUsage;
    }
    auto plant = make_plant(sf.scn);
    IdentConfig cfg = sf.ident;
    cfg.tau = sf.scn.tau;
    cfg.u_max = sf.scn.u_max;
    try {
      const IdentResult res = run_identification(*plant, cfg);
      sf.scn.t_s = res.t_s;
      if (!sf.scn.tau_l_override) sf.scn.tau_l_override = res.tau_l;
    } catch (const std::exception& e) {
      std::cerr << "identification failed: " << e.what() << '\n';
      return kExitIdentFailed;
    }
  }

  const RunResult rr = run_cplmfc(sf.scn);
  const fs::path dir = resolve_out_dir(out_cli, sf.out_dir);
  write_file(dir / "trace.csv", trace_to_csv(rr.trace));
  write_file(dir / "metrics.txt", metrics_to_text(rr.metrics, rr.trace));
  if (gnuplot) write_gnuplot(dir, "trace.csv");
  std::cout << metrics_to_text(rr.metrics, rr.trace);
  if (!rr.trace.stable) {
    std::cerr << "instability detected at t=" << rr.trace.diverged_at << '\n';
    return kExitUnstable;
  }
  return kExitOk;
}

struct TableRow {
  std::string label;
  Scenario scn;
  bool fixed_gains = false;
  PidGains gains;          // fixed-gain playback rows
  double lambda_i = 1.0, lambda_d = 1.0;
  double paper_J_iae = 0.0;
};

// Fixed-gain playback: the adaptive pipeline replaced by constant gains.
RunResult run_fixed(const Scenario& scn, const PidGains& g, const CriticWeights& w) {
  auto plant = make_plant(scn);
  PidState st;
  st.Tf = (g.Kp > 0.0 ? (g.Kd / g.Kp) / 10.0 : 0.0);
  const int n = std::max(1, static_cast<int>(std::llround(scn.duration / scn.tau)));
  RunResult res;
  RunTrace& tr = res.trace;
  double r_absmax = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = k * scn.tau;
    double r = 0.0;
    if (scn.sp_kind == SetpointKind::Step)
      r = t >= scn.sp_time ? scn.sp_amplitude : 0.0;
    else if (scn.sp_kind == SetpointKind::Sine)
      r = scn.sp_amplitude * std::sin(2.0 * M_PI * scn.sp_freq * k / n);
    r_absmax = std::max(r_absmax, std::abs(r));
    const double y = plant->output();
    const double u = pid_step(st, r, y, g, w, scn.tau, scn.u_max);
    tr.t.push_back(t);
    tr.r.push_back(r);
    tr.y.push_back(y);
    tr.y_m.push_back(r);
    tr.u.push_back(u);
    tr.e.push_back(r - y);
    tr.kp.push_back(g.Kp);
    tr.ki.push_back(g.Ki);
    tr.kd.push_back(g.Kd);
    tr.final_gains = g;
    if (std::abs(y) > 100.0 * std::max(1.0, r_absmax)) {
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

Scenario benchmark_scenario() {
  Scenario s;
  s.plant_kind = PlantKind::Lti;
  s.num = {1.0};
  s.den = {1.0, 3.0, 3.0, 1.0};  // (s+1)^3
  s.tau = 0.1;
  s.u_max = 10.0;
  s.duration = 40.0;
  s.b = 1.0;
  s.c = 0.0;
  s.t_s = 10.0;
  s.paper_literal = true;
  return s;
}

Scenario pmlm_scenario(double m, double b_damp, double tau_l, double alpha,
                       double li, double ld) {
  Scenario s;
  s.plant_kind = PlantKind::Pmlm;
  s.pmlm.m = m;
  s.pmlm.b_damp = b_damp;
  s.plant_tau_l = tau_l;
  s.tau = 0.001;
  s.u_max = 150.0;
  s.duration = 4.0;
  s.alpha = alpha;
  s.lambda_i = li;
  s.lambda_d = ld;
  s.b = 1.0;
  s.c = 0.0;
  s.t_s = 1.8;
  s.paper_literal = true;
  s.sp_kind = SetpointKind::Sine;
  s.sp_amplitude = 1.5;
  s.sp_freq = 4.0;
  return s;
}

std::vector<TableRow> table2_rows() {
  std::vector<TableRow> rows;
  auto base = [](bool setpoint, bool dist) {
    Scenario s = benchmark_scenario();
    if (setpoint) {
      s.sp_kind = SetpointKind::Step;
      s.sp_amplitude = 1.0;
    } else {
      s.sp_kind = SetpointKind::None;
    }
    s.dist_amplitude = dist ? 1.0 : 0.0;
    s.dist_time = 0.0;
    return s;
  };
  auto adaptive = [&](const std::string& label, bool sp, bool dist, double alpha,
                      double li, double ld, double ref) {
    TableRow r;
    r.label = label;
    r.scn = base(sp, dist);
    r.scn.alpha = alpha;
    r.scn.lambda_i = li;
    r.scn.lambda_d = ld;
    r.paper_J_iae = ref;
    return r;
  };
  auto fixed = [&](const std::string& label, bool sp, bool dist, double kp, double ki,
                   double kd, double ref) {
    TableRow r;
    r.label = label;
    r.scn = base(sp, dist);
    r.fixed_gains = true;
    r.gains = PidGains{kp, ki, kd, 1.0, 0.0};
    r.paper_J_iae = ref;
    return r;
  };
  // Group 1: unit-step load disturbance only.
  rows.push_back(fixed("CC-IAE [d]", false, true, 3.81, 3.33, 4.25, 0.529));
  rows.push_back(adaptive("CPLMFC a=2 [d]", false, true, 2.0, 0.6, 0.25, 3.127));
  rows.push_back(adaptive("CPLMFC a=16 [d]", false, true, 16.0, 0.6, 0.25, 0.383));
  rows.push_back(adaptive("CPLMFC a=16 li=0.25 [d]", false, true, 16.0, 0.25, 0.25, 0.886));
  // Group 2: unit-step setpoint only.
  rows.push_back(fixed("JJST [r]", true, false, 10.0, 2.70, 9.26, 1.519));
  rows.push_back(adaptive("CPLMFC a=2 [r]", true, false, 2.0, 0.6, 0.25, 3.12));
  rows.push_back(adaptive("CPLMFC a=16 [r]", true, false, 16.0, 0.6, 0.25, 1.344));
  rows.push_back(adaptive("CPLMFC a=16 li=0.25 [r]", true, false, 16.0, 0.25, 0.25, 1.269));
  // Group 3: setpoint and disturbance.
  rows.push_back(fixed("JJST [r+d]", true, true, 10.0, 2.70, 9.26, 1.773));
  rows.push_back(adaptive("CPLMFC a=2 [r+d]", true, true, 2.0, 0.6, 0.25, 2.116));
  rows.push_back(adaptive("CPLMFC a=16 [r+d]", true, true, 16.0, 0.6, 0.25, 1.160));
  rows.push_back(adaptive("CPLMFC a=16 li=0.25 [r+d]", true, true, 16.0, 0.25, 0.25, 1.338));
  return rows;
}

std::vector<TableRow> table3_rows() {
  const double tau = 0.001;
  struct P {
    double m, b, tl, a, li, ld, ref;
  };
  const std::vector<P> p = {
      {5.4, 35.1, 0.0, 500.0, 0.5, 0.01, 0.68},  {1.0, 35.1, 0.0, 500.0, 0.5, 0.01, 0.65},
      {5.4, 35.1, 10 * tau, 500.0, 0.5, 0.01, 1.12}, {1.0, 35.1, 10 * tau, 500.0, 0.5, 0.01, 1.09},
      {5.4, 0.0, 10 * tau, 250.0, 0.8, 0.1, 1.02},   {1.0, 0.0, 10 * tau, 250.0, 0.8, 0.1, 0.94},
      {5.4, -35.1, 0.0, 500.0, 0.8, 0.1, 0.49},      {5.4, -35.1, 10 * tau, 500.0, 0.8, 0.1, 0.52},
  };
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < p.size(); ++i) {
    TableRow r;
    std::ostringstream lbl;
    lbl << "m=" << p[i].m << " b=" << p[i].b << " tau_l=" << p[i].tl;
    r.label = lbl.str();
    r.scn = pmlm_scenario(p[i].m, p[i].b, p[i].tl, p[i].a, p[i].li, p[i].ld);
    r.paper_J_iae = p[i].ref;
    rows.push_back(r);
  }
  return rows;
}

int cmd_table(int table_id, const std::string& out_cli, bool literal, bool have_seed,
              unsigned long seed) {
  std::vector<TableRow> rows = table_id == 2 ? table2_rows() : table3_rows();
  for (auto& r : rows) {
    if (literal) r.scn.paper_literal = true;
    if (have_seed) r.scn.seed = seed;
  }

  std::vector<std::future<RunResult>> futs;
  futs.reserve(rows.size());
  for (const auto& r : rows)
    futs.push_back(std::async(std::launch::async, [&r]() {
      if (r.fixed_gains) return run_fixed(r.scn, r.gains, CriticWeights{1.0, 1.0, 1.0});
      return run_cplmfc(r.scn);
    }));

  const fs::path dir = resolve_out_dir(out_cli, "");
  std::ostringstream grid, csv;
  grid << std::left << std::setw(28) << "row" << std::right << std::setw(10) << "J_iae"
       << std::setw(10) << "J_ise" << std::setw(10) << "y_max" << std::setw(12)
       << "t_settle" << std::setw(12) << "J_iae(ref)" << '\n';
  csv << "row,J_iae,J_ise,overshoot,t_settle_1pct,stable,J_iae_ref\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RunResult rr = futs[i].get();
    write_file(dir / ("table" + std::to_string(table_id) + "_row" + std::to_string(i + 1) +
                      ".csv"),
               trace_to_csv(rr.trace));
    grid << std::left << std::setw(28) << rows[i].label << std::right
         << std::setprecision(4) << std::fixed;
    if (!rr.trace.stable) {
      grid << std::setw(10) << "UNSTABLE" << std::setw(10) << "-" << std::setw(10) << "-"
           << std::setw(12) << "-";
    } else {
      double ymax = -1e300;
      for (double y : rr.trace.y) ymax = std::max(ymax, y);
      grid << std::setw(10) << rr.metrics.J_iae << std::setw(10) << rr.metrics.J_ise
           << std::setw(10) << ymax << std::setw(12)
           << (rr.metrics.t_settle_1pct ? std::to_string(*rr.metrics.t_settle_1pct)
                                        : std::string("-"));
    }
    grid << std::setw(12) << rows[i].paper_J_iae << '\n';
    grid.unsetf(std::ios::fixed);
    csv << '"' << rows[i].label << "\"," << rr.metrics.J_iae << ',' << rr.metrics.J_ise
        << ',' << rr.metrics.overshoot << ','
        << (rr.metrics.t_settle_1pct ? std::to_string(*rr.metrics.t_settle_1pct)
                                     : std::string(""))
        << ',' << (rr.trace.stable ? 1 : 0) << ',' << rows[i].paper_J_iae << '\n';
  }
  std::cout << grid.str();
  write_file(dir / ("table" + std::to_string(table_id) + ".csv"), csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CPLMFC adaptive PID tuning: identification, runs and result tables"};
  app.require_subcommand(1);

  unsigned long seed = 0;
  bool literal = false, gnuplot = false;
  std::string out_dir;
  const auto* seed_opt = app.add_option("--seed", seed, "RNG seed for measurement noise");
  app.add_flag("--paper-literal-kp-update", literal,
               "per-sample Kp update without the dt factor");
  app.add_flag("--gnuplot-script", gnuplot, "emit a gnuplot script next to the CSVs");

  std::string ident_file;
  auto* ident = app.add_subcommand("ident", "closed-loop settling-time identification");
  ident->add_option("file", ident_file, "scenario file")->required();
  ident->add_option("--out", out_dir, "output directory");

  std::string run_file;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "one CPLMFC closed-loop run");
  run->add_option("file", run_file, "scenario file")->required();
  run->add_option("--override", overrides, "key=value scenario override")
      ->take_all();
  run->add_option("--out", out_dir, "output directory");

  int table_id = 0;
  auto* table = app.add_subcommand("table", "regenerate a results table (2 or 3)");
  table->add_option("id", table_id, "table id")->required()->check(CLI::IsMember({2, 3}));
  table->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool have_seed = seed_opt->count() > 0;
  try {
    if (ident->parsed()) return cmd_ident(ident_file, out_dir, gnuplot);
    if (run->parsed())
      return cmd_run(run_file, overrides, out_dir, literal, have_seed, seed, gnuplot);
    return cmd_table(table_id, out_dir, literal, have_seed, seed);
  } catch (const ScenarioParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
