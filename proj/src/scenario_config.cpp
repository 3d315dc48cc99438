#include "cplmfc/scenario_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace cplmfc {
namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ScenarioParseError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return d;
  } catch (const ScenarioParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, int line) {
  const double d = to_double(v, line);
  if (d != std::floor(d)) fail(line, "expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

bool to_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(line, "expected true/false, got '" + v + "'");
}

std::vector<double> to_vector(const std::string& v, int line) {
  std::istringstream is(v);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(to_double(tok, line));
  if (out.empty()) fail(line, "expected a list of numbers");
  return out;
}

using Setter = std::function<void(ScenarioFile&, const std::string&, int)>;
using SectionMap = std::map<std::string, std::map<std::string, Setter>>;

const SectionMap& schema() {
  static const SectionMap m = {
      {"plant",
       {
           {"type",
            [](ScenarioFile& f, const std::string& v, int ln) {
              if (v == "lti")
                f.scn.plant_kind = PlantKind::Lti;
              else if (v == "pmlm")
                f.scn.plant_kind = PlantKind::Pmlm;
              else
                fail(ln, "plant type must be lti or pmlm");
            }},
           {"num", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.num = to_vector(v, ln); }},
           {"den", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.den = to_vector(v, ln); }},
           {"tau_l", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.plant_tau_l = to_double(v, ln); }},
           {"m", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.pmlm.m = to_double(v, ln); }},
           {"b_damp", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.pmlm.b_damp = to_double(v, ln); }},
       }},
      {"loop",
       {
           {"tau", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.tau = to_double(v, ln); }},
           {"u_max", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.u_max = to_double(v, ln); }},
           {"duration", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.duration = to_double(v, ln); }},
           {"noise_std", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.noise_std = to_double(v, ln); }},
           {"seed", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.seed = static_cast<unsigned long>(to_int(v, ln)); }},
       }},
      {"cplmfc",
       {
           {"alpha", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.alpha = to_double(v, ln); }},
           {"gamma", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.gamma = to_double(v, ln); }},
           {"zeta", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.zeta = to_double(v, ln); }},
           {"b", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.b = to_double(v, ln); }},
           {"c", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.c = to_double(v, ln); }},
           {"lambda_i", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.lambda_i = to_double(v, ln); }},
           {"lambda_d", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.lambda_d = to_double(v, ln); }},
           {"use_tiers", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.use_tiers = to_bool(v, ln); }},
           {"lambda_i1", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.lambda_i1 = to_double(v, ln); }},
           {"lambda_i2", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.lambda_i2 = to_double(v, ln); }},
           {"lambda_d1", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.lambda_d1 = to_double(v, ln); }},
           {"lambda_d2", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.lambda_d2 = to_double(v, ln); }},
           {"use_fis", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.use_fis = to_bool(v, ln); }},
           {"paper_literal", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.paper_literal = to_bool(v, ln); }},
           {"t_s", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.t_s = to_double(v, ln); }},
           {"tau_l", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.tau_l_override = to_double(v, ln); }},
       }},
      {"ident",
       {
           {"enabled", [](ScenarioFile& f, const std::string& v, int ln) { f.ident_enabled = to_bool(v, ln); }},
           {"y_max", [](ScenarioFile& f, const std::string& v, int ln) { f.ident.y_max = to_double(v, ln); }},
           {"k", [](ScenarioFile& f, const std::string& v, int ln) { f.ident.k = to_double(v, ln); }},
           {"k_s", [](ScenarioFile& f, const std::string& v, int ln) { f.ident.k_s = to_int(v, ln); }},
           {"max_samples", [](ScenarioFile& f, const std::string& v, int ln) { f.ident.max_samples = to_int(v, ln); }},
           {"tau_c", [](ScenarioFile& f, const std::string& v, int ln) { f.ident.tau_c = to_double(v, ln); }},
           {"tau_y", [](ScenarioFile& f, const std::string& v, int ln) { f.ident.tau_y = to_double(v, ln); }},
           {"t_window", [](ScenarioFile& f, const std::string& v, int ln) { f.ident.t_window = to_double(v, ln); }},
       }},
      {"setpoint",
       {
           {"kind",
            [](ScenarioFile& f, const std::string& v, int ln) {
              if (v == "none")
                f.scn.sp_kind = SetpointKind::None;
              else if (v == "step")
                f.scn.sp_kind = SetpointKind::Step;
              else if (v == "sine")
                f.scn.sp_kind = SetpointKind::Sine;
              else
                fail(ln, "setpoint kind must be none, step or sine");
            }},
           {"amplitude", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.sp_amplitude = to_double(v, ln); }},
           {"time", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.sp_time = to_double(v, ln); }},
           {"freq", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.sp_freq = to_double(v, ln); }},
       }},
      {"disturbance",
       {
           {"amplitude", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.dist_amplitude = to_double(v, ln); }},
           {"time", [](ScenarioFile& f, const std::string& v, int ln) { f.scn.dist_time = to_double(v, ln); }},
       }},
      {"output",
       {
           {"dir", [](ScenarioFile& f, const std::string& v, int) { f.out_dir = v; }},
       }},
  };
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

ScenarioFile parse_scenario_text(const std::string& text) {
  ScenarioFile sf;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int ln = 0;
  while (std::getline(is, raw)) {
    ++ln;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ln, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) fail(ln, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ln, "expected key = value");
    if (section.empty()) fail(ln, "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const auto& keys = schema().at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) fail(ln, "unknown key '" + key + "' in section [" + section + "]");
    it->second(sf, val, ln);
  }
  return sf;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario_text(os.str());
}

std::string serialize_scenario(const ScenarioFile& sf) {
  const Scenario& s = sf.scn;
  std::ostringstream os;
  os << "[plant]\n";
  os << "type = " << (s.plant_kind == PlantKind::Pmlm ? "pmlm" : "lti") << '\n';
  if (s.plant_kind == PlantKind::Lti) {
    os << "num = " << fmt(s.num) << '\n';
    os << "den = " << fmt(s.den) << '\n';
  } else {
    os << "m = " << fmt(s.pmlm.m) << '\n';
    os << "b_damp = " << fmt(s.pmlm.b_damp) << '\n';
  }
  os << "tau_l = " << fmt(s.plant_tau_l) << '\n';
  os << "\n[loop]\n";
  os << "tau = " << fmt(s.tau) << '\n';
  os << "u_max = " << fmt(s.u_max) << '\n';
  os << "duration = " << fmt(s.duration) << '\n';
  os << "noise_std = " << fmt(s.noise_std) << '\n';
  os << "seed = " << s.seed << '\n';
  os << "\n[cplmfc]\n";
  os << "alpha = " << fmt(s.alpha) << '\n';
  os << "gamma = " << fmt(s.gamma) << '\n';
  os << "zeta = " << fmt(s.zeta) << '\n';
  os << "b = " << fmt(s.b) << '\n';
  os << "c = " << fmt(s.c) << '\n';
  os << "lambda_i = " << fmt(s.lambda_i) << '\n';
  os << "lambda_d = " << fmt(s.lambda_d) << '\n';
  os << "use_tiers = " << (s.use_tiers ? "true" : "false") << '\n';
  os << "lambda_i1 = " << fmt(s.lambda_i1) << '\n';
  os << "lambda_i2 = " << fmt(s.lambda_i2) << '\n';
  os << "lambda_d1 = " << fmt(s.lambda_d1) << '\n';
  os << "lambda_d2 = " << fmt(s.lambda_d2) << '\n';
  os << "use_fis = " << (s.use_fis ? "true" : "false") << '\n';
  os << "paper_literal = " << (s.paper_literal ? "true" : "false") << '\n';
  os << "t_s = " << fmt(s.t_s) << '\n';
  if (s.tau_l_override) os << "tau_l = " << fmt(*s.tau_l_override) << '\n';
  os << "\n[ident]\n";
  os << "enabled = " << (sf.ident_enabled ? "true" : "false") << '\n';
  os << "y_max = " << fmt(sf.ident.y_max) << '\n';
  os << "k = " << fmt(sf.ident.k) << '\n';
  os << "k_s = " << sf.ident.k_s << '\n';
  os << "max_samples = " << sf.ident.max_samples << '\n';
  os << "tau_c = " << fmt(sf.ident.tau_c) << '\n';
  os << "tau_y = " << fmt(sf.ident.tau_y) << '\n';
  os << "t_window = " << fmt(sf.ident.t_window) << '\n';
  os << "\n[setpoint]\n";
  os << "kind = "
     << (s.sp_kind == SetpointKind::None ? "none"
                                         : s.sp_kind == SetpointKind::Step ? "step" : "sine")
     << '\n';
  os << "amplitude = " << fmt(s.sp_amplitude) << '\n';
  os << "time = " << fmt(s.sp_time) << '\n';
  os << "freq = " << fmt(s.sp_freq) << '\n';
  os << "\n[disturbance]\n";
  os << "amplitude = " << fmt(s.dist_amplitude) << '\n';
  os << "time = " << fmt(s.dist_time) << '\n';
  if (!sf.out_dir.empty()) {
    os << "\n[output]\n";
    os << "dir = " << sf.out_dir << '\n';
  }
  return os.str();
}

void apply_override(ScenarioFile& sf, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw ScenarioParseError("override must be key=value: " + kv);
  std::string key = trim(kv.substr(0, eq));
  const std::string val = trim(kv.substr(eq + 1));
  std::string section;
  const auto dot = key.find('.');
  if (dot != std::string::npos) {
    section = key.substr(0, dot);
    key = key.substr(dot + 1);
    const auto sec = schema().find(section);
    if (sec == schema().end()) throw ScenarioParseError("override: unknown section " + section);
    const auto it = sec->second.find(key);
    if (it == sec->second.end())
      throw ScenarioParseError("override: unknown key " + section + "." + key);
    it->second(sf, val, 0);
    return;
  }
  const Setter* found = nullptr;
  for (const auto& [sec_name, keys] : schema()) {
    const auto it = keys.find(key);
    if (it == keys.end()) continue;
    if (found) throw ScenarioParseError("override: ambiguous key '" + key + "', qualify with section.");
    found = &it->second;
  }
  if (!found) throw ScenarioParseError("override: unknown key '" + key + "'");
  (*found)(sf, val, 0);
}

}  // namespace cplmfc
