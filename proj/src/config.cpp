#include "otto/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace otto::cli {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& text, std::size_t line, const std::string& key) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || std::isnan(v) || errno == ERANGE) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" + t + "'", line);
  }
  return v;
}

bool parse_bool(const std::string& text, std::size_t line, const std::string& key) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects true or false", line);
}

RampProfile parse_profile(const std::string& text, std::size_t line) {
  if (text == "adiabatic") return RampProfile::Adiabatic;
  if (text == "sudden") return RampProfile::SuddenQuench;
  if (text == "linear") return RampProfile::LinearInOmegaSquared;
  throw ConfigError("line " + std::to_string(line) + ": ramp profile must be adiabatic, sudden or linear", line);
}

RunMode parse_mode(const std::string& text, std::size_t line) {
  static const std::map<std::string, RunMode> modes{
      {"cycle", RunMode::Cycle},          {"sweep", RunMode::Sweep},     {"optimize", RunMode::Optimize},
      {"fig-r-driving", RunMode::FigRDriving}, {"fig-cov", RunMode::FigCov}, {"hpz-dump", RunMode::HpzDump}};
  const auto it = modes.find(text);
  if (it == modes.end()) throw ConfigError("line " + std::to_string(line) + ": unknown mode '" + text + "'", line);
  return it->second;
}

double temp_to_beta(double t, std::size_t line) {
  if (!(t >= 0.0)) throw ConfigError("line " + std::to_string(line) + ": temperatures must be >= 0", line);
  return t == 0.0 ? kInfiniteBeta : 1.0 / t;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"run", {"mode", "format", "out", "preset"}},
      {"engine",
       {"omega_l", "omega_h", "beta_l", "temp_l", "beta_h", "temp_h", "eta", "theta", "gamma_l", "gamma_h",
        "cutoff_l", "cutoff_h", "mass", "coupling", "unsqueeze"}},
      {"ramp", {"profile", "tau", "profile_ab", "tau_ab", "profile_cd", "tau_cd"}},
      {"numerics", {"ode_rel", "ode_abs", "ode_max_steps", "quad_rel", "quad_max_intervals"}},
      {"sweep", {"omega_l", "omega_h", "beta_l", "beta_h", "temp_l", "temp_h", "eta", "theta", "gamma_l",
                 "gamma_h", "cutoff_l", "cutoff_h", "mass", "tau", "tau_ab", "tau_cd"}},
      {"optimize", {"omega_l", "omega_h", "beta_l", "beta_h", "temp_l", "temp_h", "eta", "theta", "gamma_l",
                    "gamma_h", "cutoff_l", "cutoff_h", "mass", "tau", "tau_ab", "tau_cd"}},
      {"figure", {"tau_grid", "gamma_grid", "temp_grid", "omega"}},
      {"hpz", {"beta_grid", "eta_grid", "gamma_grid", "omega", "theta", "cutoff"}},
  };
  return keys;
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const std::string where = "line " + std::to_string(line) + ": ";
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where + "unterminated section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (!known_keys().count(section)) throw ConfigError(where + "unknown section [" + section + "]", line);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'", line);
    if (section.empty()) throw ConfigError(where + "key outside of any [section]", line);
    Entry e{section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (e.key.empty() || e.value.empty()) throw ConfigError(where + "empty key or value", line);
    if (!known_keys().at(section).count(e.key)) {
      throw ConfigError(where + "unknown key '" + e.key + "' in [" + section + "]", line);
    }
    if (!seen.insert({section, e.key}).second) {
      throw ConfigError(where + "duplicate key '" + e.key + "' in [" + section + "]", line);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void apply(RunConfig& cfg, const Entry& e) {
  auto number = [&] { return parse_number(e.value, e.line, e.key); };
  auto grid = [&] {
    try {
      return Grid::parse(e.value);
    } catch (const DomainError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what(), e.line);
    }
  };
  EngineConfig& g = cfg.engine;

  if (e.section == "run") {
    if (e.key == "mode") cfg.mode = parse_mode(e.value, e.line);
    else if (e.key == "out") cfg.out = e.value;
    else if (e.key == "format") {
      if (e.value == "csv") cfg.format = OutputFormat::Csv;
      else if (e.value == "json") cfg.format = OutputFormat::Json;
      else throw ConfigError("line " + std::to_string(e.line) + ": format must be csv or json", e.line);
    }
  } else if (e.section == "engine") {
    if (e.key == "coupling") {
      if (e.value == "weak") g.coupling_mode = CouplingMode::WeakClosedForm;
      else if (e.value == "quadrature") g.coupling_mode = CouplingMode::Quadrature;
      else throw ConfigError("line " + std::to_string(e.line) + ": coupling must be weak or quadrature", e.line);
    } else if (e.key == "unsqueeze") {
      g.unsqueeze_at_ramp_end = parse_bool(e.value, e.line, e.key);
    } else if (e.key == "temp_l") {
      g.beta_l = temp_to_beta(number(), e.line);
    } else if (e.key == "temp_h") {
      g.beta_h = temp_to_beta(number(), e.line);
    } else if (e.key == "theta") {
      g.hot_squeeze.theta = SqueezeParams::make(0.0, number()).theta;
    } else {
      set_parameter(g, e.key, number());
    }
  } else if (e.section == "ramp") {
    if (e.key == "profile") g.ramp_ab.profile = g.ramp_cd.profile = parse_profile(e.value, e.line);
    else if (e.key == "profile_ab") g.ramp_ab.profile = parse_profile(e.value, e.line);
    else if (e.key == "profile_cd") g.ramp_cd.profile = parse_profile(e.value, e.line);
    else set_parameter(g, e.key, number());
  } else if (e.section == "numerics") {
    const double v = number();
    auto count = [&] {
      if (!(v >= 1.0) || v != std::floor(v)) {
        throw ConfigError("line " + std::to_string(e.line) + ": '" + e.key + "' must be a positive integer", e.line);
      }
      return static_cast<std::size_t>(v);
    };
    if (e.key == "ode_rel") g.integrator.rel = v;
    else if (e.key == "ode_abs") g.integrator.abs = v;
    else if (e.key == "ode_max_steps") g.integrator.max_steps = count();
    else if (e.key == "quad_rel") g.quadrature.rel_tol = v;
    else if (e.key == "quad_max_intervals") g.quadrature.max_intervals = count();
  } else if (e.section == "sweep") {
    cfg.sweep.push_back({e.key, grid()});
  } else if (e.section == "optimize") {
    const auto colon = e.value.find(':');
    if (colon == std::string::npos || e.value.find(':', colon + 1) != std::string::npos) {
      throw ConfigError("line " + std::to_string(e.line) + ": bounds must read 'lower:upper'", e.line);
    }
    const double lo = parse_number(e.value.substr(0, colon), e.line, e.key);
    const double hi = parse_number(e.value.substr(colon + 1), e.line, e.key);
    if (!(lo <= hi)) throw ConfigError("line " + std::to_string(e.line) + ": lower bound exceeds upper", e.line);
    cfg.optimize.push_back({e.key, lo, hi});
  } else if (e.section == "figure") {
    if (e.key == "tau_grid") cfg.figure.tau_grid = grid();
    else if (e.key == "gamma_grid") cfg.figure.gamma_grid = grid();
    else if (e.key == "temp_grid") cfg.figure.temp_grid = grid();
    else if (e.key == "omega") cfg.figure.omega = number();
  } else if (e.section == "hpz") {
    if (e.key == "beta_grid") cfg.hpz.beta_grid = grid();
    else if (e.key == "eta_grid") cfg.hpz.eta_grid = grid();
    else if (e.key == "gamma_grid") cfg.hpz.gamma_grid = grid();
    else if (e.key == "omega") cfg.hpz.omega = number();
    else if (e.key == "theta") cfg.hpz.theta = number();
    else if (e.key == "cutoff") cfg.hpz.cutoff = number();
  }
}

std::vector<std::string> run_violations(const RunConfig& cfg) {
  std::vector<std::string> v = cfg.engine.violations();
  if (cfg.mode == RunMode::Sweep && cfg.sweep.empty()) v.push_back("sweep mode needs at least one [sweep] key");
  if (cfg.mode == RunMode::Optimize && cfg.optimize.empty()) {
    v.push_back("optimize mode needs at least one [optimize] bound");
  }
  if (!(cfg.figure.omega > 0.0)) v.push_back("figure.omega must be positive");
  if (!(cfg.hpz.omega > 0.0)) v.push_back("hpz.omega must be positive");
  if (!(cfg.hpz.cutoff > 10.0 * cfg.hpz.omega)) v.push_back("hpz.cutoff must exceed 10 hpz.omega");
  return v;
}

}  // namespace

Grid Grid::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(trim(part));
  if (parts.size() != 3 && parts.size() != 4) {
    throw DomainError("grid '" + text + "' must read start:stop:count[:log]");
  }
  auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) throw DomainError("grid '" + text + "': bad number '" + s + "'");
    return v;
  };
  Grid g;
  g.start = number(parts[0]);
  g.stop = number(parts[1]);
  const double count = number(parts[2]);
  if (!(count >= 1.0) || count != std::floor(count)) throw DomainError("grid '" + text + "': count must be >= 1");
  g.count = static_cast<std::size_t>(count);
  if (parts.size() == 4) {
    if (parts[3] != "log") throw DomainError("grid '" + text + "': fourth field must be 'log'");
    if (!(g.start > 0.0) || !(g.stop > 0.0)) throw DomainError("grid '" + text + "': log grids need positive ends");
    g.log = true;
  }
  return g;
}

std::vector<double> Grid::values() const {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = start;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start))) : start + f * (stop - start);
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

std::string Grid::str() const {
  return num(start) + ":" + num(stop) + ":" + std::to_string(count) + (log ? ":log" : "");
}

std::vector<SweepAxis> RunConfig::sweep_axes() const {
  std::vector<SweepAxis> axes;
  for (const auto& s : sweep) axes.push_back({s.key, s.grid.values()});
  return axes;
}

RunConfig preset_config(const std::string& name) {
  RunConfig cfg;
  cfg.preset = name;
  if (name == "fig-r-driving") {
    cfg.mode = RunMode::FigRDriving;
    cfg.engine.omega_l = 1.0;
    cfg.engine.omega_h = 5.0;
    cfg.engine.mass = 1.0;
    cfg.engine.gamma_l = 2e-5;
    cfg.engine.cutoff_l = 1000.0;
    cfg.engine.beta_l = 1000.0;
    cfg.engine.coupling_mode = CouplingMode::Quadrature;
    cfg.engine.ramp_ab = {RampProfile::LinearInOmegaSquared, 1.0};
    cfg.figure.tau_grid = {1e-4, 1e3, 40, true};
    return cfg;
  }
  if (name == "fig-cov") {
    cfg.mode = RunMode::FigCov;
    cfg.engine.mass = 1.0;
    cfg.engine.cutoff_l = 1000.0;
    cfg.figure.omega = 1.0;
    cfg.figure.gamma_grid = {1e-4, 0.5, 9, true};
    cfg.figure.temp_grid = {1e-3, 10.0, 9, true};
    return cfg;
  }
  throw ConfigError("unknown preset '" + name + "' (expected fig-r-driving or fig-cov)", 0);
}

RunConfig parse_config(const std::string& text) {
  const std::vector<Entry> entries = tokenize(text);
  RunConfig cfg;
  const Entry* beta_l = nullptr;
  const Entry* temp_l = nullptr;
  const Entry* beta_h = nullptr;
  const Entry* temp_h = nullptr;
  for (const auto& e : entries) {
    if (e.section == "run" && e.key == "preset") cfg = preset_config(e.value);
    if (e.section != "engine") continue;
    if (e.key == "beta_l") beta_l = &e;
    if (e.key == "temp_l") temp_l = &e;
    if (e.key == "beta_h") beta_h = &e;
    if (e.key == "temp_h") temp_h = &e;
  }
  if (beta_l && temp_l) throw ConfigError("line " + std::to_string(temp_l->line) + ": beta_l and temp_l are mutually exclusive", temp_l->line);
  if (beta_h && temp_h) throw ConfigError("line " + std::to_string(temp_h->line) + ": beta_h and temp_h are mutually exclusive", temp_h->line);

  for (const auto& e : entries) {
    if (e.section == "run" && e.key == "preset") continue;
    try {
      apply(cfg, e);
    } catch (const ConfigError&) {
      throw;
    } catch (const DomainError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what(), e.line);
    }
  }

  const auto v = run_violations(cfg);
  if (!v.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : v) msg += "\n  " + s;
    throw DomainError(msg);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Cycle: return "cycle";
    case RunMode::Sweep: return "sweep";
    case RunMode::Optimize: return "optimize";
    case RunMode::FigRDriving: return "fig-r-driving";
    case RunMode::FigCov: return "fig-cov";
    case RunMode::HpzDump: return "hpz-dump";
  }
  return "cycle";
}

std::string to_string(RampProfile profile) {
  switch (profile) {
    case RampProfile::Adiabatic: return "adiabatic";
    case RampProfile::SuddenQuench: return "sudden";
    case RampProfile::LinearInOmegaSquared: return "linear";
    case RampProfile::Custom: return "custom";
  }
  return "adiabatic";
}

std::string to_string(CouplingMode mode) {
  return mode == CouplingMode::WeakClosedForm ? "weak" : "quadrature";
}

std::string to_config_text(const RunConfig& c) {
  const EngineConfig& g = c.engine;
  std::ostringstream os;
  os << "[run]\n"
     << "mode = " << to_string(c.mode) << "\n"
     << "format = " << (c.format == OutputFormat::Csv ? "csv" : "json") << "\n";
  if (!c.out.empty()) os << "out = " << c.out << "\n";
  os << "\n[engine]\n"
     << "omega_l = " << num(g.omega_l) << "\n"
     << "omega_h = " << num(g.omega_h) << "\n"
     << "beta_l = " << num(g.beta_l) << "\n"
     << "beta_h = " << num(g.beta_h) << "\n"
     << "eta = " << num(g.hot_squeeze.eta) << "\n"
     << "theta = " << num(g.hot_squeeze.theta) << "\n"
     << "gamma_l = " << num(g.gamma_l) << "\n"
     << "gamma_h = " << num(g.gamma_h) << "\n"
     << "cutoff_l = " << num(g.cutoff_l) << "\n"
     << "cutoff_h = " << num(g.cutoff_h) << "\n"
     << "mass = " << num(g.mass) << "\n"
     << "coupling = " << to_string(g.coupling_mode) << "\n"
     << "unsqueeze = " << (g.unsqueeze_at_ramp_end ? "true" : "false") << "\n"
     << "\n[ramp]\n"
     << "profile_ab = " << to_string(g.ramp_ab.profile) << "\n"
     << "tau_ab = " << num(g.ramp_ab.tau) << "\n"
     << "profile_cd = " << to_string(g.ramp_cd.profile) << "\n"
     << "tau_cd = " << num(g.ramp_cd.tau) << "\n"
     << "\n[numerics]\n"
     << "ode_rel = " << num(g.integrator.rel) << "\n"
     << "ode_abs = " << num(g.integrator.abs) << "\n"
     << "ode_max_steps = " << g.integrator.max_steps << "\n"
     << "quad_rel = " << num(g.quadrature.rel_tol) << "\n"
     << "quad_max_intervals = " << g.quadrature.max_intervals << "\n";
  if (!c.sweep.empty()) {
    os << "\n[sweep]\n";
    for (const auto& s : c.sweep) os << s.key << " = " << s.grid.str() << "\n";
  }
  if (!c.optimize.empty()) {
    os << "\n[optimize]\n";
    for (const auto& b : c.optimize) os << b.key << " = " << num(b.lower) << ":" << num(b.upper) << "\n";
  }
  os << "\n[figure]\n"
     << "tau_grid = " << c.figure.tau_grid.str() << "\n"
     << "gamma_grid = " << c.figure.gamma_grid.str() << "\n"
     << "temp_grid = " << c.figure.temp_grid.str() << "\n"
     << "omega = " << num(c.figure.omega) << "\n"
     << "\n[hpz]\n"
     << "beta_grid = " << c.hpz.beta_grid.str() << "\n"
     << "eta_grid = " << c.hpz.eta_grid.str() << "\n"
     << "gamma_grid = " << c.hpz.gamma_grid.str() << "\n"
     << "omega = " << num(c.hpz.omega) << "\n"
     << "theta = " << num(c.hpz.theta) << "\n"
     << "cutoff = " << num(c.hpz.cutoff) << "\n";
  return os.str();
}

}  // namespace otto::cli
