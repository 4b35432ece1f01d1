#include "otto/cycle.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "otto/errors.hpp"

namespace otto {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

FrequencyRamp make_ramp(const RampSpec& spec, double omega_start, double omega_end) {
  switch (spec.profile) {
    case RampProfile::LinearInOmegaSquared:
      return FrequencyRamp::linear(omega_start, omega_end, spec.tau);
    case RampProfile::SuddenQuench:
      return FrequencyRamp::sudden(omega_start, omega_end);
    case RampProfile::Adiabatic:
      return FrequencyRamp::adiabatic(omega_start, omega_end);
    case RampProfile::Custom:
      break;
  }
  throw DomainError("custom ramps are not supported in engine configs");
}

struct RampOutcome {
  GaussianState raw;
  GaussianState end;
  double eta_s = 0.0;
};

RampOutcome run_ramp(const GaussianState& start, const RampSpec& spec, double omega_end, const EngineConfig& cfg) {
  const GaussianState raw = evolve_wigner(start, make_ramp(spec, start.omega, omega_end), cfg.integrator);
  const double eta_s = extract_squeeze(raw).squeeze.eta;
  return {raw, cfg.unsqueeze_at_ramp_end ? unsqueeze_to_adiabatic(raw) : raw, eta_s};
}

BathSpec cold_bath(const EngineConfig& cfg) {
  return {cfg.beta_l, SqueezeParams{}, cfg.gamma_l, cfg.cutoff_l, SpectralFamily::OhmicSharpCutoff};
}

BathSpec hot_bath(const EngineConfig& cfg) {
  return {cfg.beta_h, cfg.hot_squeeze, cfg.gamma_h, cfg.cutoff_h, SpectralFamily::OhmicSharpCutoff};
}

// coth(beta_sH omega_H / 2) and coth(beta_L omega_L / 2).
std::pair<double, double> bath_coths(const EngineConfig& cfg) {
  const double beta_sh = effective_inverse_temperature(cfg.hot_squeeze.eta, cfg.beta_h, cfg.omega_h);
  return {ThermalSpec{beta_sh}.coth_half(cfg.omega_h), ThermalSpec{cfg.beta_l}.coth_half(cfg.omega_l)};
}

void check_limit_inputs(const EngineConfig& cfg) {
  if (!(cfg.omega_l > 0.0) || !(cfg.omega_h > 0.0)) throw DomainError("omega_l and omega_h must be positive");
  if (!(cfg.beta_l > 0.0) || !(cfg.beta_h > 0.0)) throw DomainError("beta_l and beta_h must be positive");
  if (!(cfg.hot_squeeze.eta >= 0.0)) throw DomainError("eta must be >= 0");
}

// Runs fn(i) for i in [0, n) on the worker pool.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<std::string> EngineConfig::violations() const {
  std::vector<std::string> v;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  need(omega_l > 0.0 && std::isfinite(omega_l), "omega_l must be positive and finite (got " + fmt(omega_l) + ")");
  need(omega_h > omega_l && std::isfinite(omega_h),
       "omega_h must exceed omega_l (got omega_h = " + fmt(omega_h) + ", omega_l = " + fmt(omega_l) + ")");
  need(beta_l > 0.0, "beta_l must be positive (got " + fmt(beta_l) + ")");
  need(beta_h > 0.0, "beta_h must be positive (got " + fmt(beta_h) + ")");
  need(beta_h < beta_l,
       "beta_h must be below beta_l (got beta_h = " + fmt(beta_h) + ", beta_l = " + fmt(beta_l) + ")");
  need(hot_squeeze.eta >= 0.0 && std::isfinite(hot_squeeze.eta),
       "eta must be >= 0 and finite (got " + fmt(hot_squeeze.eta) + ")");
  need(std::isfinite(hot_squeeze.theta), "theta must be finite");
  need(mass > 0.0 && std::isfinite(mass), "mass must be positive (got " + fmt(mass) + ")");
  need(gamma_l >= 0.0 && gamma_l < omega_l,
       "gamma_l must lie in [0, omega_l) (got gamma_l = " + fmt(gamma_l) + ", omega_l = " + fmt(omega_l) + ")");
  need(gamma_h >= 0.0 && gamma_h < omega_h,
       "gamma_h must lie in [0, omega_h) (got gamma_h = " + fmt(gamma_h) + ", omega_h = " + fmt(omega_h) + ")");
  need(cutoff_l > 10.0 * std::max(omega_l, gamma_l) && std::isfinite(cutoff_l),
       "cutoff_l must exceed 10 max(omega_l, gamma_l) (got " + fmt(cutoff_l) + ")");
  need(cutoff_h > 10.0 * std::max(omega_h, gamma_h) && std::isfinite(cutoff_h),
       "cutoff_h must exceed 10 max(omega_h, gamma_h) (got " + fmt(cutoff_h) + ")");
  for (const auto& [name, r] : {std::pair{"ramp_ab", ramp_ab}, std::pair{"ramp_cd", ramp_cd}}) {
    need(r.profile != RampProfile::Custom, std::string(name) + ": custom profiles are not configurable");
    if (r.profile == RampProfile::LinearInOmegaSquared) {
      need(r.tau > 0.0 && std::isfinite(r.tau),
           std::string(name) + ": tau must be positive for a linear ramp (got " + fmt(r.tau) + ")");
    }
  }
  need(integrator.rel > 0.0 && integrator.abs >= 0.0, "integrator tolerances must be positive");
  need(quadrature.rel_tol > 0.0, "quadrature tolerance must be positive");
  return v;
}

void EngineConfig::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid engine config:";
  for (const auto& s : v) msg += "\n  " + s;
  throw DomainError(msg);
}

CycleReport run_cycle(const EngineConfig& cfg) {
  cfg.validate();
  CycleReport r;
  r.config = cfg;
  const double m = cfg.mass;

  r.a = steady_state(cold_bath(cfg), m, cfg.omega_l, cfg.coupling_mode, cfg.quadrature).state;
  const RampOutcome ab = run_ramp(r.a, cfg.ramp_ab, cfg.omega_h, cfg);
  r.b_ramp = ab.raw;
  r.b = ab.end;
  r.eta_s_ab = ab.eta_s;

  const SteadyState hot = steady_state(hot_bath(cfg), m, cfg.omega_h, cfg.coupling_mode, cfg.quadrature);
  r.c = hot.state;
  r.beta_s_h = hot.beta_s;
  const RampOutcome cd = run_ramp(r.c, cfg.ramp_cd, cfg.omega_l, cfg);
  r.d_ramp = cd.raw;
  r.d = cd.end;
  r.eta_s_cd = cd.eta_s;

  r.e_a = mechanical_energy(r.a);
  r.e_b = mechanical_energy(r.b);
  r.e_c = mechanical_energy(r.c);
  r.e_d = mechanical_energy(r.d);
  r.e_b_ramp = mechanical_energy(r.b_ramp);
  r.e_d_ramp = mechanical_energy(r.d_ramp);

  r.w_ab = r.e_b - r.e_a;
  r.w_cd = r.e_d - r.e_c;
  r.w_tot = r.w_ab + r.w_cd;
  r.w_ab_ramp = r.e_b_ramp - r.e_a;
  r.w_cd_ramp = r.e_d_ramp - r.e_c;
  r.w_tot_ramp_only = r.w_ab_ramp + r.w_cd_ramp;
  r.unsqueeze_ab = r.e_b - r.e_b_ramp;
  r.unsqueeze_cd = r.e_d - r.e_d_ramp;
  r.q_in = heat_in(r.e_b, r.e_c);
  r.q_out = heat_in(r.e_d, r.e_a);

  r.operational = r.w_tot < 0.0 && r.q_in > 0.0;
  r.efficiency = r.operational ? -r.w_tot / r.q_in : std::numeric_limits<double>::quiet_NaN();
  return r;
}

LimitValue efficiency_adiabatic(const EngineConfig& cfg) {
  check_limit_inputs(cfg);
  const auto [c_h, c_l] = bath_coths(cfg);
  return {1.0 - cfg.omega_l / cfg.omega_h, cfg.omega_h > cfg.omega_l && c_h > c_l};
}

LimitValue efficiency_sudden(const EngineConfig& cfg) {
  check_limit_inputs(cfg);
  const auto [c_h, c_l] = bath_coths(cfg);
  const double wl = cfg.omega_l;
  const double wh = cfg.omega_h;
  const double work = 0.25 * (wh * wh - wl * wl) * (c_h / wh - c_l / wl);
  const double heat = 0.5 * wh * (c_h - c_l);
  const bool operational = wh > wl && c_h / wh > c_l / wl;
  return {operational ? work / heat : std::numeric_limits<double>::quiet_NaN(), operational};
}

LimitValue net_work(IsentropicLimit limit, const EngineConfig& cfg) {
  check_limit_inputs(cfg);
  const auto [c_h, c_l] = bath_coths(cfg);
  const double wl = cfg.omega_l;
  const double wh = cfg.omega_h;
  const double w = limit == IsentropicLimit::Adiabatic ? -0.5 * (wh - wl) * (c_h - c_l)
                                                       : -0.25 * (wh * wh - wl * wl) * (c_h / wh - c_l / wl);
  return {w, w < 0.0};
}

bool carnot_bound_check(const EngineConfig& cfg) {
  check_limit_inputs(cfg);
  return (1.0 - cfg.omega_l / cfg.omega_h) < (1.0 - cfg.beta_h / cfg.beta_l);
}

void set_parameter(EngineConfig& cfg, const std::string& key, double value) {
  auto temp_to_beta = [](double t) {
    if (!(t >= 0.0)) throw DomainError("temperatures must be >= 0");
    return t == 0.0 ? kInfiniteBeta : 1.0 / t;
  };
  if (key == "omega_l") cfg.omega_l = value;
  else if (key == "omega_h") cfg.omega_h = value;
  else if (key == "beta_l") cfg.beta_l = value;
  else if (key == "beta_h") cfg.beta_h = value;
  else if (key == "temp_l") cfg.beta_l = temp_to_beta(value);
  else if (key == "temp_h") cfg.beta_h = temp_to_beta(value);
  else if (key == "eta") cfg.hot_squeeze.eta = value;
  else if (key == "theta") cfg.hot_squeeze = SqueezeParams::make(cfg.hot_squeeze.eta, value);
  else if (key == "gamma_l") cfg.gamma_l = value;
  else if (key == "gamma_h") cfg.gamma_h = value;
  else if (key == "cutoff_l") cfg.cutoff_l = value;
  else if (key == "cutoff_h") cfg.cutoff_h = value;
  else if (key == "mass") cfg.mass = value;
  else if (key == "tau_ab") cfg.ramp_ab.tau = value;
  else if (key == "tau_cd") cfg.ramp_cd.tau = value;
  else if (key == "tau") cfg.ramp_ab.tau = cfg.ramp_cd.tau = value;
  else throw DomainError("unknown sweep parameter '" + key + "'");
}

std::size_t worker_count() {
  if (const char* env = std::getenv("OTTO_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n <= 0) throw DomainError("OTTO_WORKERS must be a positive integer");
    return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> sweep(const EngineConfig& base, const std::vector<SweepAxis>& axes) {
  std::size_t total = 1;
  for (const auto& ax : axes) {
    EngineConfig probe = base;
    set_parameter(probe, ax.key, 1.0);  // rejects unknown keys up front
    total *= ax.values.size();
  }
  std::vector<SweepRow> rows(axes.empty() ? 1 : total);
  parallel_for(rows.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.index = i;
    row.coordinates.resize(axes.size());
    EngineConfig cfg = base;
    std::size_t rest = i;
    for (std::size_t k = axes.size(); k-- > 0;) {
      const auto& values = axes[k].values;
      row.coordinates[k] = values[rest % values.size()];
      rest /= values.size();
    }
    try {
      for (std::size_t k = 0; k < axes.size(); ++k) set_parameter(cfg, axes[k].key, row.coordinates[k]);
      row.report = run_cycle(cfg);
      row.ok = true;
    } catch (const std::exception& e) {
      row.report.config = cfg;
      row.error = e.what();
    }
  });
  return rows;
}

OptimizationResult maximize_output_work(const EngineConfig& base, const std::vector<SearchBound>& bounds,
                                        const NelderMeadOptions& opt) {
  if (bounds.empty()) throw DomainError("maximize_output_work needs at least one search bound");
  const std::size_t n = bounds.size();
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    EngineConfig probe = base;
    set_parameter(probe, bounds[i].key, bounds[i].lower);
    if (!(bounds[i].lower <= bounds[i].upper)) throw DomainError("empty search range for " + bounds[i].key);
    lo[i] = bounds[i].lower;
    hi[i] = bounds[i].upper;
  }

  auto configure = [&](const std::vector<double>& x) {
    EngineConfig cfg = base;
    for (std::size_t i = 0; i < n; ++i) set_parameter(cfg, bounds[i].key, x[i]);
    return cfg;
  };
  auto objective = [&](const std::vector<double>& x) {
    try {
      return run_cycle(configure(x)).w_tot;
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Box center plus the centers of the 2^n half-boxes.
  std::vector<std::vector<double>> starts{std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) starts[0][i] = 0.5 * (lo[i] + hi[i]);
  const std::size_t corners = n <= 4 ? (std::size_t{1} << n) : 0;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = lo[i] + (((mask >> i) & 1U) ? 0.75 : 0.25) * (hi[i] - lo[i]);
    starts.push_back(std::move(x));
  }
  std::vector<NelderMeadResult> runs(starts.size());
  parallel_for(starts.size(), [&](std::size_t k) { runs[k] = nelder_mead(objective, starts[k], lo, hi, opt); });

  OptimizationResult out;
  std::size_t best = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    out.evaluations += runs[k].evaluations;
    if (runs[k].value < runs[best].value) best = k;
  }
  out.config = configure(runs[best].x);
  if (std::isfinite(runs[best].value)) {
    out.report = run_cycle(out.config);
    out.feasible = out.report.w_tot < 0.0;
  }
  return out;
}

}  // namespace otto
