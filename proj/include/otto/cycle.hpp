#pragma once

// Four-stroke Otto cycle with a parametric-oscillator working medium:
//   A -> B  compression ramp omega_L -> omega_H (isolated)
//   B -> C  relaxation in the squeezed hot bath
//   C -> D  expansion ramp omega_H -> omega_L (isolated)
//   D -> A  relaxation in the plain cold bath
// Work is positive when done on the oscillator.

#include <cstddef>
#include <string>
#include <vector>

#include "otto/gaussian_state.hpp"
#include "otto/isentropic.hpp"
#include "otto/isothermal.hpp"
#include "otto/nelder_mead.hpp"

namespace otto {

struct RampSpec {
  RampProfile profile = RampProfile::Adiabatic;  // Custom is not accepted here
  double tau = 0.0;                              // ignored by the analytic limits
};

struct EngineConfig {
  double omega_l = 1.0;
  double omega_h = 5.0;
  double beta_l = 10.0;
  double beta_h = 0.1;
  SqueezeParams hot_squeeze{};
  double gamma_l = 1e-5;
  double gamma_h = 1e-5;
  double cutoff_l = 1000.0;
  double cutoff_h = 1000.0;
  double mass = 1.0;
  RampSpec ramp_ab{};
  RampSpec ramp_cd{};
  bool unsqueeze_at_ramp_end = false;
  CouplingMode coupling_mode = CouplingMode::WeakClosedForm;
  IntegratorTolerance integrator{};
  quad::Options quadrature{};

  /// Every violated constraint, each naming its key(s) and bound.
  std::vector<std::string> violations() const;
  /// Throws DomainError listing all violations.
  void validate() const;
};

struct CycleReport {
  EngineConfig config;
  GaussianState a, b, c, d;  // after any unsqueezing
  GaussianState b_ramp, d_ramp;  // ramp end states before unsqueezing
  double e_a = 0.0, e_b = 0.0, e_c = 0.0, e_d = 0.0;
  double e_b_ramp = 0.0, e_d_ramp = 0.0;
  double w_ab = 0.0, w_cd = 0.0, w_tot = 0.0;
  double w_ab_ramp = 0.0, w_cd_ramp = 0.0, w_tot_ramp_only = 0.0;
  double unsqueeze_ab = 0.0, unsqueeze_cd = 0.0;  // energy change of the unsqueezing step
  double q_in = 0.0, q_out = 0.0;
  double efficiency = 0.0;  // NaN when not operational
  bool operational = false;
  double eta_s_ab = 0.0, eta_s_cd = 0.0;  // ramp-induced squeeze magnitudes
  double beta_s_h = 0.0;                  // effective inverse temperature of the hot bath
};

/// Runs one full cycle. Non-operational parameter sets yield a report with
/// operational == false.
CycleReport run_cycle(const EngineConfig& cfg);

/// A closed-form value together with its operating-regime flag.
struct LimitValue {
  double value = 0.0;
  bool operational = false;
};

/// 1 - omega_L / omega_H; operational iff
/// cosh 2eta coth(beta_H omega_H / 2) > coth(beta_L omega_L / 2) and omega_H > omega_L.
LimitValue efficiency_adiabatic(const EngineConfig& cfg);

/// Closed-form sudden-quench efficiency
///   |W_tot^SC| / [(omega_H/2)(coth(beta_sH omega_H/2) - coth(beta_L omega_L/2))];
/// operational iff coth(beta_sH omega_H/2)/omega_H > coth(beta_L omega_L/2)/omega_L.
LimitValue efficiency_sudden(const EngineConfig& cfg);

/// Closed-form net work in the adiabatic or sudden limit.
LimitValue net_work(IsentropicLimit limit, const EngineConfig& cfg);

/// (1 - omega_L/omega_H) < (1 - beta_H/beta_L).
bool carnot_bound_check(const EngineConfig& cfg);

/// Assigns a scalar by config key (omega_l, omega_h, beta_l, beta_h, temp_l,
/// temp_h, eta, theta, gamma_l, gamma_h, cutoff_l, cutoff_h, mass, tau_ab,
/// tau_cd, tau). Throws DomainError on unknown keys.
void set_parameter(EngineConfig& cfg, const std::string& key, double value);

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

struct SweepRow {
  std::size_t index = 0;
  std::vector<double> coordinates;  // one per axis
  bool ok = false;
  std::string error;  // set when !ok
  CycleReport report;
};

/// Worker count for sweeps and multi-start searches: OTTO_WORKERS if set,
/// else the hardware concurrency.
std::size_t worker_count();

/// run_cycle over the Cartesian product of the axes (last axis fastest).
/// Rows come back in grid order; failures are captured per row.
std::vector<SweepRow> sweep(const EngineConfig& base, const std::vector<SweepAxis>& axes);

struct SearchBound {
  std::string key;
  double lower = 0.0;
  double upper = 0.0;
};

struct OptimizationResult {
  EngineConfig config;
  CycleReport report;
  bool feasible = false;  // false: no operational point found (best infeasible returned)
  std::size_t evaluations = 0;
};

/// Maximizes the output work -W_tot over the box by multi-start Nelder-Mead.
/// Points violating the config invariants or failing numerically are
/// penalized.
OptimizationResult maximize_output_work(const EngineConfig& base, const std::vector<SearchBound>& bounds,
                                        const NelderMeadOptions& opt = {});

}  // namespace otto
