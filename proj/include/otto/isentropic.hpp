#pragma once

// Closed-system parametric oscillator: frequency ramps, phase-space
// (Wigner-exponent) propagation, fundamental solutions of x'' + w^2(t) x = 0,
// nonadiabatic squeezing and the analytic isentropic work limits.

#include <cstddef>
#include <functional>

#include "otto/gaussian_state.hpp"

namespace otto {

enum class RampProfile {
  LinearInOmegaSquared,
  SuddenQuench,  // analytic tau -> 0 limit
  Adiabatic,     // analytic tau -> infinity limit
  Custom,        // user-supplied omega^2(t) on [0, tau]
};

struct FrequencyRamp {
  double omega_start = 1.0;
  double omega_end = 1.0;
  double tau = 0.0;
  RampProfile profile = RampProfile::Adiabatic;
  std::function<double(double)> omega_squared;  // Custom only

  static FrequencyRamp linear(double omega_start, double omega_end, double tau);
  static FrequencyRamp sudden(double omega_start, double omega_end);
  static FrequencyRamp adiabatic(double omega_start, double omega_end);
  static FrequencyRamp custom(double omega_start, double omega_end, double tau,
                              std::function<double(double)> omega_squared);

  bool is_analytic() const {
    return profile == RampProfile::SuddenQuench || profile == RampProfile::Adiabatic;
  }
  void validate() const;
};

/// omega^2(t) for numerical ramps; t must lie in [0, tau].
double ramp_omega_squared(const FrequencyRamp& r, double t);

struct IntegratorTolerance {
  double rel = 1e-10;
  double abs = 1e-12;
  std::size_t max_steps = 20'000'000;
};

struct FundamentalSolutions {
  double d1 = 1.0;
  double d1dot = 0.0;
  double d2 = 0.0;
  double d2dot = 1.0;

  double wronskian() const { return d1 * d2dot - d1dot * d2; }
};

/// Propagates a Gaussian state through the ramp by integrating the
/// Wigner-exponent equations
///   d(x^2 coeff)/dt  = m w^2(t) c,
///   d(p^2 coeff)/dt  = -c / m,
///   d(xp coeff)/dt   = 2 [m w^2(t) (p^2 coeff) - (x^2 coeff) / m].
/// Analytic profiles short-circuit: a sudden quench freezes the covariances,
/// an adiabatic ramp keeps (eta_s, psi_s, vartheta) and rescales to the new
/// frequency. The result carries omega = r.omega_end.
GaussianState evolve_wigner(const GaussianState& s0, const FrequencyRamp& r, IntegratorTolerance tol = {});

/// Same propagation, also returning the conserved discriminant 4AB - C^2 at
/// both ends (diagnostics for the symplectic invariant).
struct WignerPropagation {
  GaussianState end;
  double discriminant_start = 0.0;
  double discriminant_end = 0.0;
  std::size_t steps = 0;
};
WignerPropagation propagate_wigner(const GaussianState& s0, const FrequencyRamp& r, IntegratorTolerance tol = {});

/// d1, d2 and their derivatives at t = tau (d1(0) = 1, d1'(0) = 0, d2(0) = 0,
/// d2'(0) = 1).
FundamentalSolutions evolve_fundamental(const FrequencyRamp& r, IntegratorTolerance tol = {});

/// Values at an arbitrary time of a fixed-frequency oscillator.
FundamentalSolutions harmonic_fundamental(double omega, double t);

/// Squeeze magnitude of the end state of a ramp omega_start -> omega_end that
/// began in a stationary state:
///   cosh 2 eta_s = [ (w_end/w_start) d1^2 + w_start w_end d2^2
///                    + d1'^2 / (w_start w_end) + (w_start/w_end) d2'^2 ] / 2.
/// For the expansion stage (w_H -> w_L) this is the textbook form with
/// w_start = w_H, w_end = w_L.
double eta_s_from_fundamental(const FundamentalSolutions& f, double omega_start, double omega_end);

/// End state of a ramp started in a stationary thermal-like state of
/// effective inverse temperature beta_s at omega_start.
GaussianState end_state_from_fundamental(const FundamentalSolutions& f, double beta_s, double omega_start,
                                         double omega_end, double mass);

/// Overload taking the stationary initial state itself; throws DomainError if
/// it carries cross-correlation or is not in equilibrium at its frequency.
GaussianState end_state_from_fundamental(const FundamentalSolutions& f, const GaussianState& initial,
                                         double omega_end);

enum class IsentropicLimit { Adiabatic, Sudden };
enum class IsentropicStage { Compression, Expansion };

struct IsentropicWorkParams {
  double omega_l = 1.0;
  double omega_h = 1.0;
  double beta = kInfiniteBeta;  // beta_L for compression, beta_H for expansion
  double eta = 0.0;             // hot-bath squeeze, expansion only
};

/// Closed-form work of the A->B (compression) or C->D (expansion) stage in
/// the adiabatic or sudden limit. Positive work is done on the oscillator.
double work_isentropic(IsentropicLimit limit, IsentropicStage stage, const IsentropicWorkParams& p);

/// Removes the squeezing of an end-of-ramp state: extracts (eta_s, psi_s) and
/// applies the inverse squeeze, leaving the stationary adiabatic-limit state.
GaussianState unsqueeze_to_adiabatic(const GaussianState& s);

}  // namespace otto
