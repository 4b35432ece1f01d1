#pragma once

// Gaussian single-mode states described by their second moments (hbar = 1).
//
// Wigner-exponent conventions. A state with covariances (sxx, spp, sxp) has
//
//   W(x, p) = norm * exp[a p^2 + b x^2 + c x p]
//
// with a = -sxx / (2 det), b = -spp / (2 det), c = sxp / det and
// det = sxx spp - sxp^2. The isentropic-stage symbols map as
// (coefficient of x^2, of p^2, of xp) = (b, a, c). For a stationary state
// (c = 0) the steady-state form exp[p^2 / 4a' + x^2 / 4b'] corresponds to
// a' = 1 / (4a), b' = 1 / (4b), i.e. sxx = -2b', spp = -2a'.

#include "otto/numeric.hpp"

namespace otto {

/// Polar squeeze parameter zeta = eta * exp(i theta).
struct SqueezeParams {
  double eta = 0.0;
  double theta = 0.0;

  /// Validates eta >= 0 and wraps theta into [0, 2 pi).
  static SqueezeParams make(double eta, double theta);
};

struct ThermalSpec {
  double beta = kInfiniteBeta;

  static ThermalSpec zero_temperature() { return {kInfiniteBeta}; }
  static ThermalSpec at_beta(double beta);

  bool is_zero_temperature() const;
  /// coth(beta * omega / 2), exactly 1 at zero temperature.
  double coth_half(double omega) const;
};

struct GaussianState {
  double sxx = 0.0;   // <x^2>
  double spp = 0.0;   // <p^2>
  double sxp = 0.0;   // <{x, p}> / 2
  double mass = 1.0;
  double omega = 1.0;

  double determinant() const { return sxx * spp - sxp * sxp; }
  /// sqrt(det); 1/2 for pure states.
  double symplectic_eigenvalue() const;
  /// Throws DomainError unless positivity and the Heisenberg bound hold.
  void validate() const;
};

struct WignerCoeffs {
  double a = 0.0;     // p^2
  double b = 0.0;     // x^2
  double c = 0.0;     // x p
  double norm = 0.0;  // 1 / (2 pi sqrt(det))
};

struct ExtractedSqueeze {
  SqueezeParams squeeze;  // (eta_s, psi_s)
  double vartheta = 0.0;  // coth(vartheta / 2) = 2 sqrt(det); +inf for pure states
};

inline constexpr double kHeisenbergTolerance = 1e-9;

GaussianState squeezed_thermal_state(SqueezeParams sq, ThermalSpec th, double mass, double omega,
                                     double t = 0.0);
GaussianState thermal_state(ThermalSpec th, double mass, double omega);

/// <p^2> / 2m + m omega^2 <x^2> / 2.
double mechanical_energy(const GaussianState& s);

/// beta_s with coth(beta_s omega / 2) = cosh(2 eta) coth(beta omega / 2).
double effective_inverse_temperature(double eta, double beta, double omega);

ExtractedSqueeze extract_squeeze(const GaussianState& s);

WignerCoeffs wigner_coeffs_from_state(const GaussianState& s);
GaussianState state_from_wigner_coeffs(const WignerCoeffs& w, double mass, double omega);

/// Conjugates the state by the squeeze operator S(zeta). (eta, theta + pi)
/// undoes (eta, theta).
GaussianState apply_squeeze(const GaussianState& s, SqueezeParams sq);

}  // namespace otto
