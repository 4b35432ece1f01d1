#pragma once

// Late-time state of an oscillator relaxed in an Ohmic (sharp cutoff)
// squeezed thermal bath, at arbitrary coupling.

#include "otto/gaussian_state.hpp"
#include "otto/quadrature.hpp"

namespace otto {

enum class SpectralFamily { OhmicSharpCutoff };

struct BathSpec {
  double beta = kInfiniteBeta;
  SqueezeParams squeeze{};
  double gamma = 0.0;     // damping constant
  double cutoff = 1000.0;  // Lambda
  SpectralFamily kind = SpectralFamily::OhmicSharpCutoff;

  /// Checks gamma >= 0, beta > 0, cutoff > 10 max(omega, gamma); throws
  /// UnsupportedRegimeError for gamma >= omega.
  void validate(double omega) const;
};

enum class CouplingMode { WeakClosedForm, Quadrature };

struct SteadyCovariances {
  double sxx = 0.0;
  double spp = 0.0;
};

struct SteadyState {
  GaussianState state;
  double beta_s = kInfiniteBeta;  // weak-coupling effective temperature (diagnostic)
  double energy = 0.0;
};

/// cosh(2 eta) (2 gamma / m pi) int_0^Lambda k coth(beta k / 2) |G(k)|^2 dk and
/// cosh(2 eta) (2 m gamma / pi) int_0^Lambda k^3 coth(beta k / 2) |G(k)|^2 dk,
/// with |G(k)|^{-2} = |(gamma + i k)^2 + omega_r^2|^2 = (omega^2 - k^2)^2 + 4 gamma^2 k^2.
/// gamma == 0 returns the weak-coupling limit.
SteadyCovariances steady_covariances(const BathSpec& bath, double mass, double omega,
                                     const quad::Options& opt = {});

/// Closed forms cosh(2 eta) coth(beta omega / 2) / (2 m omega) and
/// cosh(2 eta) (m omega / 2) coth(beta omega / 2).
SteadyCovariances weak_coupling_covariances(double beta, double eta, double mass, double omega);

SteadyState steady_state(const BathSpec& bath, double mass, double omega,
                         CouplingMode mode = CouplingMode::Quadrature, const quad::Options& opt = {});

/// Heat absorbed by the oscillator (positive = into the oscillator).
double heat_in(double e_before, double e_after);

/// 1 / |(gamma + i k)^2 + omega_r^2|^2 with omega_r^2 = omega^2 - gamma^2.
inline double resonance_weight(double kappa, double omega, double gamma) {
  const double d = omega * omega - kappa * kappa;
  return 1.0 / (d * d + 4.0 * gamma * gamma * kappa * kappa);
}

}  // namespace otto
