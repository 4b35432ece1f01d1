#pragma once

// Late-time coefficients of the quantum Brownian motion master equation
//
//   i d(rho)/dt = [H, rho] + i D_pp [x, [x, rho]] + i D_xx [p, [p, rho]]
//               + i (D_px + D_xp) [x, [p, rho]] + Gamma [x, {p, rho}]
//
// for an Ohmic, sharply cut off bath whose modes share one squeeze (eta,
// theta) and temperature. All kappa integrals run over [0, Lambda].
//
// Notation below: S(k) = I(k) coth(beta k / 2), G(k) = 1 / [(gamma + i k)^2 +
// omega_r^2] and the rotating phasor P(k, t) = exp(2i (k t - theta)) G(k)^2.

#include <vector>

#include "otto/gaussian_state.hpp"
#include "otto/quadrature.hpp"

namespace otto {

struct SpectralDensity {
  double gamma = 0.0;
  double mass = 1.0;
  double cutoff = 1000.0;

  void validate() const;
  /// I(k) = 2 m gamma k Theta(Lambda - k) / pi.
  double operator()(double kappa) const;
  /// S(k) = I(k) coth(beta k / 2), finite at k = 0.
  double noise(double kappa, double beta) const;
};

struct HpzCoefficients {
  double gamma_coef = 0.0;  // Gamma
  double d_xx = 0.0;
  double d_xp = 0.0;  // == D_px
  double d_pp = 0.0;
};

struct LateTimeA {
  double a11 = 0.0;
  double a22 = 0.0;
  double a12 = 0.0;
};

struct LateTimeOptions {
  /// Skip the t * gamma > 10 late-time precondition.
  bool allow_early_time = false;
  quad::Options quadrature{1e-10, 0.0, std::size_t{1} << 23};
};

/// Closed-form kernels entering the influence-functional coefficients.
struct AuxiliaryFunctions {
  double omega_r = 1.0;
  double gamma = 0.0;
  double mass = 1.0;

  double b1(double t) const;
  double b2(double t) const;
  double b3(double t) const;
  double b4(double t) const { return -b1(t); }
  double u1(double s, double t) const;
  double u2(double s, double t) const;
  double v1(double s, double t) const { return u2(t - s, t); }
  double v2(double s, double t) const { return u1(t - s, t); }
};

/// nu(s, s') = int dk S(k) {cosh 2eta cos[k (s - s')] - sinh 2eta cos[2 theta - k (s + s')]}.
double nu_kernel(double s, double s_prime, const SpectralDensity& sd, double beta, SqueezeParams sq,
                 const quad::Options& opt = {1e-10, 0.0, std::size_t{1} << 23});

/// Late-time (t >> 1/gamma) a11, a22, a12 with exponentially decaying terms
/// dropped. omega_r is the resonance frequency sqrt(omega^2 - gamma^2).
LateTimeA a_ij_late(double t, const SpectralDensity& sd, double beta, SqueezeParams sq, double omega_r,
                    const LateTimeOptions& opt = {});

/// Gamma, D_xx, D_xp, D_pp at time t including the sinh(2 eta) rotating terms.
HpzCoefficients diffusion_coefficients_full(double t, const SpectralDensity& sd, double beta, SqueezeParams sq,
                                            double omega, double omega_r, const LateTimeOptions& opt = {});

/// Rotating terms dropped:
///   D_xp = int S (omega^2 - k^2) cosh 2eta |G|^2 / 2m,
///   D_pp = -int S 2 gamma k^2 cosh 2eta |G|^2.
HpzCoefficients diffusion_coefficients_rwa(const SpectralDensity& sd, double beta, SqueezeParams sq,
                                           double omega, double omega_r,
                                           const quad::Options& opt = {1e-10, 0.0, std::size_t{1} << 23});

/// Stationary Gaussian solution of the moment equations
///   d<x^2>/dt = 2 sxp / m - 2 D_xx,
///   d<p^2>/dt = -2 m w^2 sxp - 4 Gamma <p^2> - 2 D_pp,
///   d sxp/dt  = <p^2>/m - m w^2 <x^2> - 2 Gamma sxp + (D_xp + D_px),
/// with D_px = D_xp. Throws DomainError if the resulting variances are not
/// a valid state.
GaussianState steady_state_from_coefficients(const HpzCoefficients& c, double mass, double omega);

struct HpzDumpRow {
  double beta = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  HpzCoefficients coefficients;
  GaussianState steady;  // from steady_state_from_coefficients
};

/// Rotating-term-dropped coefficients on the Cartesian (beta, eta, gamma) grid,
/// beta slowest.
std::vector<HpzDumpRow> hpz_coefficient_grid(const std::vector<double>& betas, const std::vector<double>& etas,
                                             const std::vector<double>& gammas, double mass, double omega,
                                             double cutoff, double theta);

}  // namespace otto
