#include "otto/gaussian_state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "otto/errors.hpp"

namespace otto {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(value));
  }
}

// Covariances in units where the oscillator ground state is I/2.
struct Quadratures {
  double xx, pp, xp;
};

Quadratures to_quadratures(const GaussianState& s) {
  const double mw = s.mass * s.omega;
  return {mw * s.sxx, s.spp / mw, s.sxp};
}

GaussianState from_quadratures(const Quadratures& q, double mass, double omega) {
  const double mw = mass * omega;
  return {q.xx / mw, q.pp * mw, q.xp, mass, omega};
}

}  // namespace

SqueezeParams SqueezeParams::make(double eta, double theta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("squeeze magnitude eta must be >= 0");
  if (!std::isfinite(theta)) throw DomainError("squeeze angle theta must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(theta, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  return {eta, wrapped};
}

ThermalSpec ThermalSpec::at_beta(double beta) {
  if (!(beta > 0.0)) throw DomainError("inverse temperature beta must be positive");
  return {beta};
}

bool ThermalSpec::is_zero_temperature() const { return std::isinf(beta); }

double ThermalSpec::coth_half(double omega) const {
  if (is_zero_temperature()) return 1.0;
  return coth(0.5 * beta * omega);
}

double GaussianState::symplectic_eigenvalue() const { return std::sqrt(determinant()); }

void GaussianState::validate() const {
  require_positive(mass, "mass");
  require_positive(omega, "omega");
  require_positive(sxx, "<x^2>");
  require_positive(spp, "<p^2>");
  if (determinant() < 0.25 - kHeisenbergTolerance) {
    throw DomainError("state violates the Heisenberg bound: det = " + std::to_string(determinant()));
  }
}

GaussianState squeezed_thermal_state(SqueezeParams sq, ThermalSpec th, double mass, double omega,
                                     double t) {
  require_positive(mass, "mass");
  require_positive(omega, "omega");
  const double c = th.coth_half(omega);
  const double ch = std::cosh(2.0 * sq.eta);
  const double sh = std::sinh(2.0 * sq.eta);
  const double phase = 2.0 * omega * t - sq.theta;
  return {
      (ch - std::cos(phase) * sh) * c / (2.0 * mass * omega),
      (ch + std::cos(phase) * sh) * c * mass * omega / 2.0,
      0.5 * sh * std::sin(phase) * c,
      mass,
      omega,
  };
}

GaussianState thermal_state(ThermalSpec th, double mass, double omega) {
  return squeezed_thermal_state({}, th, mass, omega);
}

double mechanical_energy(const GaussianState& s) {
  return s.spp / (2.0 * s.mass) + 0.5 * s.mass * s.omega * s.omega * s.sxx;
}

double effective_inverse_temperature(double eta, double beta, double omega) {
  if (!(eta >= 0.0)) throw DomainError("eta must be >= 0");
  require_positive(omega, "omega");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  // y - 1 with y = cosh(2 eta) coth(x), split to avoid cancellation near y = 1.
  const double x = 0.5 * beta * omega;
  const double sinh_eta = std::sinh(eta);
  const double excess = 2.0 * sinh_eta * sinh_eta * (std::isinf(x) ? 1.0 : coth(x)) + coth_minus_one(x);
  if (excess == 0.0) return kInfiniteBeta;
  return std::log1p(2.0 / excess) / omega;
}

ExtractedSqueeze extract_squeeze(const GaussianState& s) {
  s.validate();
  const Quadratures q = to_quadratures(s);
  const double nu = s.symplectic_eigenvalue();
  const double coth_half_vartheta = 2.0 * nu;
  // sinh(2 eta) from the anisotropic part directly; acosh of a value near 1
  // would amplify rounding.
  const double sinh2eta = std::hypot(q.pp - q.xx, 2.0 * q.xp) / coth_half_vartheta;
  const double eta = 0.5 * std::asinh(sinh2eta);
  double psi = 0.0;
  if (sinh2eta >= 1e-12) psi = std::atan2(-2.0 * q.xp, q.pp - q.xx);
  const double vartheta = coth_half_vartheta <= 1.0 ? kInfiniteBeta : 2.0 * arcoth(coth_half_vartheta);
  return {SqueezeParams::make(eta, psi), vartheta};
}

WignerCoeffs wigner_coeffs_from_state(const GaussianState& s) {
  s.validate();
  const double det = s.determinant();
  return {
      -s.sxx / (2.0 * det),
      -s.spp / (2.0 * det),
      s.sxp / det,
      1.0 / (2.0 * std::numbers::pi * std::sqrt(det)),
  };
}

GaussianState state_from_wigner_coeffs(const WignerCoeffs& w, double mass, double omega) {
  const double disc = 4.0 * w.a * w.b - w.c * w.c;
  if (!(w.a < 0.0) || !(w.b < 0.0) || !(disc > 0.0)) {
    throw DomainError("Wigner coefficients are not a normalizable Gaussian (need a, b < 0, 4ab - c^2 > 0)");
  }
  const double det = 1.0 / disc;
  GaussianState s{-2.0 * w.a * det, -2.0 * w.b * det, w.c * det, mass, omega};
  s.validate();
  return s;
}

GaussianState apply_squeeze(const GaussianState& s, SqueezeParams sq) {
  s.validate();
  // S = cosh(eta) I - sinh(eta) R(theta), R = [[cos, sin], [sin, -cos]].
  const double ce = std::cosh(sq.eta);
  const double se = std::sinh(sq.eta);
  const double m00 = ce - se * std::cos(sq.theta);
  const double m01 = -se * std::sin(sq.theta);
  const double m11 = ce + se * std::cos(sq.theta);
  const Quadratures q = to_quadratures(s);
  // S V S^T with S symmetric.
  const double t00 = m00 * q.xx + m01 * q.xp;
  const double t01 = m00 * q.xp + m01 * q.pp;
  const double t10 = m01 * q.xx + m11 * q.xp;
  const double t11 = m01 * q.xp + m11 * q.pp;
  const Quadratures out{t00 * m00 + t01 * m01, t10 * m01 + t11 * m11, t00 * m01 + t01 * m11};
  return from_quadratures(out, s.mass, s.omega);
}

}  // namespace otto
