#include "otto/isothermal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "otto/errors.hpp"

namespace otto {

void BathSpec::validate(double omega) const {
  if (!(omega > 0.0)) throw DomainError("oscillator frequency must be positive");
  if (!(beta > 0.0)) throw DomainError("bath beta must be positive");
  if (!(squeeze.eta >= 0.0)) throw DomainError("bath squeeze eta must be >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("damping gamma must be >= 0");
  if (gamma >= omega) {
    throw UnsupportedRegimeError("overdamped bath (gamma >= omega) is not supported");
  }
  if (!(cutoff > 10.0 * std::max(omega, gamma))) {
    throw DomainError("cutoff must exceed 10 max(omega, gamma), got " + std::to_string(cutoff));
  }
}

SteadyCovariances weak_coupling_covariances(double beta, double eta, double mass, double omega) {
  if (!(mass > 0.0) || !(omega > 0.0)) throw DomainError("mass and omega must be positive");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(eta >= 0.0)) throw DomainError("eta must be >= 0");
  const double f = std::cosh(2.0 * eta) * ThermalSpec{beta}.coth_half(omega);
  return {f / (2.0 * mass * omega), f * mass * omega / 2.0};
}

SteadyCovariances steady_covariances(const BathSpec& bath, double mass, double omega, const quad::Options& opt) {
  bath.validate(omega);
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  if (bath.gamma == 0.0) return weak_coupling_covariances(bath.beta, bath.squeeze.eta, mass, omega);

  const double gamma = bath.gamma;
  const double beta = bath.beta;
  const double omega_r = std::sqrt(omega * omega - gamma * gamma);
  auto integrand = [&](double k) {
    const double w = kappa_coth_half(k, beta) * resonance_weight(k, omega, gamma);
    return quad::Values<2>{w, w * k * k};
  };
  std::vector<double> pts = quad::peak_breakpoints(0.0, bath.cutoff, omega_r, gamma);
  if (std::isfinite(beta)) pts.push_back(1.0 / beta);
  pts = quad::normalize_breakpoints(std::move(pts), 0.0, bath.cutoff);
  const auto r = quad::integrate<2>(integrand, std::move(pts), opt);
  const double ch = std::cosh(2.0 * bath.squeeze.eta);
  return {ch * 2.0 * gamma / (mass * std::numbers::pi) * r.value[0],
          ch * 2.0 * mass * gamma / std::numbers::pi * r.value[1]};
}

SteadyState steady_state(const BathSpec& bath, double mass, double omega, CouplingMode mode,
                         const quad::Options& opt) {
  bath.validate(omega);
  const SteadyCovariances cov = mode == CouplingMode::WeakClosedForm
                                    ? weak_coupling_covariances(bath.beta, bath.squeeze.eta, mass, omega)
                                    : steady_covariances(bath, mass, omega, opt);
  GaussianState s{cov.sxx, cov.spp, 0.0, mass, omega};
  s.validate();
  return {s, effective_inverse_temperature(bath.squeeze.eta, bath.beta, omega), mechanical_energy(s)};
}

double heat_in(double e_before, double e_after) {
  if (!std::isfinite(e_before) || !std::isfinite(e_after)) throw DomainError("energies must be finite");
  return e_after - e_before;
}

}  // namespace otto
