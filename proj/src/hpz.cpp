#include "otto/hpz.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "otto/errors.hpp"
#include "otto/isothermal.hpp"
#include "otto/numeric.hpp"

namespace otto {

namespace {

using cplx = std::complex<double>;

void check_beta(double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
}

void check_frequencies(const SpectralDensity& sd, double omega, double omega_r) {
  if (!(omega > 0.0) || !(omega_r > 0.0)) throw DomainError("omega and omega_r must be positive");
  if (sd.gamma >= omega) throw UnsupportedRegimeError("overdamped bath (gamma >= omega) is not supported");
  const double w2 = omega_r * omega_r + sd.gamma * sd.gamma;
  if (std::abs(w2 - omega * omega) > 1e-9 * omega * omega) {
    throw DomainError("omega_r must equal sqrt(omega^2 - gamma^2)");
  }
}

void check_late_time(double t, const SpectralDensity& sd, const LateTimeOptions& opt) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
  if (!opt.allow_early_time && !(t * sd.gamma > 10.0)) {
    throw DomainError("late-time forms need t * gamma > 10, got " + std::to_string(t * sd.gamma));
  }
}

// (gamma + i k)^2 + omega_r^2
cplx resonance_denominator(double kappa, double gamma, double omega_r) {
  const cplx g(gamma, kappa);
  return g * g + omega_r * omega_r;
}

std::vector<double> resonance_breakpoints(const SpectralDensity& sd, double beta, double omega_r) {
  std::vector<double> pts = quad::peak_breakpoints(0.0, sd.cutoff, omega_r, std::max(sd.gamma, 1e-3 * omega_r));
  if (std::isfinite(beta)) pts.push_back(1.0 / beta);
  return quad::normalize_breakpoints(std::move(pts), 0.0, sd.cutoff);
}

// int S |G|^2 and int S k^2 |G|^2.
struct StationaryMoments {
  double g0 = 0.0;
  double g2 = 0.0;
};

StationaryMoments stationary_moments(const SpectralDensity& sd, double beta, double omega_r,
                                     const quad::Options& opt) {
  auto f = [&](double k) {
    const double w = sd.noise(k, beta) / std::norm(resonance_denominator(k, sd.gamma, omega_r));
    return quad::Values<2>{w, w * k * k};
  };
  const auto r = quad::integrate<2>(f, resonance_breakpoints(sd, beta, omega_r), opt);
  return {r.value[0], r.value[1]};
}

// Integrals of S against the rotating phasor P(k, t).
struct RotatingMoments {
  double re0 = 0.0;  // Re P
  double re1 = 0.0;  // k Re P
  double re2 = 0.0;  // k^2 Re P
  double im1 = 0.0;  // k Im P
  double im3 = 0.0;  // k^3 Im P
};

RotatingMoments rotating_moments(double t, const SpectralDensity& sd, double beta, double theta, double omega_r,
                                 const quad::Options& opt) {
  auto f = [&](double k) {
    const cplx d = resonance_denominator(k, sd.gamma, omega_r);
    const cplx p = std::polar(sd.noise(k, beta), 2.0 * (k * t - theta)) / (d * d);
    return quad::Values<5>{p.real(), k * p.real(), k * k * p.real(), k * p.imag(), k * k * k * p.imag()};
  };
  std::vector<double> pts = quad::uniform_breakpoints(0.0, sd.cutoff, std::numbers::pi / (4.0 * t));
  const std::vector<double> extra = resonance_breakpoints(sd, beta, omega_r);
  pts.insert(pts.end(), extra.begin(), extra.end());
  const auto r = quad::integrate<5>(f, quad::normalize_breakpoints(std::move(pts), 0.0, sd.cutoff), opt);
  return {r.value[0], r.value[1], r.value[2], r.value[3], r.value[4]};
}

}  // namespace

void SpectralDensity::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("spectral density gamma must be positive");
  if (!(mass > 0.0)) throw DomainError("spectral density mass must be positive");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw DomainError("spectral density cutoff must be positive");
}

double SpectralDensity::operator()(double kappa) const {
  if (kappa < 0.0 || kappa > cutoff) return 0.0;
  return 2.0 * mass * gamma * kappa / std::numbers::pi;
}

double SpectralDensity::noise(double kappa, double beta) const {
  if (kappa < 0.0 || kappa > cutoff) return 0.0;
  return 2.0 * mass * gamma / std::numbers::pi * kappa_coth_half(kappa, beta);
}

double AuxiliaryFunctions::b1(double t) const { return mass * (omega_r / std::tan(omega_r * t) - gamma); }

double AuxiliaryFunctions::b2(double t) const {
  return mass * omega_r * std::exp(gamma * t) / std::sin(omega_r * t);
}

double AuxiliaryFunctions::b3(double t) const {
  return -mass * omega_r * std::exp(-gamma * t) / std::sin(omega_r * t);
}

double AuxiliaryFunctions::u1(double s, double t) const {
  return -std::sin(omega_r * (s - t)) * std::exp(-gamma * s) / std::sin(omega_r * t);
}

double AuxiliaryFunctions::u2(double s, double t) const {
  return std::sin(omega_r * s) * std::exp(-gamma * (s - t)) / std::sin(omega_r * t);
}

double nu_kernel(double s, double s_prime, const SpectralDensity& sd, double beta, SqueezeParams sq,
                 const quad::Options& opt) {
  sd.validate();
  check_beta(beta);
  if (!(s >= 0.0) || !(s_prime >= 0.0)) throw DomainError("nu kernel times must be >= 0");
  const double ch = std::cosh(2.0 * sq.eta);
  const double sh = std::sinh(2.0 * sq.eta);
  auto f = [&](double k) {
    const double stationary = ch * std::cos(k * (s - s_prime));
    const double rotating = sh == 0.0 ? 0.0 : sh * std::cos(2.0 * sq.theta - k * (s + s_prime));
    return quad::Values<1>{sd.noise(k, beta) * (stationary - rotating)};
  };
  const double span = std::max(std::abs(s - s_prime), s + s_prime);
  std::vector<double> pts = span > 0.0 ? quad::uniform_breakpoints(0.0, sd.cutoff, std::numbers::pi / (4.0 * span))
                                       : std::vector<double>{0.0, sd.cutoff};
  if (std::isfinite(beta)) pts.push_back(1.0 / beta);
  return quad::integrate<1>(f, quad::normalize_breakpoints(std::move(pts), 0.0, sd.cutoff), opt).value[0];
}

LateTimeA a_ij_late(double t, const SpectralDensity& sd, double beta, SqueezeParams sq, double omega_r,
                    const LateTimeOptions& opt) {
  sd.validate();
  check_beta(beta);
  check_late_time(t, sd, opt);
  if (!(omega_r > 0.0)) throw DomainError("omega_r must be positive");
  const double ch = std::cosh(2.0 * sq.eta);
  const double sh = std::sinh(2.0 * sq.eta);
  const StationaryMoments st = stationary_moments(sd, beta, omega_r, opt.quadrature);
  const RotatingMoments rot = sh == 0.0 ? RotatingMoments{} : rotating_moments(t, sd, beta, sq.theta, omega_r,
                                                                                opt.quadrature);

  const double sin_rt = std::sin(omega_r * t);
  const double alpha = sd.gamma - omega_r / std::tan(omega_r * t);
  const double growth = omega_r * std::exp(sd.gamma * t) / sin_rt;
  const double core = ch * st.g0 - sh * rot.re0;

  LateTimeA a;
  a.a11 = 0.5 * growth * growth * core;
  a.a22 = 0.5 * (ch * (alpha * alpha * st.g0 + st.g2) - sh * (alpha * alpha * rot.re0 - rot.re2) +
                 2.0 * sh * alpha * rot.im1);
  a.a12 = growth * (alpha * core + sh * rot.im1);
  if (!std::isfinite(a.a11) || !std::isfinite(a.a22) || !std::isfinite(a.a12)) {
    throw NumericError("late-time a_ij overflowed", 0.0);
  }
  return a;
}

HpzCoefficients diffusion_coefficients_rwa(const SpectralDensity& sd, double beta, SqueezeParams sq, double omega,
                                           double omega_r, const quad::Options& opt) {
  sd.validate();
  check_beta(beta);
  check_frequencies(sd, omega, omega_r);
  const double ch = std::cosh(2.0 * sq.eta);
  const StationaryMoments st = stationary_moments(sd, beta, omega_r, opt);
  HpzCoefficients c;
  c.gamma_coef = sd.gamma;
  c.d_xx = 0.0;
  c.d_xp = ch * (omega * omega * st.g0 - st.g2) / (2.0 * sd.mass);
  c.d_pp = -2.0 * sd.gamma * ch * st.g2;
  return c;
}

HpzCoefficients diffusion_coefficients_full(double t, const SpectralDensity& sd, double beta, SqueezeParams sq,
                                            double omega, double omega_r, const LateTimeOptions& opt) {
  check_late_time(t, sd, opt);
  HpzCoefficients c = diffusion_coefficients_rwa(sd, beta, sq, omega, omega_r, opt.quadrature);
  const double sh = std::sinh(2.0 * sq.eta);
  if (sh == 0.0) return c;
  const RotatingMoments rot = rotating_moments(t, sd, beta, sq.theta, omega_r, opt.quadrature);
  const double w2 = omega * omega;
  c.d_xp -= sh * (3.0 * rot.re2 + w2 * rot.re0 - 2.0 * sd.gamma * rot.im1) / (2.0 * sd.mass);
  c.d_pp += sh * (rot.im3 - w2 * rot.im1 - 6.0 * sd.gamma * rot.re1);
  return c;
}

GaussianState steady_state_from_coefficients(const HpzCoefficients& c, double mass, double omega) {
  if (!(mass > 0.0) || !(omega > 0.0)) throw DomainError("mass and omega must be positive");
  if (!(c.gamma_coef > 0.0)) throw DomainError("steady state needs Gamma > 0");
  const double mw2 = mass * omega * omega;
  const double sxp = mass * c.d_xx;
  const double spp = (-c.d_pp - mw2 * sxp) / (2.0 * c.gamma_coef);
  const double sxx = (spp / mass - 2.0 * c.gamma_coef * sxp + 2.0 * c.d_xp) / mw2;
  if (!(sxx > 0.0) || !(spp > 0.0)) {
    throw DomainError("inconsistent HPZ coefficients: non-positive stationary variance");
  }
  GaussianState s{sxx, spp, sxp, mass, omega};
  s.validate();
  return s;
}

std::vector<HpzDumpRow> hpz_coefficient_grid(const std::vector<double>& betas, const std::vector<double>& etas,
                                             const std::vector<double>& gammas, double mass, double omega,
                                             double cutoff, double theta) {
  std::vector<HpzDumpRow> rows;
  rows.reserve(betas.size() * etas.size() * gammas.size());
  for (double beta : betas) {
    for (double eta : etas) {
      for (double gamma : gammas) {
        const SpectralDensity sd{gamma, mass, cutoff};
        if (gamma >= omega) throw UnsupportedRegimeError("overdamped bath (gamma >= omega) is not supported");
        const double omega_r = std::sqrt(omega * omega - gamma * gamma);
        HpzDumpRow row;
        row.beta = beta;
        row.eta = eta;
        row.gamma = gamma;
        row.coefficients = diffusion_coefficients_rwa(sd, beta, SqueezeParams::make(eta, theta), omega, omega_r);
        row.steady = steady_state_from_coefficients(row.coefficients, mass, omega);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace otto
